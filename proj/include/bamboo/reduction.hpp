#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bamboo/model.hpp"
#include "bamboo/rational.hpp"

namespace bamboo {

struct ReductionConfig {
  Rational factor = Rational(12, 7);
  LowerBoundMode lower_bound = LowerBoundMode::max_rule;

  static ReductionConfig twelve_sevenths() { return {}; }
  static ReductionConfig baseline() { return {Rational(2), LowerBoundMode::sum}; }
};

/// Pinwheel instance whose periods may be fractional. Job id = index.
class PseudoInstance {
 public:
  PseudoInstance() = default;
  /// Throws Error(invalid_instance) on a non-positive period.
  explicit PseudoInstance(std::vector<Rational> periods);

  const std::vector<Rational>& periods() const noexcept { return periods_; }
  const Rational& period(std::size_t job) const { return periods_.at(job); }
  std::size_t size() const noexcept { return periods_.size(); }
  Rational density() const;

  // Provenance when produced by bgt_to_pseudo.
  std::optional<Rational> factor;
  std::optional<Rational> lower_bound;

 private:
  std::vector<Rational> periods_;
};

/// p_i = factor * L / h_i with L = lower_bound(instance, config.lower_bound).
/// Throws Error(period_below_two) when some p_i < 2.
PseudoInstance bgt_to_pseudo(const BgtInstance& instance, const ReductionConfig& config = {});

/// Growth rates h_i = 1/p_i. The returned instance records through
/// input_index() which period each sorted job came from.
BgtInstance ps_to_bgt(std::span<const std::int64_t> periods);

}  // namespace bamboo
