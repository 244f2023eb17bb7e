#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bamboo/chan_chin.hpp"
#include "bamboo/model.hpp"
#include "bamboo/rational.hpp"
#include "bamboo/reduction.hpp"

namespace bamboo {

struct ChainJob {
  std::size_t job = 0;
  std::int64_t period = 1;

  friend bool operator==(const ChainJob&, const ChainJob&) = default;
};

/// Integer periods in which every period divides every larger one and the
/// density is at most 1. Such instances are always schedulable.
class ChainInstance {
 public:
  ChainInstance() = default;
  /// Throws Error(not_a_chain) or Error(overdense).
  explicit ChainInstance(std::vector<ChainJob> jobs);
  static ChainInstance from_rounded(const std::vector<RoundedJob>& jobs);

  const std::vector<ChainJob>& jobs() const noexcept { return jobs_; }
  std::size_t size() const noexcept { return jobs_.size(); }

 private:
  std::vector<ChainJob> jobs_;  // sorted by (period, job)
};

/// First-fit decreasing into bins of density 1/p_1. Bin j (1-based) later
/// owns the days congruent to j modulo p_1.
std::vector<std::vector<ChainJob>> partition_bins(const ChainInstance& chain);

/// Recursive construction: t_i = p_i and offsets from
/// o = j + (o' - 1) * p_1 applied at every level.
PeriodicSchedule schedule_chain(const ChainInstance& chain);

/// Places B' on odd days and C' on even days (or either alone on all days).
/// Throws Error(certificate_violation) when y > 1.
PeriodicSchedule interleave(const NormalizedState& norm);

struct PipelineTrace {
  PseudoInstance pseudo;
  std::optional<std::vector<RoundedJob>> powers_of_two;
  std::optional<SpecializedState> state;
  std::optional<Decomposition> decomposition;
  std::optional<NormalizedState> normalized;
  std::optional<CertificateReport> certificate;
};

/// {2,3} route: split, decompose, normalize, certify, interleave.
PeriodicSchedule schedule_two_grid(const PseudoInstance& pseudo, PipelineTrace* trace = nullptr);

/// {2} route: every period rounded to a power of two, one chain.
PeriodicSchedule schedule_power_of_two(const PseudoInstance& pseudo, PipelineTrace* trace = nullptr);

struct Solution {
  PeriodicSchedule schedule;
  ReductionConfig config;
  Rational lower_bound = 0;
  Rational bound = 0;         // factor * L (h_1 for a single bamboo)
  Rational height_bound = 0;  // max_i h_i * max(o_i, t_i)
  std::optional<PipelineTrace> trace;
};

/// End-to-end solver. Factor 2 uses the power-of-two route, any other
/// factor the {2,3} route. Propagates Error(period_below_two).
Solution solve(const BgtInstance& instance, const ReductionConfig& config = {});

}  // namespace bamboo
