#pragma once

// Brute-force ground truth for small instances: exact Pinwheel
// schedulability, the exact BGT optimum, and the tightness constructions
// showing the 12/7 factor cannot be improved with this reduction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bamboo/model.hpp"
#include "bamboo/rational.hpp"

namespace bamboo {

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

struct PinwheelResult {
  bool feasible = false;
  /// Job indices (positions in the input) for one cycle; repeating it
  /// forever from day 1 is a valid schedule. Empty when infeasible.
  std::vector<std::size_t> witness;
  std::uint64_t states_visited = 0;
};

/// Decides whether every job i can be served in each window of periods[i]
/// consecutive days. Explores deadline vectors depth-first, canonicalized
/// across jobs with equal periods. Throws Error(state_space_too_large) when
/// prod(p_i + 1) exceeds state_cap.
PinwheelResult pinwheel_feasible(std::span<const std::int64_t> periods, std::uint64_t state_cap = kDefaultStateCap);

/// Exact optimum of a small BGT instance: the least V in
/// {m * h_i} within [L, factor * L] for which the periods floor(V / h_i) are
/// pinwheel-feasible (L is the max-rule lower bound).
Rational bgt_opt(const BgtInstance& instance, std::uint64_t state_cap = kDefaultStateCap,
                 const Rational& factor = Rational(12, 7));

struct TightnessParams {
  Rational epsilon{1, 100};
  Rational big_m{100};
  Rational eta{1, 100};
  Rational gamma{1, 100};
};

struct TightnessReport {
  TightnessParams params;

  // Pseudo-instance (3 - eps, 4 - eps, M).
  std::vector<Rational> pseudo_periods;
  Rational pseudo_density = 0;
  Rational delta = 0;  // eps/(9 - 3 eps) + eps/(16 - 4 eps) + 1/M
  bool delta_matches_density = false;  // density == 7/12 + delta
  std::vector<std::int64_t> rounded;   // floors, i.e. the most generous rounding
  bool rounded_feasible = true;

  // Rates (4, 3, gamma) reduced with factor 12/7 - eta against L = H.
  Rational gamma_limit = 0;  // 49 eta / (12 - 7 eta)
  bool gamma_in_range = false;
  Rational factor = 0;
  std::vector<Rational> reduced_periods;
  Rational eps1 = 0;  // 3 - p_1
  Rational eps2 = 0;  // 4 - p_2
  bool closed_forms_match = false;
  std::vector<std::int64_t> reduced_rounded;
  bool reduced_rounded_feasible = true;
  bool shape_reproduced = false;  // eps1 > 0, eps2 > 0 and p_1 > 2, p_2 > 3
};

TightnessReport tightness_examples(const TightnessParams& params = {},
                                   std::uint64_t state_cap = kDefaultStateCap);

}  // namespace bamboo
