#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bamboo/model.hpp"
#include "bamboo/rational.hpp"
#include "bamboo/reduction.hpp"

namespace bamboo {

inline constexpr std::int64_t kDefaultHorizonCap = 1'000'000;

struct Collision {
  std::size_t first = 0;
  std::size_t second = 0;
  std::int64_t day = 0;  // earliest day both jobs are served

  friend bool operator==(const Collision&, const Collision&) = default;
};

struct CollisionReport {
  std::vector<Collision> collisions;  // ordered by (first, second)
  bool ok() const noexcept { return collisions.empty(); }
};

/// Jobs i and j share a day iff o_i = o_j (mod gcd(t_i, t_j)).
CollisionReport check_collisions(const PeriodicSchedule& schedule);

/// True iff o_i <= floor(p_i) and t_i <= floor(p_i) for every job. The
/// schedule must cover exactly the pseudo-instance's job ids.
bool check_windows(const PeriodicSchedule& schedule, const PseudoInstance& pseudo);

/// h_i * max(o_i, t_i) per job id.
std::vector<Rational> max_heights(const PeriodicSchedule& schedule, const BgtInstance& instance);
Rational max_height(const PeriodicSchedule& schedule, const BgtInstance& instance);

struct DoubleBooking {
  std::int64_t day = 0;
  std::size_t first = 0;   // the job actually cut
  std::size_t second = 0;  // the job left standing

  friend bool operator==(const DoubleBooking&, const DoubleBooking&) = default;
};

struct SimReport {
  std::int64_t horizon = 0;
  Rational max_height = 0;
  std::int64_t argmax_day = 0;
  std::size_t argmax_job = 0;
  std::vector<std::int64_t> longest_wait;  // per job id, in days
  std::vector<DoubleBooking> double_bookings;
  bool covers_steady_state = false;  // horizon >= max_i (o_i + t_i)
};

/// Day-by-day replay: everything grows, then the scheduled bamboo (the
/// lowest job id if several claim the day) is cut at the end of the day.
/// Throws Error(horizon_overflow) when horizon exceeds `cap`.
SimReport simulate(const PeriodicSchedule& schedule, const BgtInstance& instance, std::int64_t horizon,
                   std::int64_t cap = kDefaultHorizonCap);

/// min(cap, max_i o_i + 2 * lcm_i t_i).
std::int64_t default_horizon(const PeriodicSchedule& schedule, std::int64_t cap = kDefaultHorizonCap);

}  // namespace bamboo
