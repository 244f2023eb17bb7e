#include "bamboo/verifier.hpp"

#include <algorithm>
#include <numeric>
#include <string>


#include "bamboo/error.hpp"

namespace bamboo {

namespace {

// Smallest day >= max(o_a, o_b) congruent to o_a mod t_a and o_b mod t_b,
// assuming the pair is compatible.
Integer first_shared_day(const ScheduleEntry& a, const ScheduleEntry& b) {
  const Integer ta = a.cycle, tb = b.cycle;
  const Integer g = boost::multiprecision::gcd(ta, tb);
  const Integer mod = tb / g;
  // Solve ta * k = (o_b - o_a) (mod t_b) for k modulo t_b / g.
  Integer rhs = (Integer(b.offset - a.offset) / g) % mod;
  if (rhs < 0) rhs += mod;
  Integer inverse = 0;
  if (mod > 1) {
    // Extended Euclid on (ta / g) mod `mod`.
    Integer old_r = (ta / g) % mod, r = mod, old_s = 1, s = 0;
    while (r != 0) {
      const Integer quotient = old_r / r;
      Integer tmp = old_r - quotient * r;
      old_r = r;
      r = tmp;
      tmp = old_s - quotient * s;
      old_s = s;
      s = tmp;
    }
    inverse = old_s % mod;
    if (inverse < 0) inverse += mod;
  }
  const Integer k = mod > 1 ? Integer((rhs * inverse) % mod) : Integer(0);
  const Integer period = ta * mod;
  Integer day = a.offset + ta * k;
  const Integer start = std::max(a.offset, b.offset);
  if (day < start) day += ((start - day + period - 1) / period) * period;
  return day;
}

void require_jobs(const PeriodicSchedule& schedule, std::size_t n) {
  if (schedule.size() != n) {
    throw Error(ErrorKind::job_mismatch,
                "schedule lists " + std::to_string(schedule.size()) + " jobs, instance has " + std::to_string(n));
  }
  for (std::size_t job = 0; job < n; ++job) {
    if (schedule.find(job) == nullptr) {
      throw Error(ErrorKind::job_mismatch, "schedule has no entry for job " + std::to_string(job));
    }
  }
}

}  // namespace

CollisionReport check_collisions(const PeriodicSchedule& schedule) {
  CollisionReport report;
  const auto& entries = schedule.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto g = std::gcd(entries[i].cycle, entries[j].cycle);
      if ((entries[i].offset - entries[j].offset) % g != 0) continue;
      report.collisions.push_back(
          {entries[i].job, entries[j].job, to_int64(first_shared_day(entries[i], entries[j]))});
    }
  }
  return report;
}

bool check_windows(const PeriodicSchedule& schedule, const PseudoInstance& pseudo) {
  require_jobs(schedule, pseudo.size());
  for (const auto& e : schedule.entries()) {
    const Integer window = floor(pseudo.period(e.job));
    if (e.offset > window || e.cycle > window) return false;
  }
  return true;
}

std::vector<Rational> max_heights(const PeriodicSchedule& schedule, const BgtInstance& instance) {
  require_jobs(schedule, instance.size());
  std::vector<Rational> heights;
  heights.reserve(instance.size());
  for (std::size_t job = 0; job < instance.size(); ++job) {
    const auto& e = schedule.at(job);
    heights.push_back(instance.rate(job) * std::max(e.offset, e.cycle));
  }
  return heights;
}

Rational max_height(const PeriodicSchedule& schedule, const BgtInstance& instance) {
  const auto heights = max_heights(schedule, instance);
  return *std::max_element(heights.begin(), heights.end());
}

SimReport simulate(const PeriodicSchedule& schedule, const BgtInstance& instance, std::int64_t horizon,
                   std::int64_t cap) {
  if (horizon < 1) throw Error(ErrorKind::invalid_instance, "simulation horizon must be >= 1");
  if (horizon > cap) {
    throw Error(ErrorKind::horizon_overflow,
                "horizon " + std::to_string(horizon) + " exceeds the cap of " + std::to_string(cap) + " days");
  }
  require_jobs(schedule, instance.size());
  const std::size_t n = instance.size();

  // claimed[d] = lowest job id scheduled on day d, or n when the day is free.
  std::vector<std::size_t> claimed(static_cast<std::size_t>(horizon) + 1, n);
  SimReport report;
  report.horizon = horizon;
  for (const auto& e : schedule.entries()) {
    for (std::int64_t day = e.offset; day <= horizon; day += e.cycle) {
      auto& slot = claimed[static_cast<std::size_t>(day)];
      if (slot == n) {
        slot = e.job;
      } else {
        report.double_bookings.push_back({day, std::min(slot, e.job), std::max(slot, e.job)});
        slot = std::min(slot, e.job);
      }
    }
  }
  std::sort(report.double_bookings.begin(), report.double_bookings.end(),
            [](const DoubleBooking& a, const DoubleBooking& b) {
              return a.day != b.day ? a.day < b.day : a.second < b.second;
            });

  std::vector<std::int64_t> last_cut(n, 0);
  std::vector<std::int64_t> worst_day(n, 0);
  report.longest_wait.assign(n, 0);
  auto observe = [&](std::size_t job, std::int64_t day) {
    const std::int64_t wait = day - last_cut[job];
    if (wait > report.longest_wait[job]) {
      report.longest_wait[job] = wait;
      worst_day[job] = day;
    }
  };
  for (std::int64_t day = 1; day <= horizon; ++day) {
    const std::size_t job = claimed[static_cast<std::size_t>(day)];
    if (job == n) continue;
    // Heights peak the moment before a cut; uncut bamboos keep growing.
    observe(job, day);
    last_cut[job] = day;
  }
  for (std::size_t job = 0; job < n; ++job) observe(job, horizon);

  for (std::size_t job = 0; job < n; ++job) {
    const Rational height = instance.rate(job) * report.longest_wait[job];
    if (job == 0 || height > report.max_height) {
      report.max_height = height;
      report.argmax_job = job;
      report.argmax_day = worst_day[job];
    }
  }

  std::int64_t needed = 0;
  for (const auto& e : schedule.entries()) needed = std::max(needed, e.offset + e.cycle);
  report.covers_steady_state = horizon >= needed;
  return report;
}

std::int64_t default_horizon(const PeriodicSchedule& schedule, std::int64_t cap) {
  Integer hyperperiod = 1;
  std::int64_t max_offset = 0;
  for (const auto& e : schedule.entries()) {
    hyperperiod = boost::multiprecision::lcm(hyperperiod, Integer(e.cycle));
    max_offset = std::max(max_offset, e.offset);
    if (hyperperiod > cap) return cap;
  }
  const Integer horizon = max_offset + 2 * hyperperiod;
  return horizon > cap ? cap : to_int64(horizon);
}

}  // namespace bamboo
