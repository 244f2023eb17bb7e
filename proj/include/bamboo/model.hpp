#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bamboo/rational.hpp"

namespace bamboo {

/// A discrete Bamboo Garden Trimming instance. Rates are kept sorted
/// non-increasing so job 0 is always the fastest bamboo; input_index()
/// remembers where each job sat in the caller's original list.
class BgtInstance {
 public:
  /// Validates (n >= 1, every rate > 0) and sorts; ties keep input order.
  static BgtInstance from_rates(std::vector<Rational> rates);

  std::size_t size() const noexcept { return rates_.size(); }
  const std::vector<Rational>& rates() const noexcept { return rates_; }
  const Rational& rate(std::size_t job) const { return rates_.at(job); }
  const Rational& max_rate() const { return rates_.front(); }
  std::size_t input_index(std::size_t job) const { return input_index_.at(job); }
  /// Inverse of input_index().
  std::size_t job_of_input(std::size_t input) const { return job_of_input_.at(input); }

  /// H, the sum of all growth rates.
  Rational total_rate() const;

 private:
  BgtInstance() = default;

  std::vector<Rational> rates_;
  std::vector<std::size_t> input_index_;
  std::vector<std::size_t> job_of_input_;
};

enum class LowerBoundMode { sum, max_rule };

/// sum: H. max_rule: max{2 h_1, H} for n >= 2, and h_1 for a single bamboo.
Rational lower_bound(const BgtInstance& instance, LowerBoundMode mode);

/// Sum of reciprocals. Throws Error(invalid_instance) on a non-positive period.
Rational density(std::span<const Rational> periods);
Rational density(std::span<const std::int64_t> periods);

struct ScheduleEntry {
  std::size_t job = 0;
  std::int64_t offset = 1;
  std::int64_t cycle = 1;

  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

// Job `job` is served on days offset, offset + cycle, offset + 2 cycle, ...
// with day numbering starting at 1.
class PeriodicSchedule {
 public:
  PeriodicSchedule() = default;
  /// Requires offset >= 1, cycle >= 1 and distinct job ids; entries are
  /// stored sorted by job id.
  explicit PeriodicSchedule(std::vector<ScheduleEntry> entries);

  const std::vector<ScheduleEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const ScheduleEntry* find(std::size_t job) const;
  const ScheduleEntry& at(std::size_t job) const;

  bool serves(std::size_t job, std::int64_t day) const;

  /// offset <= cycle for every entry; the schedulers establish this.
  bool offsets_within_cycles() const;

  friend bool operator==(const PeriodicSchedule&, const PeriodicSchedule&) = default;

 private:
  std::vector<ScheduleEntry> entries_;
};

}  // namespace bamboo
