#include "bamboo/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bamboo/error.hpp"

namespace bamboo {

BgtInstance BgtInstance::from_rates(std::vector<Rational> rates) {
  if (rates.empty()) {
    throw Error(ErrorKind::invalid_instance, "instance needs at least one bamboo");
  }
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] <= 0) {
      throw Error(ErrorKind::invalid_instance,
                  "growth rate #" + std::to_string(i) + " is not positive: " + to_string(rates[i]));
    }
  }

  std::vector<std::size_t> order(rates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rates[a] > rates[b]; });

  BgtInstance instance;
  instance.rates_.reserve(rates.size());
  instance.input_index_ = order;
  instance.job_of_input_.resize(rates.size());
  for (std::size_t job = 0; job < order.size(); ++job) {
    instance.rates_.push_back(rates[order[job]]);
    instance.job_of_input_[order[job]] = job;
  }
  return instance;
}

Rational BgtInstance::total_rate() const {
  Rational sum = 0;
  for (const auto& h : rates_) sum += h;
  return sum;
}

Rational lower_bound(const BgtInstance& instance, LowerBoundMode mode) {
  const Rational total = instance.total_rate();
  if (mode == LowerBoundMode::sum) return total;
  if (instance.size() == 1) return instance.max_rate();
  const Rational twice_max = 2 * instance.max_rate();
  return twice_max > total ? twice_max : total;
}

Rational density(std::span<const Rational> periods) {
  Rational sum = 0;
  for (const auto& p : periods) {
    if (p <= 0) throw Error(ErrorKind::invalid_instance, "period must be positive, got " + to_string(p));
    sum += 1 / p;
  }
  return sum;
}

Rational density(std::span<const std::int64_t> periods) {
  Rational sum = 0;
  for (auto p : periods) {
    if (p <= 0) throw Error(ErrorKind::invalid_instance, "period must be positive, got " + std::to_string(p));
    sum += Rational(1, p);
  }
  return sum;
}

PeriodicSchedule::PeriodicSchedule(std::vector<ScheduleEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const ScheduleEntry& a, const ScheduleEntry& b) { return a.job < b.job; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.offset < 1 || e.cycle < 1) {
      throw Error(ErrorKind::invalid_instance,
                  "job " + std::to_string(e.job) + " needs offset >= 1 and cycle >= 1");
    }
    if (i > 0 && entries_[i - 1].job == e.job) {
      throw Error(ErrorKind::job_mismatch, "job " + std::to_string(e.job) + " listed twice");
    }
  }
}

const ScheduleEntry* PeriodicSchedule::find(std::size_t job) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), job,
                             [](const ScheduleEntry& e, std::size_t j) { return e.job < j; });
  if (it == entries_.end() || it->job != job) return nullptr;
  return &*it;
}

const ScheduleEntry& PeriodicSchedule::at(std::size_t job) const {
  if (const auto* e = find(job)) return *e;
  throw Error(ErrorKind::job_mismatch, "schedule has no entry for job " + std::to_string(job));
}

bool PeriodicSchedule::serves(std::size_t job, std::int64_t day) const {
  const auto* e = find(job);
  return e != nullptr && day >= e->offset && (day - e->offset) % e->cycle == 0;
}

bool PeriodicSchedule::offsets_within_cycles() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const ScheduleEntry& e) { return e.offset <= e.cycle; });
}

}  // namespace bamboo
