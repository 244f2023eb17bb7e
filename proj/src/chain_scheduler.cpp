#include "bamboo/chain_scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bamboo/error.hpp"

namespace bamboo {

namespace {

bool by_period(const ChainJob& a, const ChainJob& b) {
  return a.period != b.period ? a.period < b.period : a.job < b.job;
}

// Jobs must already be sorted by period and satisfy the chain invariants.
std::vector<std::vector<ChainJob>> first_fit_decreasing(const std::vector<ChainJob>& jobs) {
  std::vector<std::vector<ChainJob>> bins;
  if (jobs.empty()) return bins;

  // Work in units of 1/p_max so all sizes are integers dividing the capacity.
  const std::int64_t smallest = jobs.front().period;
  const std::int64_t largest = jobs.back().period;
  const std::int64_t capacity = largest / smallest;

  std::vector<std::int64_t> residual;
  std::size_t first_open = 0;
  for (const auto& job : jobs) {
    const std::int64_t size = largest / job.period;
    while (first_open < residual.size() && residual[first_open] == 0) ++first_open;
    std::size_t target = first_open;
    while (target < residual.size() && residual[target] < size) ++target;
    if (target == residual.size()) {
      bins.emplace_back();
      residual.push_back(capacity);
    }
    bins[target].push_back(job);
    residual[target] -= size;
  }
  return bins;
}

std::vector<ScheduleEntry> schedule_sorted_chain(const std::vector<ChainJob>& jobs) {
  if (jobs.empty()) return {};
  if (jobs.size() == 1) return {{jobs.front().job, 1, jobs.front().period}};

  const std::int64_t stride = jobs.front().period;
  const auto bins = first_fit_decreasing(jobs);
  if (bins.size() > static_cast<std::size_t>(stride)) {
    throw std::logic_error("chain partition produced more bins than the shortest period");
  }

  std::vector<ScheduleEntry> entries;
  entries.reserve(jobs.size());
  for (std::size_t j = 0; j < bins.size(); ++j) {
    std::vector<ChainJob> scaled = bins[j];
    for (auto& job : scaled) job.period /= stride;
    const auto residue = static_cast<std::int64_t>(j) + 1;
    for (const auto& sub : schedule_sorted_chain(scaled)) {
      entries.push_back({sub.job, residue + (sub.offset - 1) * stride, sub.cycle * stride});
    }
  }
  return entries;
}

// Maps each entry onto odd (parity 1) or even (parity 0) days of a timeline
// running twice as fast.
void stretch_onto(const PeriodicSchedule& half, int parity, std::vector<ScheduleEntry>& out) {
  for (const auto& e : half.entries()) {
    const std::int64_t offset = parity == 1 ? 2 * e.offset - 1 : 2 * e.offset;
    out.push_back({e.job, offset, 2 * e.cycle});
  }
}

ChainInstance halved(const std::vector<RoundedJob>& jobs) {
  std::vector<ChainJob> half;
  half.reserve(jobs.size());
  for (const auto& j : jobs) {
    if (j.period % 2 != 0) throw std::logic_error("cannot halve odd period " + std::to_string(j.period));
    half.push_back({j.job, j.period / 2});
  }
  return ChainInstance(std::move(half));
}

void check_offsets(const PeriodicSchedule& schedule) {
  if (!schedule.offsets_within_cycles()) throw std::logic_error("constructed schedule has an offset beyond its cycle");
}

}  // namespace

ChainInstance::ChainInstance(std::vector<ChainJob> jobs) : jobs_(std::move(jobs)) {
  std::sort(jobs_.begin(), jobs_.end(), by_period);
  Rational load = 0;
  for (std::size_t i = 0; i < jobs_.size(); ++i) {
    const auto p = jobs_[i].period;
    if (p < 1) throw Error(ErrorKind::not_a_chain, "chain period must be >= 1, got " + std::to_string(p));
    if (i > 0 && p % jobs_[i - 1].period != 0) {
      throw Error(ErrorKind::not_a_chain, std::to_string(jobs_[i - 1].period) + " does not divide " + std::to_string(p));
    }
    load += Rational(1, p);
  }
  if (load > 1) throw Error(ErrorKind::overdense, "chain density " + to_string(load) + " exceeds 1");
}

ChainInstance ChainInstance::from_rounded(const std::vector<RoundedJob>& jobs) {
  std::vector<ChainJob> chain;
  chain.reserve(jobs.size());
  for (const auto& j : jobs) chain.push_back({j.job, j.period});
  return ChainInstance(std::move(chain));
}

std::vector<std::vector<ChainJob>> partition_bins(const ChainInstance& chain) {
  return first_fit_decreasing(chain.jobs());
}

PeriodicSchedule schedule_chain(const ChainInstance& chain) {
  PeriodicSchedule schedule(schedule_sorted_chain(chain.jobs()));
  check_offsets(schedule);
  return schedule;
}

PeriodicSchedule interleave(const NormalizedState& norm) {
  if (norm.y > 1) {
    throw Error(ErrorKind::certificate_violation, "cannot interleave: certificate y = " + to_string(norm.y) + " > 1");
  }
  if (norm.c.empty()) return schedule_chain(ChainInstance::from_rounded(norm.b));
  if (norm.b.empty()) return schedule_chain(ChainInstance::from_rounded(norm.c));

  if (density(norm.b) > Rational(1, 2) || density(norm.c) > Rational(1, 3)) {
    throw Error(ErrorKind::certificate_violation, "mixed grids need rho(B') <= 1/2 and rho(C') <= 1/3");
  }

  std::vector<ScheduleEntry> entries;
  entries.reserve(norm.b.size() + norm.c.size());
  stretch_onto(schedule_chain(halved(norm.b)), 1, entries);

  const bool has_three = std::any_of(norm.c.begin(), norm.c.end(), [](const RoundedJob& j) { return j.period == 3; });
  if (has_three) {
    // rho(C') <= 1/3 leaves room for nothing else.
    if (norm.c.size() != 1) throw std::logic_error("period-3 job shares C' with other jobs");
    entries.push_back({norm.c.front().job, 2, 2});
  } else {
    stretch_onto(schedule_chain(halved(norm.c)), 0, entries);
  }

  PeriodicSchedule schedule(std::move(entries));
  check_offsets(schedule);
  return schedule;
}

PeriodicSchedule schedule_two_grid(const PseudoInstance& pseudo, PipelineTrace* trace) {
  const SpecializedState state = split_23(pseudo);
  const Decomposition dec = decompose(state);
  const NormalizedState norm = normalize(dec, state);
  const CertificateReport cert = certificate(norm, pseudo.density());
  if (trace != nullptr) {
    trace->pseudo = pseudo;
    trace->state = state;
    trace->decomposition = dec;
    trace->normalized = norm;
    trace->certificate = cert;
  }
  return interleave(norm);
}

PeriodicSchedule schedule_power_of_two(const PseudoInstance& pseudo, PipelineTrace* trace) {
  auto rounded = specialize_powers_of_two(pseudo);
  if (trace != nullptr) {
    trace->pseudo = pseudo;
    trace->powers_of_two = rounded;
  }
  return schedule_chain(ChainInstance::from_rounded(rounded));
}

Solution solve(const BgtInstance& instance, const ReductionConfig& config) {
  Solution solution;
  solution.config = config;
  solution.lower_bound = lower_bound(instance, config.lower_bound);

  if (instance.size() == 1) {
    // Cutting the only bamboo every day is optimal.
    solution.schedule = PeriodicSchedule({{0, 1, 1}});
    solution.bound = instance.max_rate();
    solution.height_bound = instance.max_rate();
    return solution;
  }

  const PseudoInstance pseudo = bgt_to_pseudo(instance, config);
  PipelineTrace trace;
  solution.schedule = config.factor == 2 ? schedule_power_of_two(pseudo, &trace) : schedule_two_grid(pseudo, &trace);
  solution.trace = std::move(trace);
  solution.bound = config.factor * solution.lower_bound;

  Rational worst = 0;
  for (const auto& e : solution.schedule.entries()) {
    const Rational height = instance.rate(e.job) * std::max(e.offset, e.cycle);
    if (height > worst) worst = height;
  }
  if (solution.schedule.size() != instance.size()) throw std::logic_error("schedule lost a job");
  if (worst > solution.bound) throw std::logic_error("schedule exceeds the guaranteed height");
  solution.height_bound = worst;
  return solution;
}

}  // namespace bamboo
