#include "bamboo/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bamboo/error.hpp"

namespace bamboo {

namespace {

enum : std::uint8_t { kUnseen = 0, kOpen = 1, kDone = 2 };

// Jobs sorted by period, with equal periods forming contiguous groups. A
// state lists each job's remaining deadline (1..p) in that order, ascending
// within a group, so permutations of identical jobs collapse to one state.
class DeadlineSpace {
 public:
  explicit DeadlineSpace(std::vector<std::int64_t> sorted_periods) : periods_(std::move(sorted_periods)) {
    stride_.resize(periods_.size());
    std::uint64_t stride = 1;
    for (std::size_t i = periods_.size(); i-- > 0;) {
      stride_[i] = stride;
      stride *= static_cast<std::uint64_t>(periods_[i]);
    }
    size_ = stride;
    for (std::size_t i = 0; i < periods_.size(); ++i) {
      if (i == 0 || periods_[i] != periods_[i - 1]) group_start_.push_back(i);
    }
    group_start_.push_back(periods_.size());
  }

  std::uint64_t size() const { return size_; }
  std::size_t groups() const { return group_start_.size() - 1; }
  std::size_t group_begin(std::size_t g) const { return group_start_[g]; }
  std::size_t group_end(std::size_t g) const { return group_start_[g + 1]; }

  std::uint64_t encode(const std::vector<std::int64_t>& d) const {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < d.size(); ++i) index += static_cast<std::uint64_t>(d[i] - 1) * stride_[i];
    return index;
  }

  void decode(std::uint64_t index, std::vector<std::int64_t>& d) const {
    d.resize(periods_.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = static_cast<std::int64_t>(index / stride_[i]) + 1;
      index %= stride_[i];
    }
  }

  std::vector<std::int64_t> initial() const { return periods_; }

  // Serves the most urgent job of group g (serving a less urgent twin is
  // never better). Returns false when some other job misses its deadline.
  bool advance(const std::vector<std::int64_t>& d, std::size_t g, std::vector<std::int64_t>& next) const {
    next.resize(d.size());
    const std::size_t lo = group_begin(g), hi = group_end(g);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i >= lo && i < hi) continue;
      if (d[i] == 1) return false;
      next[i] = d[i] - 1;
    }
    for (std::size_t i = lo; i + 1 < hi; ++i) {
      if (d[i + 1] == 1) return false;
      next[i] = d[i + 1] - 1;
    }
    next[hi - 1] = periods_[lo];
    return true;
  }

 private:
  std::vector<std::int64_t> periods_;
  std::vector<std::uint64_t> stride_;
  std::vector<std::size_t> group_start_;
  std::uint64_t size_ = 1;
};

// Replays a cycle of group moves on concrete jobs until the concrete
// deadline vector repeats, yielding a cycle over job identities.
std::vector<std::size_t> concretize(const DeadlineSpace& space, const std::vector<std::int64_t>& start,
                                    const std::vector<std::size_t>& moves,
                                    const std::vector<std::size_t>& sorted_jobs,
                                    const std::vector<std::int64_t>& sorted_periods) {
  std::vector<std::int64_t> deadline = start;
  std::map<std::vector<std::int64_t>, std::size_t> seen;
  std::vector<std::size_t> days;
  std::vector<std::size_t> pass_begin;
  for (std::size_t pass = 0;; ++pass) {
    if (auto it = seen.find(deadline); it != seen.end()) {
      const std::size_t from = pass_begin[it->second];
      std::vector<std::size_t> cycle;
      cycle.reserve(days.size() - from);
      for (std::size_t k = from; k < days.size(); ++k) cycle.push_back(sorted_jobs[days[k]]);
      return cycle;
    }
    if (pass > 100'000) throw std::logic_error("witness replay did not close");
    seen.emplace(deadline, pass);
    pass_begin.push_back(days.size());
    for (std::size_t g : moves) {
      std::size_t pick = space.group_begin(g);
      for (std::size_t i = pick + 1; i < space.group_end(g); ++i) {
        if (deadline[i] < deadline[pick]) pick = i;
      }
      for (std::size_t i = 0; i < deadline.size(); ++i) {
        if (i == pick) continue;
        if (--deadline[i] == 0) throw std::logic_error("witness replay missed a deadline");
      }
      deadline[pick] = sorted_periods[pick];
      days.push_back(pick);
    }
  }
}

}  // namespace

PinwheelResult pinwheel_feasible(std::span<const std::int64_t> periods, std::uint64_t state_cap) {
  PinwheelResult result;
  if (periods.empty()) {
    result.feasible = true;
    return result;
  }
  for (auto p : periods) {
    if (p < 1) throw Error(ErrorKind::invalid_instance, "pinwheel period must be >= 1, got " + std::to_string(p));
  }
  if (density(periods) > 1) return result;

  Integer states = 1;
  for (auto p : periods) states *= Integer(p + 1);
  if (states > state_cap) {
    throw Error(ErrorKind::state_space_too_large,
                "state space of " + states.str() + " exceeds the cap of " + std::to_string(state_cap));
  }

  std::vector<std::size_t> sorted_jobs(periods.size());
  std::iota(sorted_jobs.begin(), sorted_jobs.end(), std::size_t{0});
  std::stable_sort(sorted_jobs.begin(), sorted_jobs.end(),
                   [&](std::size_t a, std::size_t b) { return periods[a] < periods[b]; });
  std::vector<std::int64_t> sorted_periods;
  for (auto j : sorted_jobs) sorted_periods.push_back(periods[j]);

  const DeadlineSpace space(sorted_periods);
  std::vector<std::uint8_t> mark(space.size(), kUnseen);

  struct Frame {
    std::uint64_t state;
    std::size_t next_group;
  };
  std::vector<Frame> stack;
  const std::uint64_t root = space.encode(space.initial());
  mark[root] = kOpen;
  stack.push_back({root, 0});
  result.states_visited = 1;

  std::vector<std::int64_t> current, next;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_group == space.groups()) {
      mark[top.state] = kDone;
      stack.pop_back();
      continue;
    }
    const std::size_t g = top.next_group++;
    space.decode(top.state, current);
    if (!space.advance(current, g, next)) continue;
    const std::uint64_t succ = space.encode(next);
    if (mark[succ] == kDone) continue;
    if (mark[succ] == kUnseen) {
      mark[succ] = kOpen;
      ++result.states_visited;
      stack.push_back({succ, 0});
      continue;
    }

    // Back edge: the open path from `succ` to the top is a cycle.
    std::size_t from = stack.size() - 1;
    while (stack[from].state != succ) --from;
    std::vector<std::size_t> moves;
    for (std::size_t k = from; k < stack.size(); ++k) moves.push_back(stack[k].next_group - 1);
    std::vector<std::int64_t> start;
    space.decode(succ, start);
    result.feasible = true;
    result.witness = concretize(space, start, moves, sorted_jobs, sorted_periods);
    return result;
  }
  return result;
}

Rational bgt_opt(const BgtInstance& instance, std::uint64_t state_cap, const Rational& factor) {
  if (instance.size() == 1) return instance.max_rate();

  const Rational floor_value = lower_bound(instance, LowerBoundMode::max_rule);
  const Rational ceiling_value = factor * floor_value;

  // Between consecutive multiples of the rates every floor(V / h_i) is
  // constant, so the optimum sits on one of them.
  std::vector<Rational> candidates;
  for (const auto& h : instance.rates()) {
    for (Integer m = ceil(floor_value / h); m * h <= ceiling_value; ++m) candidates.push_back(m * h);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<std::int64_t> periods(instance.size());
  for (const auto& value : candidates) {
    for (std::size_t i = 0; i < instance.size(); ++i) periods[i] = to_int64(floor(value / instance.rate(i)));
    if (pinwheel_feasible(periods, state_cap).feasible) return value;
  }
  throw std::logic_error("no feasible height up to " + to_string(ceiling_value));
}

TightnessReport tightness_examples(const TightnessParams& params, std::uint64_t state_cap) {
  TightnessReport report;
  report.params = params;

  const Rational& eps = params.epsilon;
  const Rational& big_m = params.big_m;
  report.pseudo_periods = {3 - eps, 4 - eps, big_m};
  report.pseudo_density = density(report.pseudo_periods);
  report.delta = eps / (9 - 3 * eps) + eps / (16 - 4 * eps) + 1 / big_m;
  report.delta_matches_density = report.pseudo_density == Rational(7, 12) + report.delta;
  for (const auto& p : report.pseudo_periods) report.rounded.push_back(to_int64(floor(p)));
  report.rounded_feasible = pinwheel_feasible(report.rounded, state_cap).feasible;

  const Rational& eta = params.eta;
  const Rational& gamma = params.gamma;
  report.gamma_limit = 49 * eta / (12 - 7 * eta);
  report.gamma_in_range = gamma > 0 && gamma < report.gamma_limit;
  report.factor = Rational(12, 7) - eta;
  const Rational total = 7 + gamma;
  for (const Rational& h : {Rational(4), Rational(3), gamma}) report.reduced_periods.push_back(report.factor * total / h);
  report.eps1 = 3 - report.reduced_periods[0];
  report.eps2 = 4 - report.reduced_periods[1];

  const Rational eps1_closed = total * eta / 4 - 3 * gamma / 7;
  const Rational eps2_closed = total * eta / 3 - 4 * gamma / 7;
  const Rational m_closed = 12 / gamma + Rational(12, 7) - total * eta / gamma;
  report.closed_forms_match =
      eps1_closed == report.eps1 && eps2_closed == report.eps2 && m_closed == report.reduced_periods[2];

  report.shape_reproduced = report.eps1 > 0 && report.eps2 > 0 && report.reduced_periods[0] > 2 &&
                            report.reduced_periods[1] > 3;
  if (report.shape_reproduced) {
    for (const auto& p : report.reduced_periods) report.reduced_rounded.push_back(to_int64(floor(p)));
    report.reduced_rounded_feasible = pinwheel_feasible(report.reduced_rounded, state_cap).feasible;
  }
  return report;
}

}  // namespace bamboo
