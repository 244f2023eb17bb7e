// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Time limits are wall-clock seconds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bamboo/chain_scheduler.hpp"
#include "bamboo/chan_chin.hpp"
#include "bamboo/cli.hpp"
#include "bamboo/error.hpp"
#include "bamboo/oracle.hpp"
#include "bamboo/reduction.hpp"
#include "bamboo/verifier.hpp"
#include "test_support.hpp"

using namespace bamboo;

namespace {

constexpr double kLimitGuarantee = 30.0;
constexpr double kLimitPinwheelCheck = 1.0;
constexpr double kLimitChains = 60.0;
constexpr double kLimitTightness = 5.0;
constexpr double kLimitOpt = 600.0;
constexpr int kCorpusSize = 500;
constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr std::uint64_t kPseudoSeed = 7121;

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit = 0;  // 0: untimed
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<BgtInstance> guarantee_corpus() {
  std::mt19937_64 rng(kCorpusSeed);
  std::uniform_int_distribution<int> size(2, 12);
  std::uniform_int_distribution<int> rate(1, 100);
  std::vector<BgtInstance> corpus;
  for (int k = 0; k < kCorpusSize; ++k) {
    std::vector<Rational> rates(static_cast<std::size_t>(size(rng)));
    for (auto& h : rates) h = rate(rng);
    corpus.push_back(BgtInstance::from_rates(rates));
  }
  return corpus;
}

std::string describe(const BgtInstance& instance) {
  std::string out = "(";
  for (std::size_t i = 0; i < instance.size(); ++i) out += (i ? "," : "") + to_string(instance.rate(i));
  return out + ")";
}

// Solutions shared between criteria 1-3.
struct Solved {
  BgtInstance instance;
  Solution solution;
};
std::vector<Solved> solved_default;
std::vector<Solved> solved_baseline;

Outcome guarantee(const ReductionConfig& config, LowerBoundMode reference, const Rational& factor,
                  std::vector<Solved>& keep) {
  Outcome outcome{true, "", kLimitGuarantee};
  int failures = 0;
  Rational worst = 0;
  for (const auto& instance : guarantee_corpus()) {
    try {
      auto solution = solve(instance, config);
      const Rational analytic = max_height(solution.schedule, instance);
      const Rational bound = factor * lower_bound(instance, reference);
      if (analytic > bound) {
        if (++failures == 1) outcome.detail = "first failure " + describe(instance) + "; ";
      }
      worst = std::max(worst, Rational(analytic / lower_bound(instance, reference)));
      keep.push_back({instance, std::move(solution)});
    } catch (const std::exception& e) {
      if (++failures == 1) outcome.detail = "first failure " + describe(instance) + ": " + e.what() + "; ";
    }
  }
  outcome.pass = failures == 0;
  outcome.detail += std::to_string(kCorpusSize) + " instances, " + std::to_string(failures) +
                    " failures, worst height/L = " + to_decimal(worst, 4);
  return outcome;
}

Outcome criterion1() {
  return guarantee(ReductionConfig::twelve_sevenths(), LowerBoundMode::max_rule, Rational(12, 7), solved_default);
}

Outcome criterion2() {
  return guarantee(ReductionConfig::baseline(), LowerBoundMode::sum, Rational(2), solved_baseline);
}

Outcome criterion3() {
  Outcome outcome;
  int checked = 0, failures = 0;
  std::int64_t longest = 0;
  for (const auto* batch : {&solved_default, &solved_baseline}) {
    for (const auto& [instance, solution] : *batch) {
      ++checked;
      const auto& schedule = solution.schedule;
      const auto pseudo = bgt_to_pseudo(instance, solution.config);
      const auto horizon = default_horizon(schedule);
      longest = std::max(longest, horizon);
      const auto sim = simulate(schedule, instance, horizon);
      const bool ok = check_collisions(schedule).ok() && check_windows(schedule, pseudo) &&
                      sim.double_bookings.empty() && sim.covers_steady_state &&
                      sim.max_height == max_height(schedule, instance);
      if (!ok && ++failures == 1) outcome.detail = "first failure " + describe(instance) + "; ";
    }
  }
  outcome.pass = failures == 0 && checked == 2 * kCorpusSize;
  outcome.detail += std::to_string(checked) + " schedules, " + std::to_string(failures) +
                    " failures, longest horizon " + std::to_string(longest) + " days";
  return outcome;
}

bool in_set(std::int64_t r, std::int64_t s, std::initializer_list<std::pair<std::int64_t, std::int64_t>> set) {
  for (const auto& [a, b] : set) {
    if (a == r && b == s) return true;
  }
  return false;
}

Outcome criterion4() {
  Outcome outcome;
  std::mt19937_64 rng(kPseudoSeed);
  int failures = 0, violations = 0;
  int per_case[5] = {0, 0, 0, 0, 0};
  for (int k = 0; k < kCorpusSize; ++k) {
    const PseudoInstance pseudo(testing::random_pseudo(rng, Rational(7, 12)));
    if (pseudo.density() != Rational(7, 12)) {
      ++failures;
      continue;
    }
    const auto state = split_23(pseudo);
    const auto norm = normalize(decompose(state), state);
    try {
      certificate(norm, pseudo.density());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::certificate_violation) ++violations;
      ++failures;
      continue;
    }
    ++per_case[static_cast<int>(norm.rule)];

    // Recompute everything from the rounded sets alone.
    const auto r = to_int64(floor(2 * density(state.b)));
    const auto s = to_int64(floor(3 * density(state.c)));
    const Rational y = Rational(ceil(2 * density(norm.b)), 2) + Rational(ceil(3 * density(norm.c)), 3);
    bool ok = y <= 1 && in_set(r, s, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}});
    switch (norm.rule) {
      case NormalizationCase::a: ok = ok && in_set(r, s, {{0, 0}, {0, 1}, {0, 2}, {1, 0}}); break;
      case NormalizationCase::b: ok = ok && in_set(r, s, {{0, 0}, {0, 1}, {1, 0}}); break;
      case NormalizationCase::c: ok = ok && in_set(r, s, {{0, 0}, {0, 1}}); break;
      case NormalizationCase::d: ok = ok && in_set(r, s, {{0, 0}}); break;
      case NormalizationCase::none: break;
    }
    if (!ok) ++failures;
  }
  outcome.pass = failures == 0 && violations == 0;
  outcome.detail = std::to_string(kCorpusSize) + " pseudo-instances, " + std::to_string(failures) + " failures, " +
                   std::to_string(violations) + " CertificateViolation; cases none/a/b/c/d = " +
                   std::to_string(per_case[0]) + "/" + std::to_string(per_case[1]) + "/" +
                   std::to_string(per_case[2]) + "/" + std::to_string(per_case[3]) + "/" +
                   std::to_string(per_case[4]);
  return outcome;
}

Outcome criterion5() {
  struct Witness {
    std::vector<Rational> periods;
    NormalizationCase expected;
  };
  const std::vector<Witness> witnesses{
      {{8, 6}, NormalizationCase::a},
      {{Rational(24, 7), Rational(32, 7), Rational(960, 7)}, NormalizationCase::b},
      {{4, 8, 6}, NormalizationCase::c},
      {{4, 8, 16, 32, 12}, NormalizationCase::d},
  };
  Outcome outcome;
  for (const auto& w : witnesses) {
    const PseudoInstance pseudo(w.periods);
    PipelineTrace trace;
    bool ok = false;
    std::string tag = "?";
    try {
      const auto schedule = schedule_two_grid(pseudo, &trace);
      tag = std::string(to_string(trace.normalized->rule));
      std::vector<std::int64_t> windows;
      for (const auto& p : pseudo.periods()) windows.push_back(to_int64(floor(p)));
      std::int64_t hyper = 1;
      for (const auto& e : schedule.entries()) hyper = std::lcm(hyper, e.cycle);
      ok = trace.normalized->rule == w.expected && check_collisions(schedule).ok() &&
           check_windows(schedule, pseudo) && testing::brute_force_feasible(schedule, windows, 3 * hyper);
    } catch (const std::exception&) {
      ok = false;
    }
    outcome.pass = outcome.pass && ok;
    outcome.detail += std::string(outcome.detail.empty() ? "" : ", ") + "case " + std::string(to_string(w.expected)) + " -> " +
                      tag + (ok ? " scheduled" : " FAILED");
  }
  return outcome;
}

Outcome criterion6() {
  Outcome outcome;
  double slowest = 0;
  auto check = [&](std::vector<std::int64_t> periods, bool expected) {
    const auto start = std::chrono::steady_clock::now();
    const auto result = pinwheel_feasible(periods);
    const double took = seconds_since(start);
    slowest = std::max(slowest, took);
    bool ok = result.feasible == expected && took < kLimitPinwheelCheck;
    if (result.feasible) ok = ok && testing::cyclic_witness_ok(periods, result.witness);
    outcome.pass = outcome.pass && ok;
  };
  for (std::int64_t m = 4; m <= 20; ++m) check({2, 3, m}, false);
  check({2, 4, 4}, true);
  char buf[96];
  std::snprintf(buf, sizeof buf, "{2,3,M} infeasible for M=4..20, {2,4,4} feasible; slowest check %.4f s",
                slowest);
  outcome.detail = buf;
  return outcome;
}

Outcome criterion7() {
  Outcome outcome{true, "", kLimitChains};
  int count = 0, failures = 0;
  std::vector<std::int64_t> periods;
  std::function<void(std::int64_t)> grow = [&](std::int64_t from) {
    if (!periods.empty()) {
      if (density(periods) > 1) return;
      ++count;
      std::vector<ChainJob> jobs;
      for (std::size_t i = 0; i < periods.size(); ++i) jobs.push_back({i, periods[i]});
      const auto schedule = schedule_chain(ChainInstance(jobs));
      std::int64_t hyper = 1;
      for (auto p : periods) hyper = std::lcm(hyper, p);
      bool ok = check_collisions(schedule).ok() && schedule.offsets_within_cycles() &&
                testing::brute_force_feasible(schedule, periods, 3 * hyper);
      for (const auto& e : schedule.entries()) ok = ok && e.cycle <= periods[e.job];
      ok = ok && pinwheel_feasible(periods).feasible;
      if (!ok) ++failures;
    }
    if (periods.size() == 4) return;
    for (std::int64_t p = from; p <= 12; ++p) {
      if (!periods.empty() && p % periods.back() != 0) continue;
      periods.push_back(p);
      grow(p);
      periods.pop_back();
    }
  };
  grow(1);
  outcome.pass = failures == 0 && count > 0;
  outcome.detail = std::to_string(count) + " chain instances, " + std::to_string(failures) + " disagreements";
  return outcome;
}

Outcome criterion8() {
  Outcome outcome{true, "", kLimitTightness};
  std::istringstream in;
  std::ostringstream out, err;
  const int code = cli::run({"oracle", "tightness", "--epsilon", "1/100", "--M", "100", "--eta", "1/100", "--gamma",
                             "1/100"},
                            in, out, err);
  if (code != 0) {
    outcome.pass = false;
    outcome.detail = "oracle tightness exited " + std::to_string(code);
    return outcome;
  }
  const auto doc = nlohmann::json::parse(out.str());
  const auto& ex1 = doc["rounding_gap"];
  const auto& ex2 = doc["factor_gap"];
  const Rational delta = parse_rational(ex1["delta"].get<std::string>());
  const Rational eps1 = parse_rational(ex2["eps1"].get<std::string>());
  const Rational eps2 = parse_rational(ex2["eps2"].get<std::string>());

  // Independent recomputation from the definitions.
  const Rational eps(1, 100), big_m(100), factor = Rational(12, 7) - Rational(1, 100), total = Rational(701, 100);
  const Rational expected_delta = 1 / (3 - eps) + 1 / (4 - eps) + 1 / big_m - Rational(7, 12);
  const Rational expected_eps1 = 3 - factor * total / 4;
  const Rational expected_eps2 = 4 - factor * total / 3;
  const bool rounded_ok = ex1["rounded"] == nlohmann::json::array({2, 3, 100}) && ex1["rounded_feasible"] == false &&
                          !pinwheel_feasible(std::vector<std::int64_t>{2, 3, 100}).feasible;

  outcome.pass = delta > 0 && eps1 > 0 && eps2 > 0 && delta == expected_delta && eps1 == expected_eps1 &&
                 eps2 == expected_eps2 && rounded_ok && ex2["rounded_feasible"] == false;
  outcome.detail = "delta = " + to_string(delta) + ", eps1 = " + to_string(eps1) + ", eps2 = " + to_string(eps2) +
                   ", {2,3,100} " + (rounded_ok ? "infeasible" : "NOT infeasible");
  return outcome;
}

Outcome criterion9() {
  Outcome outcome{true, "", kLimitOpt};
  int count = 0, skipped = 0, failures = 0;
  Rational worst = 0;
  for (int a = 1; a <= 6; ++a) {
    for (int b = 1; b <= a; ++b) {
      for (int c = 1; c <= b; ++c) {
        const auto instance = BgtInstance::from_rates({Rational(a), Rational(b), Rational(c)});
        Rational opt;
        try {
          opt = bgt_opt(instance);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::state_space_too_large) throw;
          ++skipped;
          continue;
        }
        ++count;
        const Rational achieved = max_height(solve(instance).schedule, instance);
        if (achieved > Rational(12, 7) * opt) ++failures;
        worst = std::max(worst, Rational(achieved / opt));
      }
    }
  }

  // The bench command must report the same worst ratio.
  std::istringstream in;
  std::ostringstream out, err;
  const int code = cli::run({"bench", "--exhaustive", "--n", "3", "--min-rate", "1", "--max-rate", "6", "--oracle"},
                            in, out, err);
  bool bench_ok = code == 0;
  std::string reported = "?";
  if (bench_ok) {
    const auto doc = nlohmann::json::parse(out.str());
    reported = doc["vs_opt"]["worst_ratio"].get<std::string>();
    bench_ok = parse_rational(reported) == worst && doc["guarantee_failures"] == 0;
  }

  outcome.pass = failures == 0 && count + skipped == 56 && bench_ok;
  outcome.detail = std::to_string(count) + " instances, " + std::to_string(skipped) + " skipped, " +
                   std::to_string(failures) + " failures, worst ratio " + to_string(worst) + " (" +
                   to_decimal(worst, 4) + "), bench reports " + reported;
  return outcome;
}

Outcome criterion10() {
  Outcome outcome;
  for (const Rational& h : {Rational(1), Rational(5), Rational(7, 3)}) {
    const auto instance = BgtInstance::from_rates({h});
    const auto solution = solve(instance);
    const auto& entries = solution.schedule.entries();
    const bool ok = entries.size() == 1 && entries[0].offset == 1 && entries[0].cycle == 1 && solution.bound == h &&
                    max_height(solution.schedule, instance) == h;
    outcome.pass = outcome.pass && ok;
  }
  const auto dominant = BgtInstance::from_rates({Rational(13), Rational(1)});
  bool raised = false;
  try {
    solve(dominant, {Rational(12, 7), LowerBoundMode::sum});
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::period_below_two;
  }
  bool absent = true;
  try {
    const auto solution = solve(dominant, {Rational(12, 7), LowerBoundMode::max_rule});
    absent = max_height(solution.schedule, dominant) <= solution.bound;
  } catch (const Error&) {
    absent = false;
  }
  outcome.pass = outcome.pass && raised && absent;
  outcome.detail = std::string("single bamboo -> (1,1) with bound h; (13,1) sum: ") +
                   (raised ? "PeriodBelowTwo" : "no error") + ", max-rule: " + (absent ? "solved" : "FAILED");
  return outcome;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"approximation guarantee 12/7 max{2h1,H}", criterion1},
      {"baseline guarantee 2H", criterion2},
      {"schedule validity", criterion3},
      {"certificate at density 7/12", criterion4},
      {"normalization case coverage", criterion5},
      {"pinwheel oracle on {2,3,M} and {2,4,4}", criterion6},
      {"constructive chains vs exhaustive search", criterion7},
      {"tightness reproduction", criterion8},
      {"ratio vs exact optimum, n=3, rates 1..6", criterion9},
      {"single bamboo and PeriodBelowTwo", criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double took = seconds_since(start);
    if (outcome.limit > 0 && took >= outcome.limit) outcome.pass = false;
    if (!outcome.pass) ++failed;
    char timing[64];
    if (outcome.limit > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", took, outcome.limit);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", took);
    }
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << (k + 1) << ": " << criteria[k].first << " ["
              << timing << "] " << outcome.detail << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
