#include "bamboo/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "bamboo/chain_scheduler.hpp"
#include "bamboo/error.hpp"
#include "bamboo/json_io.hpp"
#include "bamboo/oracle.hpp"
#include "bamboo/verifier.hpp"

namespace bamboo::cli {

namespace {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::uint64_t state_cap_from_env() {
  if (const char* raw = std::getenv("BAMBOO_STATE_CAP")) {
    try {
      const Rational cap = parse_rational(raw);
      if (cap >= 1 && boost::multiprecision::denominator(cap) == 1) {
        return boost::multiprecision::numerator(cap).convert_to<std::uint64_t>();
      }
    } catch (const Error&) {
    }
    throw Error(ErrorKind::parse, std::string("BAMBOO_STATE_CAP must be a positive integer, got '") + raw + "'");
  }
  return kDefaultStateCap;
}

Json read_json(const std::string& path, std::istream& in) {
  try {
    if (path.empty() || path == "-") return Json::parse(in);
    std::ifstream file(path);
    if (!file) throw Error(ErrorKind::parse, "cannot open '" + path + "'");
    return Json::parse(file);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
  }
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

ReductionConfig make_config(const std::string& factor, const std::string& mode) {
  ReductionConfig config;
  config.factor = parse_rational(factor);
  if (mode == "sum") {
    config.lower_bound = LowerBoundMode::sum;
  } else if (mode == "max-rule") {
    config.lower_bound = LowerBoundMode::max_rule;
  } else {
    throw Error(ErrorKind::parse, "--lower-bound must be 'sum' or 'max-rule', got '" + mode + "'");
  }
  return config;
}

struct SolveOptions {
  std::string input = "-";
  std::string factor = "12/7";
  std::string mode = "max-rule";
  bool explain = false;
};

void add_solve_options(CLI::App* cmd, SolveOptions& opts) {
  cmd->add_option("input,--input", opts.input, "Instance JSON path ('-' for standard input)");
  cmd->add_option("--factor", opts.factor, "Magnification factor (12/7 or 2)");
  cmd->add_option("--lower-bound", opts.mode, "Lower bound: sum or max-rule")
      ->check(CLI::IsMember({"sum", "max-rule"}));
}

int do_solve(const SolveOptions& opts, bool trace_only, Io io) {
  const BgtInstance instance = instance_from_json(read_json(opts.input, io.in));
  const Solution solution = solve(instance, make_config(opts.factor, opts.mode));
  if (trace_only) {
    Json doc;
    doc["lower_bound"] = to_string(solution.lower_bound);
    doc["bound"] = to_string(solution.bound);
    doc["trace"] = solution.trace ? trace_to_json(*solution.trace, instance) : Json(nullptr);
    emit(io.out, doc);
  } else {
    emit(io.out, solution_to_json(solution, instance, opts.explain));
  }
  return kOk;
}

struct VerifyOptions {
  std::string input;
  std::string instance;
  std::string schedule;
  std::int64_t horizon = 0;
};

int do_verify(const VerifyOptions& opts, Io io) {
  Json instance_doc, schedule_doc;
  if (!opts.input.empty()) {
    // A combined document, e.g. the output of `solve`.
    const Json doc = read_json(opts.input, io.in);
    instance_doc = doc.contains("instance") ? doc.at("instance") : doc;
    schedule_doc = doc.contains("schedule") ? doc.at("schedule") : doc;
  } else {
    if (opts.instance.empty() || opts.schedule.empty()) {
      throw Error(ErrorKind::parse, "verify needs --input, or both --instance and --schedule");
    }
    if (opts.instance == "-" && opts.schedule == "-") {
      throw Error(ErrorKind::parse, "only one of --instance/--schedule may read standard input");
    }
    instance_doc = read_json(opts.instance, io.in);
    schedule_doc = read_json(opts.schedule, io.in);
  }

  const BgtInstance instance = instance_from_json(instance_doc);
  const PeriodicSchedule schedule = schedule_from_json(schedule_doc, instance);

  const Rational lb = schedule_doc.contains("lower_bound") ? rational_from_json(schedule_doc.at("lower_bound"))
                                                           : lower_bound(instance, LowerBoundMode::max_rule);
  Rational bound;
  if (schedule_doc.contains("bound")) {
    bound = rational_from_json(schedule_doc.at("bound"));
  } else {
    bound = instance.size() == 1 ? instance.max_rate() : Rational(12, 7) * lb;
  }
  std::vector<Rational> windows;
  for (const auto& h : instance.rates()) windows.push_back(bound / h);
  const PseudoInstance pseudo(std::move(windows));

  const CollisionReport collisions = check_collisions(schedule);
  const bool windows_ok = check_windows(schedule, pseudo);
  const auto heights = max_heights(schedule, instance);
  const Rational analytic = *std::max_element(heights.begin(), heights.end());
  const std::int64_t horizon = opts.horizon > 0 ? opts.horizon : default_horizon(schedule);
  const SimReport sim = simulate(schedule, instance, horizon);
  const bool agrees = sim.covers_steady_state ? sim.max_height == analytic : sim.max_height <= analytic;

  Json doc;
  const bool ok = collisions.ok() && windows_ok && sim.double_bookings.empty() && agrees;
  doc["ok"] = ok;
  Json clash = Json::array();
  for (const auto& c : collisions.collisions) {
    clash.push_back({{"jobs", {instance.input_index(c.first), instance.input_index(c.second)}}, {"day", c.day}});
  }
  doc["collisions"] = clash;
  doc["windows_ok"] = windows_ok;
  std::vector<std::string> wire_heights(instance.size());
  for (std::size_t job = 0; job < instance.size(); ++job) wire_heights[instance.input_index(job)] = to_string(heights[job]);
  doc["heights"] = wire_heights;
  doc["max_height"] = to_string(analytic);
  doc["lower_bound"] = to_string(lb);
  doc["bound"] = to_string(bound);
  doc["ratio"] = to_string(analytic / lb);

  Json simulation;
  simulation["horizon"] = sim.horizon;
  simulation["max_height"] = to_string(sim.max_height);
  simulation["argmax_day"] = sim.argmax_day;
  simulation["argmax_job"] = instance.input_index(sim.argmax_job);
  simulation["covers_steady_state"] = sim.covers_steady_state;
  simulation["agrees"] = agrees;
  Json booked = Json::array();
  for (const auto& d : sim.double_bookings) {
    booked.push_back({{"day", d.day}, {"jobs", {instance.input_index(d.first), instance.input_index(d.second)}}});
  }
  simulation["double_bookings"] = booked;
  doc["simulation"] = simulation;
  emit(io.out, doc);
  return ok ? kOk : kVerificationFailed;
}

struct BenchOptions {
  std::int64_t seeds = 100;
  std::uint64_t seed = 0;
  std::int64_t n = 5;
  std::int64_t min_rate = 1;
  std::int64_t max_rate = 100;
  std::string factor = "12/7";
  std::string mode = "max-rule";
  bool oracle = false;
  bool exhaustive = false;
};

// All non-increasing n-tuples over [lo, hi].
void for_each_tuple(std::int64_t n, std::int64_t lo, std::int64_t hi,
                    const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(n), hi);
  while (true) {
    visit(tuple);
    std::size_t k = tuple.size();
    while (k > 0 && tuple[k - 1] == lo) --k;
    if (k == 0) return;
    --tuple[k - 1];
    for (std::size_t i = k; i < tuple.size(); ++i) tuple[i] = tuple[k - 1];
  }
}

struct RatioStats {
  std::int64_t count = 0;
  Rational worst = 0;
  Rational sum = 0;
  std::vector<std::int64_t> worst_rates;

  void add(const Rational& ratio, const std::vector<std::int64_t>& rates) {
    ++count;
    sum += ratio;
    if (count == 1 || ratio > worst) {
      worst = ratio;
      worst_rates = rates;
    }
  }

  Json to_json() const {
    Json doc;
    doc["count"] = count;
    doc["worst_ratio"] = to_string(worst);
    doc["worst_ratio_decimal"] = to_decimal(worst, 6);
    const Rational mean = count > 0 ? Rational(sum / count) : Rational(0);
    doc["mean_ratio"] = to_string(mean);
    doc["mean_ratio_decimal"] = to_decimal(mean, 6);
    doc["worst_instance"] = worst_rates;
    return doc;
  }
};

int do_bench(const BenchOptions& opts, Io io) {
  if (opts.n < 1 || opts.min_rate < 1 || opts.max_rate < opts.min_rate || opts.seeds < 0) {
    throw Error(ErrorKind::parse, "bench needs n >= 1, 1 <= min-rate <= max-rate and seeds >= 0");
  }
  const ReductionConfig config = make_config(opts.factor, opts.mode);
  const std::uint64_t cap = state_cap_from_env();

  RatioStats vs_bound, vs_opt;
  std::int64_t failures = 0, skipped = 0;
  auto evaluate = [&](const std::vector<std::int64_t>& raw) {
    std::vector<Rational> rates(raw.begin(), raw.end());
    const BgtInstance instance = BgtInstance::from_rates(rates);
    const Solution solution = solve(instance, config);
    if (solution.height_bound > solution.bound) ++failures;
    vs_bound.add(solution.height_bound / solution.lower_bound, raw);
    if (!opts.oracle) return;
    try {
      vs_opt.add(solution.height_bound / bgt_opt(instance, cap), raw);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::state_space_too_large) throw;
      ++skipped;
    }
  };

  if (opts.exhaustive) {
    for_each_tuple(opts.n, opts.min_rate, opts.max_rate, evaluate);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::int64_t> draw(opts.min_rate, opts.max_rate);
    for (std::int64_t k = 0; k < opts.seeds; ++k) {
      std::vector<std::int64_t> rates(static_cast<std::size_t>(opts.n));
      for (auto& r : rates) r = draw(rng);
      evaluate(rates);
    }
  }

  Json doc;
  doc["mode"] = opts.exhaustive ? "exhaustive" : "random";
  if (!opts.exhaustive) doc["seed"] = opts.seed;
  doc["n"] = opts.n;
  doc["rate_range"] = {opts.min_rate, opts.max_rate};
  doc["factor"] = to_string(config.factor);
  doc["lower_bound_mode"] = opts.mode;
  doc["vs_lower_bound"] = vs_bound.to_json();
  if (opts.oracle) {
    Json oracle = vs_opt.to_json();
    oracle["skipped"] = skipped;
    doc["vs_opt"] = oracle;
  }
  doc["guarantee_failures"] = failures;
  emit(io.out, doc);
  return failures == 0 ? kOk : kVerificationFailed;
}

Json error_json(const Error& e) {
  Json doc{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (e.kind() == ErrorKind::period_below_two) doc["hint"] = "use --lower-bound max-rule";
  return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Bamboo Garden Trimming solver with verifiers and brute-force oracles", "bamboo"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a periodic trimming schedule");
  add_solve_options(solve_cmd, solve_opts);
  solve_cmd->add_flag("--explain", solve_opts.explain, "Include the full pipeline trace");

  SolveOptions explain_opts;
  auto* explain_cmd = app.add_subcommand("explain", "Dump the rounding pipeline trace");
  add_solve_options(explain_cmd, explain_opts);

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Check a schedule against an instance");
  verify_cmd->add_option("--input", verify_opts.input, "Document holding both instance and schedule");
  verify_cmd->add_option("--instance", verify_opts.instance, "Instance JSON path");
  verify_cmd->add_option("--schedule", verify_opts.schedule, "Schedule JSON path");
  verify_cmd->add_option("--horizon", verify_opts.horizon, "Simulated days (default: max offset + 2 hyperperiods)")
      ->check(CLI::PositiveNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact brute-force answers for small instances");
  oracle_cmd->require_subcommand(1);
  std::vector<std::int64_t> pinwheel_periods;
  auto* pinwheel_cmd = oracle_cmd->add_subcommand("pinwheel", "Decide Pinwheel schedulability");
  pinwheel_cmd->add_option("periods", pinwheel_periods, "Integer periods")->required();
  std::string opt_input = "-";
  auto* opt_cmd = oracle_cmd->add_subcommand("bgt-opt", "Exact optimum of a small BGT instance");
  opt_cmd->add_option("input,--input", opt_input, "Instance JSON path ('-' for standard input)");
  std::string t_eps = "1/100", t_m = "100", t_eta = "1/100", t_gamma = "1/100";
  auto* tight_cmd = oracle_cmd->add_subcommand("tightness", "Reproduce the 12/7 tightness constructions");
  tight_cmd->add_option("--epsilon", t_eps);
  tight_cmd->add_option("--M", t_m);
  tight_cmd->add_option("--eta", t_eta);
  tight_cmd->add_option("--gamma", t_gamma);

  std::vector<std::string> density_periods;
  std::string density_input;
  auto* density_cmd = app.add_subcommand("density", "Exact density of a pseudo-instance");
  density_cmd->add_option("periods", density_periods, "Rational periods");
  density_cmd->add_option("--input", density_input, "Pseudo-instance JSON ({\"periods\": [...]})");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Approximation ratios over generated instances");
  bench_cmd->add_option("--seeds", bench_opts.seeds, "Number of random instances");
  bench_cmd->add_option("--seed", bench_opts.seed, "Generator seed");
  bench_cmd->add_option("--n", bench_opts.n, "Bamboos per instance");
  bench_cmd->add_option("--min-rate", bench_opts.min_rate, "Smallest integer rate");
  bench_cmd->add_option("--max-rate", bench_opts.max_rate, "Largest integer rate");
  bench_cmd->add_option("--factor", bench_opts.factor, "Magnification factor");
  bench_cmd->add_option("--lower-bound", bench_opts.mode)->check(CLI::IsMember({"sum", "max-rule"}));
  bench_cmd->add_flag("--oracle", bench_opts.oracle, "Also compare against the exact optimum");
  bench_cmd->add_flag("--exhaustive", bench_opts.exhaustive, "Enumerate every rate tuple in range");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return do_solve(solve_opts, false, io);
    if (*explain_cmd) return do_solve(explain_opts, true, io);
    if (*verify_cmd) return do_verify(verify_opts, io);
    if (*pinwheel_cmd) {
      const PinwheelResult result = pinwheel_feasible(pinwheel_periods, state_cap_from_env());
      Json doc{{"feasible", result.feasible}};
      if (result.feasible) doc["witness"] = result.witness;
      doc["states_visited"] = result.states_visited;
      emit(out, doc);
      return kOk;
    }
    if (*opt_cmd) {
      const BgtInstance instance = instance_from_json(read_json(opt_input, in));
      const Rational opt = bgt_opt(instance, state_cap_from_env());
      emit(out, Json{{"opt", to_string(opt)},
                     {"lower_bound", to_string(lower_bound(instance, LowerBoundMode::max_rule))}});
      return kOk;
    }
    if (*tight_cmd) {
      const TightnessParams params{parse_rational(t_eps), parse_rational(t_m), parse_rational(t_eta),
                                   parse_rational(t_gamma)};
      emit(out, tightness_to_json(tightness_examples(params, state_cap_from_env())));
      return kOk;
    }
    if (*density_cmd) {
      PseudoInstance pseudo;
      if (!density_input.empty()) {
        pseudo = pseudo_from_json(read_json(density_input, in));
      } else {
        std::vector<Rational> periods;
        for (const auto& p : density_periods) periods.push_back(parse_rational(p));
        pseudo = PseudoInstance(std::move(periods));
      }
      emit(out, Json{{"density", to_string(pseudo.density())}});
      return kOk;
    }
    if (*bench_cmd) return do_bench(bench_opts, io);
  } catch (const Error& e) {
    emit(out, error_json(e));
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::period_below_two) err << "hint: use --lower-bound max-rule\n";
    return e.kind() == ErrorKind::certificate_violation ? kVerificationFailed : kInputError;
  }
  return kInputError;
}

}  // namespace bamboo::cli
