#include "bamboo/json_io.hpp"

#include <string>

#include "bamboo/error.hpp"

namespace bamboo {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::parse, what); }

std::size_t wire_id(const BgtInstance* instance, std::size_t job) {
  return instance != nullptr ? instance->input_index(job) : job;
}

Json rounded_to_json(const std::vector<RoundedJob>& jobs, const BgtInstance& instance) {
  Json out = Json::array();
  for (const auto& j : jobs) out.push_back({{"job", wire_id(&instance, j.job)}, {"period", j.period}});
  return out;
}

Json ids_to_json(const std::vector<RoundedJob>& jobs, const BgtInstance& instance) {
  Json out = Json::array();
  for (const auto& j : jobs) out.push_back(wire_id(&instance, j.job));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::int64_t positive_integer(const Json& entry, const char* key) {
  if (!entry.contains(key)) malformed(std::string("schedule entry lacks \"") + key + "\"");
  const Json& v = entry.at(key);
  if (!v.is_number_integer()) malformed(std::string("\"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Rational(Integer(value.get<std::uint64_t>()))
                                      : Rational(Integer(value.get<std::int64_t>()));
  }
  if (value.is_array() && value.size() == 2 && value[0].is_number_integer() && value[1].is_number_integer()) {
    const auto den = value[1].get<std::int64_t>();
    if (den == 0) malformed("zero denominator in [num, den] pair");
    return Rational(Integer(value[0].get<std::int64_t>()), Integer(den));
  }
  if (value.is_number_float()) {
    malformed("binary floating-point value " + value.dump() + " is not exact; quote it as a string");
  }
  malformed("expected a rational, got " + value.dump());
}

BgtInstance instance_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("rates") || !doc.at("rates").is_array()) {
    malformed("instance must be an object with a \"rates\" array");
  }
  std::vector<Rational> rates;
  for (const auto& r : doc.at("rates")) rates.push_back(rational_from_json(r));
  return BgtInstance::from_rates(std::move(rates));
}

Json instance_to_json(const BgtInstance& instance) {
  std::vector<Rational> in_order(instance.size());
  for (std::size_t job = 0; job < instance.size(); ++job) in_order[instance.input_index(job)] = instance.rate(job);
  return Json{{"rates", rationals_to_json(in_order)}};
}

PseudoInstance pseudo_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("periods") || !doc.at("periods").is_array()) {
    malformed("pseudo-instance must be an object with a \"periods\" array");
  }
  std::vector<Rational> periods;
  for (const auto& p : doc.at("periods")) periods.push_back(rational_from_json(p));
  return PseudoInstance(std::move(periods));
}

PeriodicSchedule schedule_from_json(const Json& doc, const BgtInstance& instance) {
  if (!doc.is_object() || !doc.contains("entries") || !doc.at("entries").is_array()) {
    malformed("schedule must be an object with an \"entries\" array");
  }
  std::vector<ScheduleEntry> entries;
  for (const auto& e : doc.at("entries")) {
    if (!e.is_object()) malformed("schedule entry must be an object");
    const std::int64_t job = positive_integer(e, "job");
    if (job < 0 || static_cast<std::size_t>(job) >= instance.size()) {
      throw Error(ErrorKind::job_mismatch, "schedule names unknown job " + std::to_string(job));
    }
    entries.push_back({instance.job_of_input(static_cast<std::size_t>(job)), positive_integer(e, "offset"),
                       positive_integer(e, "cycle")});
  }
  return PeriodicSchedule(std::move(entries));
}

Json entries_to_json(const PeriodicSchedule& schedule, const BgtInstance& instance) {
  std::vector<const ScheduleEntry*> by_wire(instance.size(), nullptr);
  for (const auto& e : schedule.entries()) by_wire.at(instance.input_index(e.job)) = &e;
  Json out = Json::array();
  for (std::size_t wire = 0; wire < by_wire.size(); ++wire) {
    if (by_wire[wire] == nullptr) continue;
    out.push_back({{"job", wire}, {"offset", by_wire[wire]->offset}, {"cycle", by_wire[wire]->cycle}});
  }
  return out;
}

Json solution_to_json(const Solution& solution, const BgtInstance& instance, bool with_trace) {
  Json out;
  out["instance"] = instance_to_json(instance);
  out["factor"] = to_string(solution.config.factor);
  out["lower_bound_mode"] = solution.config.lower_bound == LowerBoundMode::sum ? "sum" : "max-rule";
  out["lower_bound"] = to_string(solution.lower_bound);
  out["bound"] = to_string(solution.bound);
  out["max_height"] = to_string(solution.height_bound);
  out["entries"] = entries_to_json(solution.schedule, instance);
  if (with_trace) out["trace"] = solution.trace ? trace_to_json(*solution.trace, instance) : Json(nullptr);
  return out;
}

Json trace_to_json(const PipelineTrace& trace, const BgtInstance& instance) {
  Json out;
  Json pseudo = Json::array();
  std::vector<Rational> in_order(trace.pseudo.size());
  for (std::size_t job = 0; job < trace.pseudo.size(); ++job) in_order[instance.input_index(job)] = trace.pseudo.period(job);
  out["pseudo_periods"] = rationals_to_json(in_order);
  out["density"] = to_string(trace.pseudo.density());

  if (trace.powers_of_two) {
    out["route"] = "power-of-two";
    out["rounded"] = rounded_to_json(*trace.powers_of_two, instance);
    return out;
  }

  out["route"] = "two-grid";
  if (trace.state) {
    out["a2"] = ids_to_json(trace.state->b, instance);
    out["a3"] = ids_to_json(trace.state->c, instance);
    out["b"] = rounded_to_json(trace.state->b, instance);
    out["c"] = rounded_to_json(trace.state->c, instance);
  }
  if (trace.decomposition) {
    const auto& dec = *trace.decomposition;
    out["r"] = dec.r;
    out["p"] = rounded_to_json(dec.p, instance);
    out["density_p"] = to_string(dec.density_p);
    out["s"] = dec.s;
    out["q"] = rounded_to_json(dec.q, instance);
    out["density_q"] = to_string(dec.density_q);
  }
  if (trace.normalized) {
    const auto& norm = *trace.normalized;
    out["case"] = std::string(to_string(norm.rule));
    out["v"] = to_string(norm.v);
    out["w"] = to_string(norm.w);
    out["b_prime"] = rounded_to_json(norm.b, instance);
    out["c_prime"] = rounded_to_json(norm.c, instance);
    out["y"] = to_string(norm.y);
  }
  if (trace.certificate) {
    const auto& cert = *trace.certificate;
    out["certificate"] = {{"y", to_string(cert.y)},
                          {"r_after", cert.r_after},
                          {"s_after", cert.s_after},
                          {"schedulable", cert.schedulable},
                          {"enumeration_checked", cert.enumeration_checked}};
  }
  return out;
}

Json tightness_to_json(const TightnessReport& report) {
  Json first;
  first["epsilon"] = to_string(report.params.epsilon);
  first["M"] = to_string(report.params.big_m);
  first["periods"] = rationals_to_json(report.pseudo_periods);
  first["density"] = to_string(report.pseudo_density);
  first["delta"] = to_string(report.delta);
  first["delta_positive"] = report.delta > 0;
  first["delta_consistent"] = report.delta_matches_density;
  first["rounded"] = report.rounded;
  first["rounded_feasible"] = report.rounded_feasible;

  Json second;
  second["eta"] = to_string(report.params.eta);
  second["gamma"] = to_string(report.params.gamma);
  second["gamma_limit"] = to_string(report.gamma_limit);
  second["gamma_in_range"] = report.gamma_in_range;
  second["factor"] = to_string(report.factor);
  second["periods"] = rationals_to_json(report.reduced_periods);
  second["eps1"] = to_string(report.eps1);
  second["eps2"] = to_string(report.eps2);
  second["closed_forms_match"] = report.closed_forms_match;
  second["shape_reproduced"] = report.shape_reproduced;
  if (report.shape_reproduced) {
    second["rounded"] = report.reduced_rounded;
    second["rounded_feasible"] = report.reduced_rounded_feasible;
  } else {
    second["note"] = "tightness shape not reproduced";
  }
  return Json{{"rounding_gap", first}, {"factor_gap", second}};
}

}  // namespace bamboo
