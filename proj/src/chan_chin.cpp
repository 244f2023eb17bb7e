#include "bamboo/chan_chin.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

#include "bamboo/error.hpp"

namespace bamboo {

namespace {

void sort_by_period(std::vector<RoundedJob>& jobs) {
  std::sort(jobs.begin(), jobs.end(), [](const RoundedJob& a, const RoundedJob& b) {
    return a.period != b.period ? a.period < b.period : a.job < b.job;
  });
}

// Splits `jobs` (sorted by period) into `units` full units of density `unit`
// and the remainder. Every period is unit_inverse * 2^j, so each unit closes
// exactly: the residual capacity stays a multiple of the current item.
std::vector<RoundedJob> strip_units(const std::vector<RoundedJob>& jobs, std::int64_t units,
                                    const Rational& unit) {
  std::size_t next = 0;
  Rational residual = unit;
  std::int64_t filled = 0;
  while (filled < units) {
    if (next == jobs.size()) throw std::logic_error("unit extraction ran out of jobs");
    residual -= Rational(1, jobs[next].period);
    ++next;
    if (residual < 0) throw std::logic_error("unit extraction overshot; periods are not on one grid");
    if (residual == 0) {
      ++filled;
      residual = unit;
    }
  }
  if (residual != unit) throw std::logic_error("unit extraction left a partial unit");
  return {jobs.begin() + static_cast<std::ptrdiff_t>(next), jobs.end()};
}

std::vector<RoundedJob> without(const std::vector<RoundedJob>& from, const std::vector<RoundedJob>& removed) {
  std::unordered_set<std::size_t> ids;
  for (const auto& j : removed) ids.insert(j.job);
  std::vector<RoundedJob> kept;
  for (const auto& j : from) {
    if (!ids.contains(j.job)) kept.push_back(j);
  }
  return kept;
}

void move_respecialized(const std::vector<RoundedJob>& moved, std::int64_t base, std::vector<RoundedJob>& into) {
  for (const auto& j : moved) {
    into.push_back({j.job, specialize_single(Rational(j.period), base)});
  }
  sort_by_period(into);
}

bool pair_allowed(NormalizationCase rule, std::int64_t r, std::int64_t s) {
  using P = std::pair<std::int64_t, std::int64_t>;
  const P rs{r, s};
  auto in = [&](std::initializer_list<P> allowed) {
    return std::find(allowed.begin(), allowed.end(), rs) != allowed.end();
  };
  switch (rule) {
    case NormalizationCase::none: return in({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}});
    case NormalizationCase::a: return in({{0, 0}, {0, 1}, {0, 2}, {1, 0}});
    case NormalizationCase::b: return in({{0, 0}, {0, 1}, {1, 0}});
    case NormalizationCase::c: return in({{0, 0}, {0, 1}});
    case NormalizationCase::d: return in({{0, 0}});
  }
  return false;
}

}  // namespace

Rational density(std::span<const RoundedJob> jobs) {
  Rational sum = 0;
  for (const auto& j : jobs) sum += Rational(1, j.period);
  return sum;
}

std::int64_t specialize_single(const Rational& p, std::int64_t base) {
  if (base < 1) throw Error(ErrorKind::invalid_instance, "grid base must be >= 1");
  if (p < base) {
    throw Error(ErrorKind::unroundable_period,
                "period " + to_string(p) + " lies below the grid {" + std::to_string(base) + ", " +
                    std::to_string(2 * base) + ", ...}");
  }
  const Integer limit = floor(p);
  Integer rounded = base;
  while (rounded * 2 <= limit) rounded *= 2;
  return to_int64(rounded);
}

std::vector<RoundedJob> specialize_powers_of_two(const PseudoInstance& pseudo) {
  std::vector<RoundedJob> rounded;
  rounded.reserve(pseudo.size());
  for (std::size_t job = 0; job < pseudo.size(); ++job) {
    rounded.push_back({job, specialize_single(pseudo.period(job), 2)});
  }
  sort_by_period(rounded);
  return rounded;
}

SpecializedState split_23(const PseudoInstance& pseudo) {
  SpecializedState state;
  state.origin = pseudo.periods();
  for (std::size_t job = 0; job < pseudo.size(); ++job) {
    const Rational& p = pseudo.period(job);
    // two_grid = 2 * 2^j with 2 * 2^j <= p < 4 * 2^j; the A2/A3 cut is 3 * 2^j.
    const std::int64_t two_grid = specialize_single(p, 2);
    const std::int64_t three_grid = two_grid / 2 * 3;
    if (p >= three_grid) {
      state.c.push_back({job, three_grid});
    } else {
      state.b.push_back({job, two_grid});
    }
  }
  sort_by_period(state.b);
  sort_by_period(state.c);
  return state;
}

Decomposition decompose(const SpecializedState& state) {
  Decomposition dec;
  const Rational rho_b = density(state.b);
  const Rational rho_c = density(state.c);
  dec.r = to_int64(floor(2 * rho_b));
  dec.s = to_int64(floor(3 * rho_c));
  dec.p = strip_units(state.b, dec.r, Rational(1, 2));
  dec.q = strip_units(state.c, dec.s, Rational(1, 3));
  dec.density_p = density(dec.p);
  dec.density_q = density(dec.q);
  return dec;
}

std::string_view to_string(NormalizationCase rule) {
  switch (rule) {
    case NormalizationCase::none: return "none";
    case NormalizationCase::a: return "a";
    case NormalizationCase::b: return "b";
    case NormalizationCase::c: return "c";
    case NormalizationCase::d: return "d";
  }
  return "?";
}

NormalizedState normalize(const Decomposition& dec, const SpecializedState& state) {
  NormalizedState norm;
  norm.b = state.b;
  norm.c = state.c;
  norm.r = dec.r;
  norm.s = dec.s;

  const Rational& rho_p = dec.density_p;
  const Rational& rho_q = dec.density_q;
  if (rho_p + rho_q != 0) {
    norm.v = Rational(4, 3) * rho_p + rho_q;
    norm.w = rho_p + Rational(3, 2) * rho_q;
    const Rational third(1, 3);
    const Rational two_thirds(2, 3);

    if (norm.v <= third) {
      // P and Q together fit one slot of period 3.
      norm.rule = NormalizationCase::a;
    } else if (norm.v <= two_thirds) {
      norm.rule = norm.w <= Rational(1, 2) ? NormalizationCase::b : NormalizationCase::c;
    } else {
      norm.rule = NormalizationCase::d;
    }

    switch (norm.rule) {
      case NormalizationCase::a:
      case NormalizationCase::c:
        norm.b = without(state.b, dec.p);
        move_respecialized(dec.p, 3, norm.c);
        break;
      case NormalizationCase::b:
        norm.c = without(state.c, dec.q);
        move_respecialized(dec.q, 2, norm.b);
        break;
      case NormalizationCase::none:
      case NormalizationCase::d:
        break;
    }
  }
  norm.y = certificate_value(norm.b, norm.c);
  return norm;
}

Rational certificate_value(std::span<const RoundedJob> b, std::span<const RoundedJob> c) {
  return Rational(ceil(2 * density(b)), 2) + Rational(ceil(3 * density(c)), 3);
}

CertificateReport certificate(const NormalizedState& norm, const Rational& original_density) {
  CertificateReport report;
  report.y = certificate_value(norm.b, norm.c);
  report.r_after = to_int64(floor(2 * density(norm.b)));
  report.s_after = to_int64(floor(3 * density(norm.c)));
  report.schedulable = report.y <= 1;

  if (original_density <= Rational(7, 12)) {
    report.enumeration_checked = true;
    const std::string where = "case " + std::string(to_string(norm.rule)) + ", (r,s)=(" +
                              std::to_string(norm.r) + "," + std::to_string(norm.s) + ")";
    if (report.y != norm.y) {
      throw Error(ErrorKind::certificate_violation, "stored certificate disagrees with B'/C' (" + where + ")");
    }
    if (!pair_allowed(NormalizationCase::none, norm.r, norm.s) || !pair_allowed(norm.rule, norm.r, norm.s)) {
      throw Error(ErrorKind::certificate_violation, "inadmissible decomposition for density <= 7/12: " + where);
    }
    if (!report.schedulable) {
      throw Error(ErrorKind::certificate_violation,
                  "certificate y = " + to_string(report.y) + " exceeds 1 at density <= 7/12: " + where);
    }
  }
  return report;
}

}  // namespace bamboo
