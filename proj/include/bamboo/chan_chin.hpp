#pragma once

// Density rounding of pseudo-periods onto the {2}, {3} and {2,3} grids,
// followed by the four-case normalization and the schedulability
// certificate y = ceil(2 rho(B'))/2 + ceil(3 rho(C'))/3.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bamboo/rational.hpp"
#include "bamboo/reduction.hpp"

namespace bamboo {

struct RoundedJob {
  std::size_t job = 0;
  std::int64_t period = 0;

  friend bool operator==(const RoundedJob&, const RoundedJob&) = default;
};

Rational density(std::span<const RoundedJob> jobs);

/// Largest base * 2^j (j >= 0) not exceeding p. The result lies in (p/2, p].
/// Throws Error(unroundable_period) when p < base.
std::int64_t specialize_single(const Rational& p, std::int64_t base);

/// Every pseudo-period rounded down to a power of two (the {2} grid).
std::vector<RoundedJob> specialize_powers_of_two(const PseudoInstance& pseudo);

struct SpecializedState {
  std::vector<RoundedJob> b;     // from A2: periods 2 * 2^j
  std::vector<RoundedJob> c;     // from A3: periods 3 * 2^j
  std::vector<Rational> origin;  // pseudo-period per job id
};

/// Classifies p in [2*2^j, 3*2^j) into A2 and p in [3*2^j, 4*2^j) into A3,
/// rounding each down within its own grid. Requires every p >= 2.
SpecializedState split_23(const PseudoInstance& pseudo);

struct Decomposition {
  std::int64_t r = 0;
  std::vector<RoundedJob> p;  // rho(B) = r/2 + rho(P), 0 <= rho(P) < 1/2
  std::int64_t s = 0;
  std::vector<RoundedJob> q;  // rho(C) = s/3 + rho(Q), 0 <= rho(Q) < 1/3
  Rational density_p = 0;
  Rational density_q = 0;
};

/// Extracts whole units (1/2 from B, 1/3 from C) greedily from the
/// shortest periods; what remains is P (resp. Q).
Decomposition decompose(const SpecializedState& state);

enum class NormalizationCase { none, a, b, c, d };
std::string_view to_string(NormalizationCase rule);

struct NormalizedState {
  std::vector<RoundedJob> b;  // B'
  std::vector<RoundedJob> c;  // C'
  NormalizationCase rule = NormalizationCase::none;
  Rational v = 0;  // 4 rho(P)/3 + rho(Q)
  Rational w = 0;  // rho(P) + 3 rho(Q)/2
  Rational y = 0;
  std::int64_t r = 0;  // pre-normalization decomposition, kept for the certificate
  std::int64_t s = 0;
};

NormalizedState normalize(const Decomposition& dec, const SpecializedState& state);

/// y for an arbitrary pair of grids.
Rational certificate_value(std::span<const RoundedJob> b, std::span<const RoundedJob> c);

struct CertificateReport {
  Rational y = 0;
  std::int64_t r_after = 0;  // floor(2 rho(B'))
  std::int64_t s_after = 0;  // floor(3 rho(C'))
  bool schedulable = false;  // y <= 1
  bool enumeration_checked = false;  // original density <= 7/12
};

/// Recomputes y from B' and C'. When the source density is at most 7/12 the
/// guarantee y <= 1 and the admissible (r, s) pairs per case are enforced;
/// a failure there is a bug and raises Error(certificate_violation).
CertificateReport certificate(const NormalizedState& norm, const Rational& original_density);

}  // namespace bamboo
