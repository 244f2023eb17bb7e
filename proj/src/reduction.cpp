#include "bamboo/reduction.hpp"

#include <string>

#include "bamboo/error.hpp"

namespace bamboo {

PseudoInstance::PseudoInstance(std::vector<Rational> periods) : periods_(std::move(periods)) {
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (periods_[i] <= 0) {
      throw Error(ErrorKind::invalid_instance,
                  "period #" + std::to_string(i) + " is not positive: " + to_string(periods_[i]));
    }
  }
}

Rational PseudoInstance::density() const { return bamboo::density(periods_); }

PseudoInstance bgt_to_pseudo(const BgtInstance& instance, const ReductionConfig& config) {
  if (config.factor <= 1) {
    throw Error(ErrorKind::invalid_instance, "magnification factor must exceed 1, got " + to_string(config.factor));
  }
  const Rational bound = lower_bound(instance, config.lower_bound);
  const Rational target = config.factor * bound;

  std::vector<Rational> periods;
  periods.reserve(instance.size());
  for (const auto& h : instance.rates()) periods.push_back(target / h);

  // Rates are sorted, so job 0 carries the shortest period.
  if (periods.front() < 2) {
    throw Error(ErrorKind::period_below_two,
                "pseudo-period " + to_string(periods.front()) + " of job 0 is below 2");
  }

  PseudoInstance pseudo(std::move(periods));
  pseudo.factor = config.factor;
  pseudo.lower_bound = bound;
  return pseudo;
}

BgtInstance ps_to_bgt(std::span<const std::int64_t> periods) {
  std::vector<Rational> rates;
  rates.reserve(periods.size());
  for (auto p : periods) {
    if (p < 1) throw Error(ErrorKind::invalid_instance, "pinwheel period must be >= 1, got " + std::to_string(p));
    rates.emplace_back(Integer(1), Integer(p));
  }
  return BgtInstance::from_rates(std::move(rates));
}

}  // namespace bamboo
