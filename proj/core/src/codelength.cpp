#include "mml/codelength.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mml/constants.hpp"
#include "mml/errors.hpp"
#include "mml/estimators.hpp"

namespace mml {

KappaConstant kappa_const(std::size_t d) {
  switch (d) {
    case 0: throw DomainError("kappa_const: d must be >= 1");
    case 1: return {1.0 / 12.0, false};
    case 2: return {5.0 / (36.0 * std::numbers::sqrt3), false};
    case 3: return {19.0 / (192.0 * std::cbrt(2.0)), false};
    default: {
      const double dd = static_cast<double>(d);
      const double rhs = -0.5 * dd * std::log(2.0 * constants::pi) + 0.5 * std::log(dd * constants::pi) -
                         constants::euler_gamma;
      return {std::exp(2.0 * rhs / dd - 1.0), true};
    }
  }
}

double optimal_cell_volume(std::size_t d) {
  if (d < 1 || d > 3) {
    std::ostringstream os;
    os << "optimal_cell_volume: d must be 1, 2 or 3, got " << d;
    throw DomainError(os.str());
  }
  return std::pow(kappa_const(d).value, -0.5 * static_cast<double>(d));
}

CodelengthReport message_length(const ModelSpec& model, const PriorSpec& prior, const DataSet& data,
                                std::span<const double> theta) {
  validate_data(model, data);
  model.check_theta(theta);
  const std::size_t d = model.dim();
  const double dd = static_cast<double>(d);
  const double n = static_cast<double>(data.n());
  const KappaConstant kappa = kappa_const(d);

  // log|nI| = d log n + log|I|
  const double log_det_j = dd * std::log(n) + log_det_spd(model.fisher(theta));
  const double neg_loglik = -log_likelihood(model, data, theta);

  CodelengthReport r;
  r.assertion_part = -prior.log_density(theta) + 0.5 * log_det_j + 0.5 * dd * std::log(kappa.value);
  r.detail_part = neg_loglik + 0.5 * dd;
  r.total = r.assertion_part + r.detail_part;
  r.bic_form = neg_loglik + 0.5 * dd * std::log(n);
  r.gap = r.total - r.bic_form;
  r.up_to_constant = !prior.proper;
  r.approximate_kappa = kappa.approximate;
  return r;
}

CodelengthReport to_bits(CodelengthReport r) {
  const double f = 1.0 / std::numbers::ln2;
  r.total *= f;
  r.assertion_part *= f;
  r.detail_part *= f;
  r.bic_form *= f;
  r.gap *= f;
  return r;
}

std::vector<GapPoint> bic_gap_profile(const ModelSpec& model, const PriorSpec& prior, const DataSet& data,
                                      std::span<const std::size_t> sizes) {
  std::vector<GapPoint> out;
  out.reserve(sizes.size());
  for (std::size_t n : sizes) {
    if (n > data.n()) {
      std::ostringstream os;
      os << "bic_gap_profile: requested n=" << n << " but only " << data.n() << " observations";
      throw DomainError(os.str());
    }
    const DataSet sub = data.prefix(n);
    const EstimateResult fit = fit_wf(model, prior, sub);
    const CodelengthReport rep = message_length(model, prior, sub, fit.theta_hat.values());
    out.push_back({n, rep.gap, Vector(fit.theta_hat.values().begin(), fit.theta_hat.values().end())});
  }
  return out;
}

}  // namespace mml
