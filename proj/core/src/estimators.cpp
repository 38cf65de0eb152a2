#include "mml/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mml/errors.hpp"

namespace mml {

double objective_q(const ModelSpec& model, const PriorSpec* prior, const DataSet& data,
                   std::span<const double> theta) {
  const double n = static_cast<double>(data.n());
  double q = -log_likelihood(model, data, theta) / n;
  if (prior) q += penalty(model, *prior, theta) / n;
  return q;
}

Vector stationarity_psi(const ModelSpec& model, const PriorSpec* prior, const DataSet& data,
                        std::span<const double> theta) {
  const double n = static_cast<double>(data.n());
  Vector psi = (-1.0 / n) * std::span<const double>(total_score(model, data, theta));
  if (prior) {
    const Vector a = penalty_gradient_a(model, *prior, theta);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] -= a[i] / n;
  }
  return psi;
}

namespace {

Matrix criterion_hessian(const ModelSpec& model, const PriorSpec* prior, const DataSet& data,
                         std::span<const double> theta) {
  const double n = static_cast<double>(data.n());
  Matrix h = (-1.0 / n) * total_hessian(model, data, theta);
  if (prior) h = h + (1.0 / n) * penalty_hessian(model, *prior, theta);
  return h;
}

Vector newton_direction(const ModelSpec& model, const PriorSpec* prior, const DataSet& data,
                        std::span<const double> theta, const Vector& psi, bool& used_scoring) {
  const Vector rhs = -1.0 * std::span<const double>(psi);
  used_scoring = false;
  try {
    return solve_spd(criterion_hessian(model, prior, data, theta), rhs);
  } catch (const NotPositiveDefinite&) {
  }
  // Fisher scoring: expected information in place of the observed one.
  used_scoring = true;
  const Matrix info = model.fisher(theta);
  if (prior) {
    try {
      const double n = static_cast<double>(data.n());
      return solve_spd(info + (1.0 / n) * penalty_hessian(model, *prior, theta), rhs);
    } catch (const NotPositiveDefinite&) {
    }
  }
  return solve_spd(info, rhs);
}

struct Attempt {
  Vector theta;
  double objective = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::size_t scoring_steps = 0;
  bool converged = false;
  std::string failure;
};

Attempt newton(const ModelSpec& model, const PriorSpec* prior, const DataSet& data, const ParamPoint& start,
               const FitOptions& opt) {
  Attempt at;
  at.theta.assign(start.values().begin(), start.values().end());
  at.objective = objective_q(model, prior, data, at.theta);
  Vector psi = stationarity_psi(model, prior, data, at.theta);
  at.residual = norm_inf(psi);
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

  while (at.residual > opt.tolerance) {
    if (at.iterations >= opt.max_iterations) {
      at.failure = "no convergence after " + std::to_string(opt.max_iterations) + " iterations";
      return at;
    }
    ++at.iterations;
    bool scoring = false;
    Vector dir;
    try {
      dir = newton_direction(model, prior, data, at.theta, psi, scoring);
    } catch (const NotPositiveDefinite& e) {
      at.failure = std::string("no descent direction: ") + e.what();
      return at;
    }
    if (scoring) ++at.scoring_steps;

    // Backtracking by halving: keep flagged coordinates positive and do not
    // increase Q_n beyond round-off.
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 80; ++halving, step *= 0.5) {
      Vector cand = at.theta + step * std::span<const double>(dir);
      if (!start.admits(cand)) continue;
      double q;
      try {
        q = objective_q(model, prior, data, cand);
      } catch (const Error&) {
        continue;
      }
      if (!std::isfinite(q)) continue;
      const double slack = kRoundoff * (1.0 + std::abs(at.objective));
      if (q <= at.objective) {
        accepted = true;
      } else if (q <= at.objective + slack) {
        // Within round-off of the current value: accept only if the
        // stationarity residual improves.
        const Vector cpsi = stationarity_psi(model, prior, data, cand);
        accepted = norm_inf(cpsi) < at.residual;
      }
      if (accepted) {
        at.theta = std::move(cand);
        at.objective = q;
        break;
      }
    }
    if (!accepted) {
      at.failure = "line search failed to reduce the objective";
      return at;
    }
    psi = stationarity_psi(model, prior, data, at.theta);
    at.residual = norm_inf(psi);
  }
  at.converged = true;
  return at;
}

EstimateResult fit_impl(const ModelSpec& model, const PriorSpec* prior, const DataSet& data,
                        const ParamPoint& init, const FitOptions& opt) {
  std::vector<ParamPoint> starts{init};
  for (const Vector& v : opt.extra_inits) starts.push_back(init.with_values(v));

  std::vector<Attempt> attempts;
  for (const ParamPoint& s : starts) attempts.push_back(newton(model, prior, data, s, opt));

  const Attempt* best = nullptr;
  std::vector<const Attempt*> distinct;
  for (const Attempt& a : attempts) {
    if (!a.converged) continue;
    if (!best || a.objective < best->objective) best = &a;
    const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const Attempt* o) {
      for (std::size_t i = 0; i < a.theta.size(); ++i)
        if (std::abs(a.theta[i] - o->theta[i]) > 1e-6 * (1.0 + std::abs(o->theta[i]))) return false;
      return true;
    });
    if (!seen) distinct.push_back(&a);
  }
  if (!best) {
    if (opt.throw_on_failure) throw NoConvergence(attempts.front().failure);
    best = &attempts.front();
  }

  EstimateResult r(init.with_values(best->theta));
  r.objective = best->objective;
  r.residual = best->residual;
  r.iterations = best->iterations;
  r.converged = best->converged;
  r.observed_info = -1.0 * total_hessian(model, data, best->theta);
  r.stationary_points = std::max<std::size_t>(distinct.size(), 1);
  r.scoring_steps = best->scoring_steps;
  return r;
}

}  // namespace

EstimateResult fit_mle(const ModelSpec& model, const DataSet& data, const std::optional<ParamPoint>& init,
                       const FitOptions& options) {
  validate_data(model, data);
  const ParamPoint start = init ? *init : model.point(model.initial_guess(data));
  model.check_theta(start.values());
  return fit_impl(model, nullptr, data, start, options);
}

EstimateResult fit_wf(const ModelSpec& model, const PriorSpec& prior, const DataSet& data,
                      const std::optional<ParamPoint>& init, const FitOptions& options) {
  validate_data(model, data);
  ParamPoint start = [&] {
    if (init) return *init;
    FitOptions mle_opt = options;
    mle_opt.throw_on_failure = false;
    mle_opt.extra_inits.clear();
    EstimateResult mle = fit_mle(model, data, std::nullopt, mle_opt);
    return mle.converged ? mle.theta_hat : model.point(model.initial_guess(data));
  }();
  model.check_theta(start.values());
  return fit_impl(model, &prior, data, start, options);
}

Vector predicted_shift(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta,
                       std::size_t n) {
  const Vector x = solve_spd(model.fisher(theta), penalty_gradient_a(model, prior, theta));
  return (1.0 / static_cast<double>(n)) * std::span<const double>(x);
}

Matrix asymptotic_cov(const ModelSpec& model, std::span<const double> theta) {
  return inverse_spd(model.fisher(theta));
}

Matrix sandwich_cov(const Matrix& a, const Matrix& b) {
  const Matrix ainv = inverse_spd(a);
  Matrix s = ainv * b * ainv;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j) s(i, j) = s(j, i) = 0.5 * (s(i, j) + s(j, i));
  return s;
}

Matrix score_outer_expectation(const ModelSpec& model, std::span<const double> theta) {
  const std::size_t d = model.dim();
  const Vector flat = expect_quadrature(model, theta, std::function<Vector(double)>([&](double x) {
    const Vector g = model.grad(x, theta);
    Vector out(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out[i * d + j] = g[i] * g[j];
    return out;
  }));
  Matrix b(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) b(i, j) = flat[i * d + j];
  return b;
}

}  // namespace mml
