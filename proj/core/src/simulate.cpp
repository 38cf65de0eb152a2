#include "mml/simulate.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "mml/errors.hpp"
#include "mml/estimators.hpp"

namespace mml {

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Replicate {
  bool ok = false;
  Vector mle;
  Vector wf;
};

Replicate run_replicate(const SimConfig& cfg, std::size_t r) {
  Replicate out;
  try {
    RngStream rng(cfg.seed, r);
    const DataSet data = cfg.model->sample(cfg.theta0, cfg.n, rng);
    FitOptions opt;
    opt.throw_on_failure = false;
    const EstimateResult mle = fit_mle(*cfg.model, data, std::nullopt, opt);
    if (!mle.converged) return out;
    const EstimateResult wf = fit_wf(*cfg.model, cfg.prior, data, mle.theta_hat, opt);
    if (!wf.converged) return out;
    out.mle.assign(mle.theta_hat.values().begin(), mle.theta_hat.values().end());
    out.wf.assign(wf.theta_hat.values().begin(), wf.theta_hat.values().end());
    out.ok = true;
  } catch (const Error&) {
    out.ok = false;
  }
  return out;
}

struct MeanSe {
  Vector mean;
  Vector se;
};

MeanSe mean_and_se(const std::vector<Vector>& rows, std::size_t d) {
  const double m = static_cast<double>(rows.size());
  MeanSe out{Vector(d, 0.0), Vector(d, 0.0)};
  for (std::size_t c = 0; c < d; ++c) {
    CompensatedSum s;
    for (const Vector& r : rows) s.add(r[c]);
    out.mean[c] = s.value() / m;
    CompensatedSum ss;
    for (const Vector& r : rows) {
      const double dev = r[c] - out.mean[c];
      ss.add(dev * dev);
    }
    const double var = rows.size() > 1 ? ss.value() / (m - 1.0) : 0.0;
    out.se[c] = std::sqrt(var / m);
  }
  return out;
}

EstimatorStats summarise(const std::vector<Vector>& est, const Vector& theta0, std::size_t n) {
  const std::size_t d = theta0.size();
  const double m = static_cast<double>(est.size());
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  EstimatorStats s;
  const MeanSe ms = mean_and_se(est, d);
  s.mean = ms.mean;
  s.mean_se = ms.se;
  s.bias = s.mean - std::span<const double>(theta0);

  s.scaled_cov = Matrix(d, d);
  s.scaled_cov_se = Matrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Vector> products;
      products.reserve(est.size());
      for (const Vector& e : est)
        products.push_back({sqrt_n * (e[i] - s.mean[i]) * sqrt_n * (e[j] - s.mean[j])});
      const MeanSe p = mean_and_se(products, 1);
      s.scaled_cov(i, j) = p.mean[0] * m / (m - 1.0);
      s.scaled_cov_se(i, j) = p.se[0];
    }

  s.rmse.assign(d, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    CompensatedSum sq;
    for (const Vector& e : est) sq.add((e[c] - theta0[c]) * (e[c] - theta0[c]));
    s.rmse[c] = std::sqrt(sq.value() / m);
  }
  return s;
}

}  // namespace

std::size_t resolve_worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MML_ESTIM_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SimReport run_sim(const SimConfig& cfg) {
  if (!cfg.model) throw ConfigError("run_sim: no model");
  cfg.model->check_theta(cfg.theta0.values());
  if (cfg.n < cfg.model->dim() + 1) throw ConfigError("run_sim: n must be at least d+1");
  if (cfg.replicates < 2) throw ConfigError("run_sim: need at least 2 replicates");

  std::vector<Replicate> results(cfg.replicates);
  const std::size_t workers = std::min(resolve_worker_count(cfg.threads), cfg.replicates);
  if (workers <= 1) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) results[r] = run_replicate(cfg, r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < cfg.replicates; r = next++) results[r] = run_replicate(cfg, r);
      });
  }

  SimReport rep;
  rep.model = std::string(cfg.model->name());
  rep.prior = cfg.prior.name;
  rep.theta0.assign(cfg.theta0.values().begin(), cfg.theta0.values().end());
  rep.n = cfg.n;
  rep.replicates = cfg.replicates;
  rep.seed = cfg.seed;

  std::vector<Vector> mle, wf, shift;
  for (const Replicate& r : results) {
    if (!r.ok) {
      ++rep.failures;
      continue;
    }
    mle.push_back(r.mle);
    wf.push_back(r.wf);
    shift.push_back(r.wf - std::span<const double>(r.mle));
  }
  rep.used = mle.size();
  if (static_cast<double>(rep.failures) > 0.01 * static_cast<double>(cfg.replicates) || rep.used < 2) {
    std::ostringstream os;
    os << rep.failures << " of " << cfg.replicates << " replicates failed to converge";
    throw TooManyFailures(os.str());
  }

  rep.mle = summarise(mle, rep.theta0, cfg.n);
  rep.wf = summarise(wf, rep.theta0, cfg.n);
  const MeanSe sh = mean_and_se(shift, rep.theta0.size());
  rep.shift_mean = sh.mean;
  rep.shift_se = sh.se;
  return rep;
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

SweepTable consistency_sweep(const SimConfig& base, std::span<const std::size_t> n_grid) {
  if (n_grid.size() < 2) throw ConfigError("consistency_sweep: need at least two sample sizes");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw ConfigError("consistency_sweep: n grid must be increasing");

  SweepTable t;
  for (std::size_t n : n_grid) {
    SimConfig cfg = base;
    cfg.n = n;
    const SimReport rep = run_sim(cfg);
    t.rows.push_back({n, rep.mle.rmse, rep.wf.rmse, rep.mle.bias, rep.wf.bias, rep.mle.mean_se,
                      rep.wf.mean_se, rep.failures});
  }
  const std::size_t d = base.theta0.dim();
  Vector logn;
  for (std::size_t n : n_grid) logn.push_back(std::log(static_cast<double>(n)));
  t.slope_mle.assign(d, 0.0);
  t.slope_wf.assign(d, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    Vector lm, lw;
    for (const SweepRow& r : t.rows) {
      lm.push_back(std::log(r.rmse_mle[c]));
      lw.push_back(std::log(r.rmse_wf[c]));
    }
    t.slope_mle[c] = fitted_slope(logn, lm);
    t.slope_wf[c] = fitted_slope(logn, lw);
  }
  return t;
}

std::vector<ShiftRow> shift_scaling_check(const SimConfig& base, std::span<const std::size_t> n_grid) {
  const Vector theory = predicted_shift(*base.model, base.prior, base.theta0.values(), 1);
  std::vector<ShiftRow> rows;
  for (std::size_t n : n_grid) {
    SimConfig cfg = base;
    cfg.n = n;
    const SimReport rep = run_sim(cfg);
    ShiftRow row;
    row.n = n;
    row.theory = theory;
    const double nn = static_cast<double>(n);
    for (std::size_t c = 0; c < theory.size(); ++c) {
      row.scaled_shift.push_back(nn * rep.shift_mean[c]);
      row.scaled_shift_se.push_back(nn * rep.shift_se[c]);
      const double se = row.scaled_shift_se.back();
      row.z.push_back(se > 0.0 ? (row.scaled_shift.back() - theory[c]) / se : 0.0);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mml
