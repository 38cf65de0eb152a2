#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mml/model.hpp"
#include "mml/priors.hpp"

namespace mml {

struct SimConfig {
  ModelPtr model;
  PriorSpec prior;
  ParamPoint theta0;
  std::size_t n = 100;
  std::size_t replicates = 1000;
  std::uint64_t seed = 1;
  /// Worker threads; 0 defers to MML_ESTIM_THREADS, then to the hardware.
  std::size_t threads = 0;
};

struct EstimatorStats {
  Vector mean;
  Vector mean_se;
  Vector bias;             ///< mean − θ₀; its SE equals mean_se
  Matrix scaled_cov;       ///< sample covariance of √n(θ̂ − θ₀)
  Matrix scaled_cov_se;
  Vector rmse;
};

struct SimReport {
  std::string model;
  std::string prior;
  Vector theta0;
  std::size_t n = 0;
  std::size_t replicates = 0;  ///< configured
  std::uint64_t seed = 0;
  std::size_t used = 0;        ///< replicates where both fits converged
  std::size_t failures = 0;
  EstimatorStats mle;
  EstimatorStats wf;
  Vector shift_mean;  ///< mean of θ̂_WF − θ̂_MLE
  Vector shift_se;
};

/// Worker count for a request: explicit value, else MML_ESTIM_THREADS, else
/// std::thread::hardware_concurrency(). Never below 1.
std::size_t resolve_worker_count(std::size_t requested);

/// Replicate r draws its data from RngStream(seed, r), fits both estimators
/// and contributes to the report. Results are reduced in replicate order, so
/// the report does not depend on the worker count. Non-converged replicates
/// are excluded and counted; more than 1% of them raises TooManyFailures.
SimReport run_sim(const SimConfig& cfg);

struct SweepRow {
  std::size_t n = 0;
  Vector rmse_mle, rmse_wf;
  Vector bias_mle, bias_wf;
  Vector bias_se_mle, bias_se_wf;
  std::size_t failures = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  Vector slope_mle;  ///< least-squares slope of log RMSE on log n, per coordinate
  Vector slope_wf;
};

SweepTable consistency_sweep(const SimConfig& base, std::span<const std::size_t> n_grid);

struct ShiftRow {
  std::size_t n = 0;
  Vector scaled_shift;     ///< n · mean(θ̂_WF − θ̂_MLE)
  Vector scaled_shift_se;  ///< n · SE
  Vector theory;           ///< I(θ₀)⁻¹ a(θ₀)
  Vector z;                ///< (scaled_shift − theory) / scaled_shift_se
};

std::vector<ShiftRow> shift_scaling_check(const SimConfig& base, std::span<const std::size_t> n_grid);

/// Least-squares slope of y on x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

}  // namespace mml
