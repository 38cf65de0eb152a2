#pragma once

#include <vector>

#include "mml/model.hpp"
#include "mml/priors.hpp"

namespace mml {

struct KappaConstant {
  double value = 0.0;
  bool approximate = false;  ///< true for d >= 4 (large-d approximation)
};

/// Normalised second moment κ_d of the optimal d-dimensional lattice
/// quantiser: exact for d ≤ 3, otherwise from
/// (d/2)(log κ_d + 1) ≈ −(d/2) log 2π + ½ log(dπ) − γ.
KappaConstant kappa_const(std::size_t d);

/// κ_d^{-d/2}; d ∈ {1, 2, 3}.
double optimal_cell_volume(std::size_t d);

/// Wallace–Freeman message length in nats, split into its two parts.
struct CodelengthReport {
  double total = 0.0;
  double assertion_part = 0.0;  ///< −log π(θ) + ½ log|nI(θ)| + (d/2) log κ_d
  double detail_part = 0.0;     ///< −log p(x|θ) + d/2
  double bic_form = 0.0;        ///< −log p(x|θ) + (d/2) log n
  double gap = 0.0;             ///< total − bic_form
  /// Improper prior: lengths are defined only up to an additive constant.
  bool up_to_constant = false;
  /// κ_d came from the large-d approximation.
  bool approximate_kappa = false;
};

CodelengthReport message_length(const ModelSpec& model, const PriorSpec& prior, const DataSet& data,
                                std::span<const double> theta);

/// Converts every length in a report from nats to bits.
CodelengthReport to_bits(CodelengthReport report);

struct GapPoint {
  std::size_t n = 0;
  double gap = 0.0;
  Vector theta_hat;
};

/// For each n in sizes, refits the Wallace–Freeman estimate on the first n
/// observations of data and records total − [−log p + (d/2) log n].
std::vector<GapPoint> bic_gap_profile(const ModelSpec& model, const PriorSpec& prior, const DataSet& data,
                                      std::span<const std::size_t> sizes);

}  // namespace mml
