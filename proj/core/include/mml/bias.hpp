#pragma once

#include "mml/model.hpp"
#include "mml/priors.hpp"

namespace mml {

/// Per-observation log-likelihood cumulants at θ.
struct CumulantSet {
  Matrix kappa2;        ///< κ_ij = E[ℓ_ij]
  Tensor3 kappa3;       ///< κ_ijl = E[ℓ_ijl]
  Tensor3 kappa2_grad;  ///< κ_ij^(l) = ∂κ_ij/∂θ_l, index order (i, j, l)
  /// d × d² matrix [A⁽¹⁾ | … | A⁽ᵈ⁾] with A⁽ˡ⁾(i, j) = κ_ij^(l) − ½κ_ijl,
  /// i.e. A_bar(i, l·d + j).
  Matrix a_bar;
};

/// κ_ij and κ_ijl by quadrature of the analytic ℓ_ij and ℓ_ijl; κ_ij^(l) by
/// central differences of −I(θ). Throws QuadratureNotConverged, or
/// SymmetryViolation if κ_ijl departs from permutation symmetry by > 1e-5.
CumulantSet compute_cumulants(const ModelSpec& model, std::span<const double> theta);

/// Assembles Ā from κ^(l) and κ_ijl.
Matrix assemble_a_bar(const Tensor3& kappa2_grad, const Tensor3& kappa3);

/// Cox–Snell first-order MLE bias in matrix form.
///
/// With full-sample K = nI and A = nĀ, K⁻¹ A vec(K⁻¹) collapses to
/// (1/n) I⁻¹ Ā vec(I⁻¹), which is what is evaluated here.
Vector cox_snell_bias(const ModelSpec& model, std::span<const double> theta, std::size_t n);
Vector cox_snell_bias(const CumulantSet& cumulants, const Matrix& fisher, std::size_t n);

/// The same bias via the explicit triple sum
/// Σ_{i,j,l} κ^{si} κ^{jl} (κ_ij^(l) − ½κ_ijl). Kept as an independent check
/// of the vec/block layout in the matrix form.
Vector cox_snell_bias_summation(const CumulantSet& cumulants, const Matrix& fisher, std::size_t n);

/// Wallace–Freeman first-order bias: Cox–Snell bias + (1/n) I⁻¹ a(θ).
Vector wf_bias(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta, std::size_t n);

}  // namespace mml
