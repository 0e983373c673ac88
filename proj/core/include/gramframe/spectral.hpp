#pragma once

#include <cstddef>
#include <functional>

#include "gramframe/matrix.hpp"

namespace gramframe {

/// Eigendecomposition A = V diag(λ) Vᵀ of a real symmetric matrix.
///
/// Eigenvalues are ascending. Column k of `eigenvectors` pairs with
/// `eigenvalues[k]`. Inside a numerically degenerate cluster the individual
/// vectors are arbitrary; only the span of the cluster is meaningful.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
  std::size_t sweeps = 0;
  /// Off-diagonal Frobenius norm left when the Jacobi iteration stopped.
  double off_diagonal_residual = 0.0;
  /// max |VᵀV − I|, measured after the final re-orthonormalization.
  double ortho_error = 0.0;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  Vector eigenvector(std::size_t k) const { return eigenvectors.column(k); }
  double max_abs_eigenvalue() const noexcept;
};

struct EigOptions {
  /// Converged once off(A)_F <= tol * ‖A‖_F.
  double tol = 1e-14;
  int max_sweeps = 100;
};

/// Cyclic Jacobi with a fixed row-by-row sweep order, so the result is
/// deterministic for a given input.
///
/// Throws InvalidMatrix on non-finite entries and ConvergenceFailure when
/// `max_sweeps` is exhausted (the message carries the off-diagonal residual).
SpectralDecomposition eig_sym(const SymMatrix& a, const EigOptions& options = {});

using ScalarFunction = std::function<double(double)>;

/// V diag(φ(λ)) Vᵀ.
///
/// Eigenvalues with |λ| <= eigen_cutoff·max|λ| are treated as exact zeros
/// (this clamps small negative roundoff on PSD inputs). They contribute φ(0)
/// when that is finite and are dropped otherwise, which gives pseudo-inverse
/// semantics to functions such as λ^{-1/2}. A non-finite φ(λ) on any other
/// eigenvalue throws SingularFunctionValue.
SymMatrix apply_spectral_function(const SpectralDecomposition& d, const ScalarFunction& fn,
                                  double eigen_cutoff = 0.0);

/// Spectral projector onto eigenvalues in [lo, hi].
SymMatrix spectral_projector(const SpectralDecomposition& d, double lo, double hi);

struct PseudoInverse {
  SymMatrix matrix;
  std::size_t rank = 0;
  double cutoff = 0.0;

  /// All eigenvalues fell below the cutoff; `matrix` is then the zero matrix.
  bool zero_operator() const noexcept { return rank == 0; }
};

/// Eigenvalues λ <= rank_tol·max|λ| map to 0, the rest to 1/λ.
PseudoInverse pseudo_inverse(const SpectralDecomposition& d, double rank_tol = 1e-12);

/// max |λ|
double operator_norm(const SpectralDecomposition& d);

/// Spectral norm by power iteration on A (no eigendecomposition involved).
/// Used as an independent cross-check of the Jacobi path.
double power_iteration_norm(const SymMatrix& a, double tol = 1e-14, std::size_t max_iterations = 100000);

}  // namespace gramframe
