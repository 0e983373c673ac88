#pragma once

#include <cstddef>
#include <vector>

#include "gramframe/gramian.hpp"
#include "gramframe/matrix.hpp"
#include "gramframe/spectral.hpp"
#include "gramframe/systems.hpp"

namespace gramframe {

/// l(t) = (φ₀(t), ..., φ_{N-1}(t)). Throws NotPointwise / OffGrid.
Vector eval_l(const VectorSystem& sys, double t, std::size_t N);

struct PointwiseL2Diagnostic {
  double t = 0.0;
  std::vector<std::size_t> truncations;
  Vector partial_sums;
  double rel_tol = 1e-6;
  bool cauchy_flag = false;
};

/// Partial sums of Σₙ |φₙ(t)|², clipped to the size of finite systems.
PointwiseL2Diagnostic check_pointwise_l2(const VectorSystem& sys, double t, const std::vector<std::size_t>& truncations,
                                         double rel_tol = 1e-6);

/// K(s, t) = l(s)ᵀ G⁺ l(t) on a truncation of a pointwise system.
///
/// K_t is never built as an element of ℋ: every pairing reduces to finite
/// matrix algebra on G, l(t) and coefficient vectors. The system is copied
/// in, so the kernel owns everything it evaluates.
class RkhsKernel {
 public:
  /// Throws NotPointwise for kernel/covariance systems.
  RkhsKernel(VectorSystem sys, std::size_t N, double rank_tol = 1e-12);

  const VectorSystem& system() const noexcept { return sys_; }
  const Gramian& gramian() const noexcept { return gramian_; }
  const PseudoInverse& pinv() const noexcept { return pinv_; }
  const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
  std::size_t truncation() const noexcept { return gramian_.N; }
  double rank_tol() const noexcept { return rank_tol_; }
  /// λ_max / smallest eigenvalue above the rank cutoff.
  double condition_number() const noexcept;

  Vector l(double t) const { return eval_l(sys_, t, gramian_.N); }

 private:
  VectorSystem sys_;
  Gramian gramian_;
  SpectralDecomposition spectrum_;
  PseudoInverse pinv_;
  double rank_tol_;
};

/// l(s)ᵀ G⁺ l(t), averaged with the (t, s) order so it is exactly symmetric.
double kernel_eval(const RkhsKernel& k, double s, double t);

/// Σₙ ψₙ(s) ψₙ(t) with ψₙ(t) = (G^{-1/2} l(t))ₙ; the Parseval-frame form of
/// the same kernel, computed through a separate square-root path.
double kernel_eval_parseval(const RkhsKernel& k, double s, double t);

/// K(tᵢ, tⱼ) on a point set.
SymMatrix kernel_matrix(const RkhsKernel& k, std::span<const double> points);

struct ReproducingReport {
  Vector points;
  Vector values;       ///< f(t) = Σ ξₙ φₙ(t)
  Vector reproduced;   ///< ⟨K_t, f⟩ = l(t)ᵀ G⁺ G ξ
  Vector residuals;
  double max_residual = 0.0;
  double f_norm = 0.0;
  double tol = 0.0;
  double condition_number = 0.0;
  bool pass = false;
};

/// Residuals |f(t) − ⟨K_t, f⟩| for f = Σ ξₙ φₙ; passes iff the largest is
/// at most tol·‖f‖_ℋ.
ReproducingReport reproducing_check(const RkhsKernel& k, std::span<const double> xi, std::span<const double> points,
                                    double tol);

}  // namespace gramframe
