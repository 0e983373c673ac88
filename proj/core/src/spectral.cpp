#include "gramframe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "format.hpp"
#include "gramframe/error.hpp"

namespace gramframe {
namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    const double nkp = c * akp - s * akq;
    const double nkq = s * akp + c * akq;
    a(k, p) = nkp;
    a(p, k) = nkp;
    a(k, q) = nkq;
    a(q, k) = nkq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

// Modified Gram-Schmidt over columns [begin, end), in index order, two passes.
void reorthonormalize(Matrix& v, std::size_t begin, std::size_t end) {
  const std::size_t n = v.rows();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t j = begin; j < k; ++j) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += v(i, j) * v(i, k);
        for (std::size_t i = 0; i < n; ++i) v(i, k) -= proj * v(i, j);
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < n; ++i) nrm += v(i, k) * v(i, k);
      nrm = std::sqrt(nrm);
      for (std::size_t i = 0; i < n; ++i) v(i, k) /= nrm;
    }
  }
}

// Largest-magnitude component positive (first one wins ties).
void normalize_sign(Matrix& v, std::size_t k) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.rows(); ++i)
    if (std::abs(v(i, k)) > std::abs(v(best, k))) best = i;
  if (v(best, k) < 0.0)
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, k) = -v(i, k);
}

// Accumulated rotation roundoff grows with the sweep count. Refinement:
// form B = Vᵀ A V in extended precision, annihilate its (tiny) off-diagonal
// part with further rotations Q, and take V Q with Rayleigh-quotient
// eigenvalues. This brings V diag(λ) Vᵀ back to O(ε‖A‖) of A.
void refine(const Matrix& a, SpectralDecomposition& d) {
  const std::size_t n = a.rows();
  if (n < 2) return;
  Matrix& v = d.eigenvectors;
  reorthonormalize(v, 0, n);

  std::vector<long double> av(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      long double s = 0.0L;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<long double>(a(i, j)) * v(j, k);
      av[i * n + k] = s;
    }
  Matrix b(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k; l < n; ++l) {
      long double s = 0.0L;
      for (std::size_t i = 0; i < n; ++i) s += static_cast<long double>(v(i, k)) * av[i * n + l];
      b(k, l) = b(l, k) = static_cast<double>(s);
    }

  Matrix q = Matrix::identity(n);
  for (int sweep = 0; sweep < 3; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r)
        if (b(p, r) != 0.0) {
          rotate(b, q, p, r);
          rotated = true;
        }
    if (!rotated) break;
  }

  Matrix refined(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      // V (Q − I) + V, accumulated so the small correction is not lost.
      long double s = 0.0L;
      for (std::size_t j = 0; j < n; ++j)
        s += static_cast<long double>(v(i, j)) * (q(j, k) - (j == k ? 1.0 : 0.0));
      refined(i, k) = static_cast<double>(s + v(i, k));
    }
  v = std::move(refined);
  reorthonormalize(v, 0, n);

  for (std::size_t k = 0; k < n; ++k) {
    long double rq = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      long double row = 0.0L;
      for (std::size_t j = 0; j < n; ++j) row += static_cast<long double>(a(i, j)) * v(j, k);
      rq += row * static_cast<long double>(v(i, k));
    }
    d.eigenvalues[k] = static_cast<double>(rq);
  }

  // Refined values can swap neighbours that differ at roundoff level.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return d.eigenvalues[i] < d.eigenvalues[j]; });
  if (std::is_sorted(d.eigenvalues.begin(), d.eigenvalues.end())) return;
  Vector values(n);
  Matrix vectors(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = d.eigenvalues[order[k]];
    for (std::size_t i = 0; i < n; ++i) vectors(i, k) = d.eigenvectors(i, order[k]);
  }
  d.eigenvalues = std::move(values);
  d.eigenvectors = std::move(vectors);
}

double orthonormality_error(const Matrix& v) {
  double worst = 0.0;
  for (std::size_t a = 0; a < v.cols(); ++a) {
    for (std::size_t b = a; b < v.cols(); ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < v.rows(); ++i) s += v(i, a) * v(i, b);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

SymMatrix assemble(const SpectralDecomposition& d, const Vector& weights) {
  const std::size_t n = d.dim();
  const Matrix& v = d.eigenvectors;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      long double s = 0.0L;
      for (std::size_t k = 0; k < n; ++k)
        if (weights[k] != 0.0) s += static_cast<long double>(v(i, k)) * weights[k] * v(j, k);
      out(i, j) = static_cast<double>(s);
      out(j, i) = static_cast<double>(s);
    }
  }
  return SymMatrix(std::move(out));
}

}  // namespace

double SpectralDecomposition::max_abs_eigenvalue() const noexcept {
  double m = 0.0;
  for (double l : eigenvalues) m = std::max(m, std::abs(l));
  return m;
}

SpectralDecomposition eig_sym(const SymMatrix& input, const EigOptions& options) {
  const std::size_t n = input.size();
  for (double x : input.matrix().data())
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidMatrix, "matrix has a non-finite entry");

  Matrix a = input.matrix();
  Matrix v = Matrix::identity(n);
  const double scale = frobenius_norm(a);

  SpectralDecomposition out;
  double off = off_diagonal_norm(a);
  std::size_t sweep = 0;
  while (off > options.tol * scale) {
    if (sweep == static_cast<std::size_t>(options.max_sweeps)) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "Jacobi did not converge in " + std::to_string(options.max_sweeps) +
                      " sweeps; off-diagonal residual " + std::to_string(off));
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (a(p, q) != 0.0) rotate(a, v, p, q);
    ++sweep;
    off = off_diagonal_norm(a);
  }
  out.sweeps = sweep;
  out.off_diagonal_residual = off;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }

  // Degenerate clusters: gap relative to the spectral scale.
  const double cluster_gap = 1e-12 * std::max(out.max_abs_eigenvalue(), 1e-300);
  std::size_t begin = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == n || out.eigenvalues[k] - out.eigenvalues[k - 1] > cluster_gap) {
      if (k - begin > 1) reorthonormalize(out.eigenvectors, begin, k);
      begin = k;
    }
  }
  refine(input.matrix(), out);
  for (std::size_t k = 0; k < n; ++k) normalize_sign(out.eigenvectors, k);
  out.ortho_error = orthonormality_error(out.eigenvectors);
  return out;
}

SymMatrix apply_spectral_function(const SpectralDecomposition& d, const ScalarFunction& fn, double eigen_cutoff) {
  const double cutoff = eigen_cutoff * d.max_abs_eigenvalue();
  Vector weights(d.dim(), 0.0);
  for (std::size_t k = 0; k < d.dim(); ++k) {
    const double lambda = d.eigenvalues[k];
    if (eigen_cutoff > 0.0 && std::abs(lambda) <= cutoff) {
      const double at_zero = fn(0.0);
      weights[k] = std::isfinite(at_zero) ? at_zero : 0.0;
      continue;
    }
    const double value = fn(lambda);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::SingularFunctionValue,
                  "function is not finite at retained eigenvalue " + detail::num(lambda));
    }
    weights[k] = value;
  }
  return assemble(d, weights);
}

SymMatrix spectral_projector(const SpectralDecomposition& d, double lo, double hi) {
  Vector weights(d.dim(), 0.0);
  for (std::size_t k = 0; k < d.dim(); ++k)
    weights[k] = (d.eigenvalues[k] >= lo && d.eigenvalues[k] <= hi) ? 1.0 : 0.0;
  return assemble(d, weights);
}

PseudoInverse pseudo_inverse(const SpectralDecomposition& d, double rank_tol) {
  if (!(rank_tol > 0.0)) throw Error(ErrorCode::InvalidEntry, "rank_tol must be positive");
  const double cutoff = rank_tol * d.max_abs_eigenvalue();
  Vector weights(d.dim(), 0.0);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < d.dim(); ++k) {
    if (d.eigenvalues[k] > cutoff) {
      weights[k] = 1.0 / d.eigenvalues[k];
      ++rank;
    }
  }
  return PseudoInverse{assemble(d, weights), rank, cutoff};
}

double operator_norm(const SpectralDecomposition& d) { return d.max_abs_eigenvalue(); }

double power_iteration_norm(const SymMatrix& a, double tol, std::size_t max_iterations) {
  const std::size_t n = a.size();
  // Deterministic start with components of both signs, so it is not orthogonal
  // to the dominant eigenvector of typical test matrices.
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
  double nx = norm(x);
  for (double& xi : x) xi /= nx;

  double estimate = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    Vector y = a.apply(x);
    const double ny = norm(y);
    if (ny == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    if (std::abs(ny - estimate) <= tol * ny) return ny;
    estimate = ny;
  }
  return estimate;
}

}  // namespace gramframe
