#include "gramframe/gramian.hpp"

#include <algorithm>
#include <cmath>

#include "gramframe/error.hpp"
#include "gramframe/spectral.hpp"

namespace gramframe {
namespace {

Vector row_norms(const SymMatrix& m) {
  Vector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = norm(m.matrix().row(i));
  return out;
}

}  // namespace

Gramian Gramian::from_matrix(SymMatrix m, std::string system_id) {
  Vector l2 = row_norms(m);
  const std::size_t n = m.size();
  return Gramian{n, std::move(m), std::move(system_id), std::move(l2)};
}

Gramian build_gramian(const VectorSystem& sys, std::size_t N) {
  if (N == 0) throw Error(ErrorCode::ShapeError, "truncation N must be >= 1");
  if (auto size = sys.size(); size && N > *size) {
    throw Error(ErrorCode::IndexError,
                "truncation " + std::to_string(N) + " exceeds system size " + std::to_string(*size));
  }
  Matrix g(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i; j < N; ++j) {
      const double v = sys.inner_product(i, j);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidEntry,
                    "inner product <phi_" + std::to_string(i) + ", phi_" + std::to_string(j) + "> is not finite");
      }
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return Gramian::from_matrix(SymMatrix(std::move(g)), sys.id());
}

RowL2Diagnostic check_row_l2(const VectorSystem& sys, std::size_t row, const std::vector<std::size_t>& truncations,
                             double rel_tol) {
  RowL2Diagnostic out;
  out.row = row;
  out.rel_tol = rel_tol;
  const auto size = sys.size();
  std::size_t j = 0;
  double sum = 0.0;
  for (std::size_t t : truncations) {
    const std::size_t limit = size ? std::min(t, *size) : t;
    for (; j < limit; ++j) {
      const double v = sys.inner_product(j, row);
      sum += v * v;
    }
    out.truncations.push_back(limit);
    out.partial_sums.push_back(sum);
  }
  if (out.partial_sums.size() >= 2) {
    const double last = out.partial_sums.back();
    const double prev = out.partial_sums[out.partial_sums.size() - 2];
    out.cauchy_flag = std::abs(last - prev) <= rel_tol * std::abs(last);
  }
  return out;
}

PsdReport check_psd(const SymMatrix& m, double tol) {
  const SpectralDecomposition d = eig_sym(m);
  PsdReport r;
  r.tol = tol;
  r.min_eigenvalue = d.eigenvalues.front();
  r.max_eigenvalue = d.eigenvalues.back();
  r.is_psd = r.min_eigenvalue >= -tol * d.max_abs_eigenvalue();
  r.note = r.is_psd
               ? "truncation is PSD: no xi with G xi = -xi exists at this truncation (xi = 0 holds vacuously)"
               : "truncation is indefinite beyond tolerance: not a Gramian of real vectors";
  return r;
}

PsdReport check_psd(const Gramian& g, double tol) { return check_psd(g.matrix, tol); }

std::string_view to_string(CarlemanVerdict v) noexcept {
  return v == CarlemanVerdict::SufficientConditionMet ? "sufficient-condition-met" : "inconclusive";
}

SelfAdjointnessReport carleman_from_row_sums(Vector b_values) {
  const std::size_t n = b_values.size();
  if (n < 3) throw Error(ErrorCode::ShapeError, "the row-sum test needs N >= 3");
  SelfAdjointnessReport r;
  r.partial_sums.resize(n);
  double sum = 0.0;
  std::size_t coupled_in_tail = 0;
  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (b_values[i] > 0.0) {
      const double term = 1.0 / std::sqrt(b_values[i]);
      sum += term;
      if (i >= n / 2) {
        tail += term;
        ++coupled_in_tail;
      }
    } else {
      ++r.excluded_rows;
    }
    r.partial_sums[i] = sum;
  }
  r.tail_growth = tail;
  r.threshold = kCarlemanGrowthConstant * std::log(static_cast<double>(n));
  // Uncoupled rows are diagonal blocks of the operator; nothing to test there.
  r.verdict = (coupled_in_tail == 0 || tail >= r.threshold) ? CarlemanVerdict::SufficientConditionMet
                                                            : CarlemanVerdict::Inconclusive;
  r.b_values = std::move(b_values);
  return r;
}

SelfAdjointnessReport check_carleman(const Gramian& g) {
  const std::size_t n = g.matrix.size();
  if (n < 3) throw Error(ErrorCode::ShapeError, "the row-sum test needs N >= 3");
  Vector b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) b[i] += std::abs(g.matrix(i, j));
  SelfAdjointnessReport r = carleman_from_row_sums(std::move(b));
  r.psd_min_eigenvalue = eig_sym(g.matrix).eigenvalues.front();
  return r;
}

}  // namespace gramframe
