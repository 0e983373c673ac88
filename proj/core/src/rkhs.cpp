#include "gramframe/rkhs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gramframe/error.hpp"

namespace gramframe {

Vector eval_l(const VectorSystem& sys, double t, std::size_t N) {
  if (!sys.is_pointwise()) {
    throw Error(ErrorCode::NotPointwise,
                std::string(to_string(sys.kind())) + " systems have no pointwise representation");
  }
  Vector out(N);
  for (std::size_t n = 0; n < N; ++n) out[n] = sys.evaluate(n, t);
  return out;
}

PointwiseL2Diagnostic check_pointwise_l2(const VectorSystem& sys, double t, const std::vector<std::size_t>& truncations,
                                         double rel_tol) {
  PointwiseL2Diagnostic out;
  out.t = t;
  out.rel_tol = rel_tol;
  const auto size = sys.size();
  std::size_t n = 0;
  double sum = 0.0;
  for (std::size_t trunc : truncations) {
    const std::size_t limit = size ? std::min(trunc, *size) : trunc;
    for (; n < limit; ++n) {
      const double v = sys.evaluate(n, t);
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

namespace {

VectorSystem require_pointwise(VectorSystem sys) {
  if (!sys.is_pointwise()) {
    throw Error(ErrorCode::NotPointwise,
                std::string(to_string(sys.kind())) + " systems have no pointwise representation");
  }
  return sys;
}

}  // namespace

RkhsKernel::RkhsKernel(VectorSystem sys, std::size_t N, double rank_tol)
    : sys_(require_pointwise(std::move(sys))),
      gramian_(build_gramian(sys_, N)),
      spectrum_(eig_sym(gramian_.matrix)),
      pinv_(pseudo_inverse(spectrum_, rank_tol)),
      rank_tol_(rank_tol) {}

double RkhsKernel::condition_number() const noexcept {
  for (double lambda : spectrum_.eigenvalues)
    if (lambda > pinv_.cutoff) return spectrum_.max_abs_eigenvalue() / lambda;
  return std::numeric_limits<double>::infinity();
}

double kernel_eval(const RkhsKernel& k, double s, double t) {
  const Vector ls = k.l(s);
  const Vector lt = k.l(t);
  return 0.5 * (k.pinv().matrix.bilinear(ls, lt) + k.pinv().matrix.bilinear(lt, ls));
}

double kernel_eval_parseval(const RkhsKernel& k, double s, double t) {
  const SymMatrix root =
      apply_spectral_function(k.spectrum(), [](double lambda) { return 1.0 / std::sqrt(lambda); }, k.rank_tol());
  return dot(root.apply(k.l(s)), root.apply(k.l(t)));
}

SymMatrix kernel_matrix(const RkhsKernel& k, std::span<const double> points) {
  const std::size_t m = points.size();
  if (m == 0) throw Error(ErrorCode::ShapeError, "kernel matrix needs at least one point");
  std::vector<Vector> ls;
  std::vector<Vector> pls;
  ls.reserve(m);
  pls.reserve(m);
  for (double t : points) {
    ls.push_back(k.l(t));
    pls.push_back(k.pinv().matrix.apply(ls.back()));
  }
  Matrix out(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double v = 0.5 * (dot(ls[i], pls[j]) + dot(ls[j], pls[i]));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return SymMatrix(std::move(out));
}

ReproducingReport reproducing_check(const RkhsKernel& k, std::span<const double> xi, std::span<const double> points,
                                    double tol) {
  if (xi.size() != k.truncation()) {
    throw Error(ErrorCode::ShapeError, "coefficient vector has length " + std::to_string(xi.size()) +
                                           ", truncation is " + std::to_string(k.truncation()));
  }
  ReproducingReport r;
  r.tol = tol;
  r.condition_number = k.condition_number();
  r.f_norm = std::sqrt(std::max(0.0, k.gramian().matrix.bilinear(xi, xi)));
  const Vector pinv_g_xi = k.pinv().matrix.apply(k.gramian().matrix.apply(xi));
  for (double t : points) {
    const Vector lt = k.l(t);
    const double value = dot(lt, xi);
    const double reproduced = dot(lt, pinv_g_xi);
    r.points.push_back(t);
    r.values.push_back(value);
    r.reproduced.push_back(reproduced);
    r.residuals.push_back(std::abs(value - reproduced));
    r.max_residual = std::max(r.max_residual, r.residuals.back());
  }
  r.pass = r.max_residual <= tol * r.f_norm;
  return r;
}

}  // namespace gramframe
