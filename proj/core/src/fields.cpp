#include "gramframe/fields.hpp"

#include <cmath>
#include <string>

#include "format.hpp"
#include "gramframe/error.hpp"
#include "gramframe/random.hpp"
#include "gramframe/spectral.hpp"

namespace gramframe {

RandomFieldModel make_field_model(const SymMatrix& covariance, std::uint64_t seed, double psd_tol) {
  const SpectralDecomposition d = eig_sym(covariance);
  const double lambda_min = d.eigenvalues.front();
  if (lambda_min < -psd_tol * d.max_abs_eigenvalue()) {
    throw Error(ErrorCode::NotPositiveSemidefinite,
                "covariance has eigenvalue " + std::to_string(lambda_min) + " below the PSD tolerance");
  }
  SymMatrix factor = apply_spectral_function(d, [](double lambda) { return std::sqrt(lambda); }, psd_tol);
  return RandomFieldModel{covariance, std::move(factor), seed};
}

RandomFrameDiagnostic check_random_frame(const SymMatrix& covariance, double psd_tol) {
  RandomFrameDiagnostic out;
  out.row_l2.resize(covariance.size());
  bool finite = true;
  for (std::size_t x = 0; x < covariance.size(); ++x) {
    out.row_l2[x] = norm(covariance.matrix().row(x));
    finite = finite && std::isfinite(out.row_l2[x]);
  }
  out.psd = check_psd(covariance, psd_tol);
  out.pass = finite && out.psd.is_psd;
  return out;
}

Matrix sample_field(const RandomFieldModel& model, std::size_t M) {
  if (M == 0) throw Error(ErrorCode::ShapeError, "sample count must be >= 1");
  const std::size_t v = model.vertex_count();
  Matrix out(M, v);
  Vector z(v);
  for (std::size_t m = 0; m < M; ++m) {
    NormalSampler normal(derive_seed(model.seed, m));
    for (double& zi : z) zi = normal();
    const Vector row = model.factor.apply(z);
    std::copy(row.begin(), row.end(), out.row(m).begin());
  }
  return out;
}

SymMatrix empirical_gramian(const Matrix& samples) {
  const std::size_t M = samples.rows();
  if (M < 2) throw Error(ErrorCode::ShapeError, "empirical Gramian needs at least 2 samples");
  const std::size_t v = samples.cols();
  Matrix c(v, v);
  for (std::size_t m = 0; m < M; ++m) {
    const auto s = samples.row(m);
    for (std::size_t x = 0; x < v; ++x)
      for (std::size_t y = x; y < v; ++y) c(x, y) += s[x] * s[y];
  }
  const double inv = 1.0 / static_cast<double>(M);
  for (std::size_t x = 0; x < v; ++x) {
    for (std::size_t y = x; y < v; ++y) {
      c(x, y) *= inv;
      c(y, x) = c(x, y);
    }
  }
  return SymMatrix(std::move(c));
}

Vector generalized_frame_operator_apply(const SymMatrix& covariance, std::span<const double> c) {
  if (c.size() != covariance.size()) {
    throw Error(ErrorCode::ShapeError, "coefficient vector has length " + std::to_string(c.size()) +
                                           ", field has " + std::to_string(covariance.size()) + " vertices");
  }
  return covariance.apply(c);
}

BandEstimateReport band_estimate_check(const SymMatrix& covariance, double a, double b,
                                       const std::vector<Vector>& c_vectors, double tol) {
  if (!(a > 0.0) || !(b >= a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidInterval,
                "band needs 0 < a <= b < inf, got [" + detail::num(a) + ", " + detail::num(b) + "]");
  }
  const SpectralDecomposition d = eig_sym(covariance);
  const double slack = 1e-12 * d.max_abs_eigenvalue();
  const SymMatrix projector = spectral_projector(d, a - slack, b + slack);

  BandEstimateReport r;
  r.a = a;
  r.b = b;
  r.tol = tol;
  for (std::size_t i = 0; i < c_vectors.size(); ++i) {
    const Vector& c = c_vectors[i];
    const Vector cc = generalized_frame_operator_apply(covariance, c);
    const Vector pc = projector.apply(c);
    double resid = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x) resid += (c[x] - pc[x]) * (c[x] - pc[x]);
    resid = std::sqrt(resid);
    if (resid > tol * norm(c)) {
      throw Error(ErrorCode::BandMembershipError, "vector " + std::to_string(i) + " leaves the band subspace by " +
                                                      detail::num(resid));
    }
    BandEstimateEntry e;
    e.membership_residual = resid;
    e.energy = dot(c, cc);
    e.response = dot(cc, cc);
    e.lower = a * e.energy;
    e.upper = b * e.energy;
    const double slack_abs = tol * std::abs(e.energy);
    e.holds = e.lower - slack_abs <= e.response && e.response <= e.upper + slack_abs;
    r.pass = r.pass && e.holds;
    r.entries.push_back(e);
  }
  return r;
}

MonteCarloEstimate band_estimate_monte_carlo(const RandomFieldModel& model, std::span<const double> c, std::size_t M) {
  const Matrix samples = sample_field(model, M);
  const std::size_t v = model.vertex_count();
  if (c.size() != v) throw Error(ErrorCode::ShapeError, "coefficient vector length does not match the field");

  MonteCarloEstimate out;
  out.samples = M;
  const Vector cc = model.covariance.apply(c);
  out.energy_exact = dot(c, cc);
  out.response_exact = dot(cc, cc);

  Vector cross(v, 0.0);
  double energy = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const auto s = samples.row(m);
    const double f = dot(s, c);
    energy += f * f;
    for (std::size_t x = 0; x < v; ++x) cross[x] += s[x] * f;
  }
  const double inv = 1.0 / static_cast<double>(M);
  out.energy_empirical = energy * inv;
  for (double& x : cross) x *= inv;
  out.response_empirical = dot(cross, cross);

  auto rel = [](double est, double exact) {
    return exact == 0.0 ? std::abs(est) : std::abs(est - exact) / std::abs(exact);
  };
  out.relative_deviation =
      std::max(rel(out.energy_empirical, out.energy_exact), rel(out.response_empirical, out.response_exact));
  out.tolerance = 10.0 / std::sqrt(static_cast<double>(M));
  out.within_tolerance = out.relative_deviation <= out.tolerance;
  return out;
}

}  // namespace gramframe
