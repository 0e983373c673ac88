#include "gramframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "format.hpp"
#include "gramframe/error.hpp"
#include "gramframe/random.hpp"

namespace gramframe {
namespace {

Vector padded_coefficients(const Gramian& g, const Vector& xi) {
  if (xi.size() > g.N) {
    throw Error(ErrorCode::ShapeError, "coefficient vector of length " + std::to_string(xi.size()) +
                                           " exceeds the truncation N = " + std::to_string(g.N));
  }
  Vector out(g.N, 0.0);
  std::copy(xi.begin(), xi.end(), out.begin());
  return out;
}

const ExplicitFinite& require_explicit(const VectorSystem& sys) {
  const auto* e = sys.as_explicit();
  if (e == nullptr) {
    throw Error(ErrorCode::RepresentationError,
                "ambient coordinates need an explicit system, got " + std::string(to_string(sys.kind())));
  }
  return *e;
}

double sum_of_squares(const Vector& v) { return dot(v, v); }

void scale(SpanVector& f, double factor) {
  for (double& x : f.values) x *= factor;
}

}  // namespace

Vector analysis(const Gramian& g, const VectorSystem& sys, const SpanVector& f) {
  if (f.representation == Representation::Coefficients) return g.matrix.apply(padded_coefficients(g, f.values));

  const auto& e = require_explicit(sys);
  if (f.values.size() != e.coordinates.cols()) {
    throw Error(ErrorCode::ShapeError, "ambient vector has length " + std::to_string(f.values.size()) +
                                           ", system dimension is " + std::to_string(e.coordinates.cols()));
  }
  if (g.N > e.coordinates.rows()) throw Error(ErrorCode::ShapeError, "Gramian is larger than the system");
  Vector out(g.N);
  for (std::size_t n = 0; n < g.N; ++n) out[n] = dot(e.coordinates.row(n), f.values);
  return out;
}

SpanVector synthesis(const VectorSystem& sys, std::span<const double> xi) {
  if (xi.empty()) throw Error(ErrorCode::ShapeError, "synthesis needs at least one coefficient");
  if (auto n = sys.size(); n && xi.size() > *n) {
    throw Error(ErrorCode::ShapeError, "coefficient vector of length " + std::to_string(xi.size()) +
                                           " exceeds system size " + std::to_string(*n));
  }
  if (const auto* e = sys.as_explicit()) {
    Vector x(e->coordinates.cols(), 0.0);
    for (std::size_t n = 0; n < xi.size(); ++n)
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += xi[n] * e->coordinates(n, k);
    return SpanVector::ambient(std::move(x));
  }
  return SpanVector::coefficients(Vector(xi.begin(), xi.end()));
}

double norm_squared(const Gramian& g, const VectorSystem& sys, const SpanVector& f) {
  if (f.representation == Representation::Coefficients) {
    const Vector xi = padded_coefficients(g, f.values);
    return g.matrix.bilinear(xi, xi);
  }
  require_explicit(sys);
  return sum_of_squares(f.values);
}

double frame_quotient(const Gramian& g, const VectorSystem& sys, const SpanVector& f) {
  return sum_of_squares(analysis(g, sys, f)) / norm_squared(g, sys, f);
}

SymMatrix frame_operator(const VectorSystem& sys, const Gramian& g) {
  const auto* e = sys.as_explicit();
  if (e == nullptr) return g.matrix;
  const std::size_t d = e->coordinates.cols();
  const std::size_t count = std::min(g.N, e->coordinates.rows());
  Matrix s(d, d);
  for (std::size_t n = 0; n < count; ++n) {
    const auto phi = e->coordinates.row(n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) s(i, j) += phi[i] * phi[j];
  }
  return SymMatrix(std::move(s));
}

FrameBand band_extract(const Gramian& g, double a, double b, const BandOptions& options) {
  if (!(a > 0.0) || !(b >= a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidInterval,
                "band needs 0 < a <= b < inf, got [" + detail::num(a) + ", " + detail::num(b) + "]");
  }
  return band_extract(eig_sym(g.matrix), a, b, options);
}

FrameBand band_extract(SpectralDecomposition spectrum, double a, double b, const BandOptions& options) {
  if (!(a > 0.0) || !(b >= a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidInterval,
                "band needs 0 < a <= b < inf, got [" + detail::num(a) + ", " + detail::num(b) + "]");
  }
  FrameBand band;
  band.a = a;
  band.b = b;
  const double scale = spectrum.max_abs_eigenvalue();
  band.endpoint_slack = options.band_eps * scale;
  band.rank_cutoff = options.rank_tol * scale;

  for (std::size_t k = 0; k < spectrum.dim(); ++k) {
    const double lambda = spectrum.eigenvalues[k];
    if (std::abs(lambda - a) <= band.endpoint_slack || std::abs(lambda - b) <= band.endpoint_slack)
      band.endpoint_sensitive.push_back(k);
    if (lambda <= band.rank_cutoff) continue;
    if (lambda < a - band.endpoint_slack || lambda > b + band.endpoint_slack) continue;

    band.selected.push_back(k);
    band.eigenvalues.push_back(lambda);
    Vector xi = spectrum.eigenvector(k);
    Vector basis = xi;
    const double inv_root = 1.0 / std::sqrt(lambda);
    for (double& x : basis) x *= inv_root;
    band.eigenvectors.push_back(std::move(xi));
    band.onb.push_back(std::move(basis));
  }
  if (!band.eigenvalues.empty()) {
    const auto [lo, hi] = std::minmax_element(band.eigenvalues.begin(), band.eigenvalues.end());
    band.attained = AttainedBounds{*lo, *hi};
  }
  band.spectrum = std::move(spectrum);
  return band;
}

std::vector<SpanVector> band_basis(const VectorSystem& sys, const FrameBand& band) {
  std::vector<SpanVector> out;
  out.reserve(band.onb.size());
  for (const Vector& xi : band.onb) out.push_back(synthesis(sys, xi));
  return out;
}

FrameBoundsReport verify_frame_bounds(const VectorSystem& sys, const Gramian& g, const FrameBand& band,
                                      std::size_t trials, std::uint64_t seed, double tol) {
  FrameBoundsReport r;
  r.tol = tol;
  r.attained = band.attained;
  if (band.empty()) return r;

  for (const SpanVector& f : band_basis(sys, band)) r.basis_quotients.push_back(frame_quotient(g, sys, f));

  r.min_quotient = std::numeric_limits<double>::infinity();
  r.max_quotient = -std::numeric_limits<double>::infinity();
  const std::size_t dim = band.dimension();
  for (std::size_t t = 0; t < trials; ++t) {
    NormalSampler normal(derive_seed(seed, t));
    Vector xi(g.N, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      const double c = normal();
      for (std::size_t i = 0; i < g.N; ++i) xi[i] += c * band.onb[k][i];
    }
    SpanVector f = synthesis(sys, xi);
    scale(f, 1.0 / std::sqrt(norm_squared(g, sys, f)));
    const double q = frame_quotient(g, sys, f);
    r.min_quotient = std::min(r.min_quotient, q);
    r.max_quotient = std::max(r.max_quotient, q);
    if (q < band.a - tol || q > band.b + tol) ++r.violations;
    ++r.trials_run;
  }
  for (double q : r.basis_quotients)
    if (q < band.a - tol || q > band.b + tol) ++r.violations;
  r.pass = r.violations == 0;
  return r;
}

MaximalityReport maximality_check(const Gramian& g, const FrameBand& band, double tol) {
  MaximalityReport r;
  r.tol = tol;
  const SpectralDecomposition& spec = band.spectrum;
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    if (std::binary_search(band.selected.begin(), band.selected.end(), k)) continue;
    if (spec.eigenvalues[k] <= band.rank_cutoff) {
      ++r.null_directions;
      continue;
    }
    const Vector xi = spec.eigenvector(k);
    const Vector response = g.matrix.apply(xi);
    MaximalityReport::Excluded ex;
    ex.index = k;
    ex.eigenvalue = spec.eigenvalues[k];
    ex.quotient = dot(response, response) / dot(xi, response);
    ex.violates = ex.quotient < band.a - tol || ex.quotient > band.b + tol;
    r.confirmed = r.confirmed && ex.violates;
    r.excluded.push_back(ex);
  }
  return r;
}

namespace {

double check_conditioning(const SpectralDecomposition& d, const ParsevalOptions& options, std::size_t& rank,
                          double& upper) {
  const double scale = d.max_abs_eigenvalue();
  const double cutoff = options.rank_tol * scale;
  double lower = std::numeric_limits<double>::infinity();
  rank = 0;
  upper = 0.0;
  for (double lambda : d.eigenvalues) {
    if (lambda <= cutoff) continue;
    ++rank;
    lower = std::min(lower, lambda);
    upper = std::max(upper, lambda);
  }
  if (rank == 0) throw Error(ErrorCode::IllConditioned, "system spans the zero subspace");
  if (lower < options.min_relative_bound * scale) {
    throw Error(ErrorCode::IllConditioned,
                "lower frame bound " + detail::num(lower) + " is numerically zero relative to " +
                    detail::num(scale) + " (no positive lower frame bound on the span)");
  }
  return lower;
}

double inverse_sqrt(double lambda) { return 1.0 / std::sqrt(lambda); }

}  // namespace

ParsevalFrame parseval_frame(const VectorSystem& sys, const Gramian& g, const ParsevalOptions& options) {
  const SpectralDecomposition dg = eig_sym(g.matrix);
  std::size_t rank = 0;
  double upper = 0.0;
  double lower = check_conditioning(dg, options, rank, upper);
  Matrix coefficients = apply_spectral_function(dg, inverse_sqrt, options.rank_tol).matrix();

  if (const auto* e = sys.as_explicit()) {
    const SpectralDecomposition ds = eig_sym(frame_operator(sys, g));
    std::size_t ambient_rank = 0;
    lower = check_conditioning(ds, options, ambient_rank, upper);
    const SymMatrix s_inv_sqrt = apply_spectral_function(ds, inverse_sqrt, options.rank_tol);
    Matrix psi(g.N, e->coordinates.cols());
    for (std::size_t n = 0; n < g.N; ++n) {
      const Vector v = s_inv_sqrt.apply(e->coordinates.row(n));
      std::copy(v.begin(), v.end(), psi.row(n).begin());
    }
    return ParsevalFrame{VectorSystem::explicit_finite(psi, sys.id() + "-parseval"), std::move(coefficients), psi,
                         ambient_rank, lower, upper};
  }

  // Gramian of ψ: C G C, the projector onto the range of G.
  auto gram = std::make_shared<const Matrix>(coefficients * g.matrix.matrix() * coefficients);
  auto kernel = [gram](std::size_t i, std::size_t j) { return (*gram)(i, j); };
  return ParsevalFrame{VectorSystem::kernel_defined(kernel, g.N, sys.id() + "-parseval"), std::move(coefficients),
                       std::nullopt, rank, lower, upper};
}

Vector parseval_analysis(const ParsevalFrame& frame, const VectorSystem& sys, const Gramian& g, const SpanVector& f) {
  if (f.representation == Representation::Ambient) {
    if (!frame.ambient) throw Error(ErrorCode::RepresentationError, "frame has no ambient realization");
    return multiply(*frame.ambient, f.values);
  }
  // ⟨ψₙ, Mξ⟩ = (C e_n)ᵀ G ξ, and C is symmetric.
  return multiply(frame.coefficients, analysis(g, sys, f));
}

SpanVector random_span_vector(const VectorSystem& sys, const Gramian& g, std::uint64_t seed) {
  NormalSampler normal(seed);
  Vector xi(g.N);
  for (double& x : xi) x = normal();
  SpanVector f = synthesis(sys, xi);
  const double n2 = norm_squared(g, sys, f);
  if (n2 > 0.0) scale(f, 1.0 / std::sqrt(n2));
  return f;
}

PolarIsometry::PolarIsometry(const Gramian& g, double rank_tol)
    : inv_sqrt_(SymMatrix::identity(g.N)) {
  const SpectralDecomposition d = eig_sym(g.matrix);
  inv_sqrt_ = apply_spectral_function(d, inverse_sqrt, rank_tol);
  const double cutoff = rank_tol * d.max_abs_eigenvalue();
  min_retained_ = 0.0;
  for (double lambda : d.eigenvalues) {
    if (lambda > cutoff) {
      min_retained_ = lambda;
      break;
    }
  }
}

Vector PolarIsometry::apply(const VectorSystem& sys, const Gramian& g, const SpanVector& f) const {
  return inv_sqrt_.apply(analysis(g, sys, f));
}

IsometryReport polar_isometry_check(const Gramian& g, const VectorSystem& sys, std::size_t samples,
                                    std::uint64_t seed, double tol, double rank_tol) {
  const PolarIsometry u(g, rank_tol);
  IsometryReport r;
  r.tol = tol;
  r.min_retained_eigenvalue = u.min_retained_eigenvalue();
  r.min_analysis_quotient = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const SpanVector f = random_span_vector(sys, g, derive_seed(seed, s));
    const double fnorm = std::sqrt(norm_squared(g, sys, f));
    if (fnorm == 0.0) continue;
    const Vector uf = u.apply(sys, g, f);
    r.max_deviation = std::max(r.max_deviation, std::abs(norm(uf) - fnorm));
    r.min_analysis_quotient = std::min(r.min_analysis_quotient, frame_quotient(g, sys, f));
    ++r.samples;
  }
  if (r.samples == 0) r.min_analysis_quotient = 0.0;
  // ‖Lf‖² >= λ_min‖f‖² on the span; half of that is a safe numerical floor.
  r.kernel_trivial = r.min_retained_eigenvalue > 0.0 && r.min_analysis_quotient >= 0.5 * r.min_retained_eigenvalue;
  r.pass = r.kernel_trivial && r.max_deviation <= tol;
  return r;
}

}  // namespace gramframe
