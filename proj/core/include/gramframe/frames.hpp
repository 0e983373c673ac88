#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gramframe/gramian.hpp"
#include "gramframe/matrix.hpp"
#include "gramframe/spectral.hpp"
#include "gramframe/systems.hpp"

namespace gramframe {

enum class Representation {
  /// Synthesis coordinates ξ: the vector is f = Σ ξₙ φₙ.
  Coefficients,
  /// Coordinates in ℝ^d, explicit systems only.
  Ambient,
};

/// An element of span{φₙ}.
struct SpanVector {
  Representation representation = Representation::Coefficients;
  Vector values;

  static SpanVector coefficients(Vector xi) { return {Representation::Coefficients, std::move(xi)}; }
  static SpanVector ambient(Vector x) { return {Representation::Ambient, std::move(x)}; }
};

/// Analysis operator: (⟨φₙ, f⟩)ₙ for n < G.N. Coefficient vectors go through
/// G ξ; ambient vectors are dotted against the explicit φₙ directly, without
/// touching G. Throws RepresentationError / ShapeError.
Vector analysis(const Gramian& g, const VectorSystem& sys, const SpanVector& f);

/// Synthesis operator: Σ ξₙ φₙ. Explicit systems return the ambient vector,
/// every other kind keeps the coefficient form. Throws ShapeError when ξ is
/// empty or longer than a finite system.
SpanVector synthesis(const VectorSystem& sys, std::span<const double> xi);

/// ‖f‖²_ℋ: ξᵀ G ξ for coefficients, the Euclidean norm for ambient vectors.
double norm_squared(const Gramian& g, const VectorSystem& sys, const SpanVector& f);

/// Σₙ |⟨φₙ, f⟩|² / ‖f‖².
double frame_quotient(const Gramian& g, const VectorSystem& sys, const SpanVector& f);

/// S = Σ φₙ φₙᵀ (d×d) for explicit systems; otherwise the Gramian itself,
/// which is LL* on ℓ². The nonzero spectra of the two coincide.
SymMatrix frame_operator(const VectorSystem& sys, const Gramian& g);

struct BandOptions {
  /// Eigenvalues <= rank_tol·λ_max are treated as the kernel of G.
  double rank_tol = 1e-12;
  /// Endpoint slack, relative to λ_max.
  double band_eps = 1e-12;
};

struct AttainedBounds {
  double min = 0.0;
  double max = 0.0;
};

/// Maximal subspace H(a, b) on which [a, b] are frame bounds, i.e. the range
/// of the spectral projection of the frame operator onto [a, b], expressed
/// in synthesis coordinates through the Gramian eigenpairs.
struct FrameBand {
  double a = 0.0;
  double b = 0.0;
  /// Absolute slack band_eps·λ_max applied at both endpoints.
  double endpoint_slack = 0.0;
  /// Absolute rank cutoff rank_tol·λ_max.
  double rank_cutoff = 0.0;

  /// Indices into `spectrum` of the selected eigenpairs, ascending.
  std::vector<std::size_t> selected;
  Vector eigenvalues;
  /// Unit eigenvectors ξ_k of G (ℓ²-normalized).
  std::vector<Vector> eigenvectors;
  /// ξ_k / √λ_k: an orthonormal basis of H(a, b) under ⟨Mξ, Mη⟩ = ξᵀ G η.
  std::vector<Vector> onb;
  std::optional<AttainedBounds> attained;
  /// Spectrum indices with an eigenvalue within endpoint_slack of a or b.
  std::vector<std::size_t> endpoint_sensitive;

  SpectralDecomposition spectrum;

  std::size_t dimension() const noexcept { return selected.size(); }
  bool empty() const noexcept { return selected.empty(); }
};

/// Throws InvalidInterval unless 0 < a <= b < ∞.
FrameBand band_extract(const Gramian& g, double a, double b, const BandOptions& options = {});
FrameBand band_extract(SpectralDecomposition spectrum, double a, double b, const BandOptions& options = {});

/// The band basis synthesized through `sys` (ambient vectors for explicit
/// systems).
std::vector<SpanVector> band_basis(const VectorSystem& sys, const FrameBand& band);

struct FrameBoundsReport {
  std::size_t trials_run = 0;
  double min_quotient = 0.0;
  double max_quotient = 0.0;
  /// Quotient of each band basis vector; these equal the selected eigenvalues.
  Vector basis_quotients;
  std::optional<AttainedBounds> attained;
  std::size_t violations = 0;
  double tol = 0.0;
  bool pass = true;
};

/// Draws `trials` seeded random unit vectors of H(a, b) and checks
/// a − tol <= Σ|⟨φₙ, f⟩|² <= b + tol. An empty band passes vacuously with
/// no trials. Violations are reported, not thrown.
FrameBoundsReport verify_frame_bounds(const VectorSystem& sys, const Gramian& g, const FrameBand& band,
                                      std::size_t trials, std::uint64_t seed, double tol);

struct MaximalityReport {
  struct Excluded {
    std::size_t index = 0;
    double eigenvalue = 0.0;
    double quotient = 0.0;
    bool violates = false;
  };
  std::vector<Excluded> excluded;
  /// Eigenvalues at or below the rank cutoff (the kernel of G, no vector of ℋ).
  std::size_t null_directions = 0;
  double tol = 0.0;
  /// Every excluded eigenvector breaks the frame estimate, so no larger
  /// subspace of the truncation carries the bounds [a, b].
  bool confirmed = true;
};

MaximalityReport maximality_check(const Gramian& g, const FrameBand& band, double tol);

struct ParsevalOptions {
  double rank_tol = 1e-12;
  /// Smallest retained eigenvalue must be at least this fraction of λ_max.
  double min_relative_bound = 1e-10;
};

/// ψₙ = (L*L)^{-1/2} φₙ.
///
/// `coefficients` holds G^{-1/2} (pseudo, on the range): column n gives ψₙ
/// in synthesis coordinates, so every pairing ⟨ψₙ, f⟩ is a Gramian
/// functional. Explicit systems also get `ambient`, with row n = S^{-1/2} φₙ.
struct ParsevalFrame {
  VectorSystem system;
  Matrix coefficients;
  std::optional<Matrix> ambient;
  std::size_t rank = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

/// Throws IllConditioned (naming the eigenvalue) when a retained eigenvalue
/// is below min_relative_bound·λ_max.
ParsevalFrame parseval_frame(const VectorSystem& sys, const Gramian& g, const ParsevalOptions& options = {});

/// (⟨ψₙ, f⟩)ₙ
Vector parseval_analysis(const ParsevalFrame& frame, const VectorSystem& sys, const Gramian& g, const SpanVector& f);

/// Seeded unit vector of span{φ₀..φ_{N-1}} (standard normal coefficients,
/// normalized in ℋ). Trial k of a run with master seed s uses
/// derive_seed(s, k).
SpanVector random_span_vector(const VectorSystem& sys, const Gramian& g, std::uint64_t seed);

/// U = T_G^{-1/2} L from the polar decomposition of the analysis operator.
class PolarIsometry {
 public:
  explicit PolarIsometry(const Gramian& g, double rank_tol = 1e-12);

  Vector apply(const VectorSystem& sys, const Gramian& g, const SpanVector& f) const;
  double min_retained_eigenvalue() const noexcept { return min_retained_; }

 private:
  SymMatrix inv_sqrt_;
  double min_retained_ = 0.0;
};

struct IsometryReport {
  std::size_t samples = 0;
  double max_deviation = 0.0;
  /// min ‖Lf‖² / ‖f‖² over the samples; positive means ker L is trivial on the span.
  double min_analysis_quotient = 0.0;
  double min_retained_eigenvalue = 0.0;
  bool kernel_trivial = false;
  double tol = 0.0;
  bool pass = false;
};

/// Checks |‖Uf‖_ℓ² − ‖f‖_ℋ| <= tol on seeded random span vectors.
IsometryReport polar_isometry_check(const Gramian& g, const VectorSystem& sys, std::size_t samples,
                                    std::uint64_t seed, double tol, double rank_tol = 1e-12);

}  // namespace gramframe
