#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gramframe/gramian.hpp"
#include "gramframe/matrix.hpp"

namespace gramframe {

/// Gaussian random field on |V| vertices: samples are factor·z with z
/// standard normal, so E(φ_x φ_y) = C(x, y).
struct RandomFieldModel {
  SymMatrix covariance;
  /// C^{1/2} from the spectral calculus (zero eigenvalues allowed).
  SymMatrix factor;
  std::uint64_t seed = 0;

  std::size_t vertex_count() const noexcept { return covariance.size(); }
};

/// Throws NotPositiveSemidefinite when λ_min(C) < −psd_tol·max|λ|.
RandomFieldModel make_field_model(const SymMatrix& covariance, std::uint64_t seed, double psd_tol = 1e-10);

struct RandomFrameDiagnostic {
  /// (Σ_y C(x, y)²)^{1/2} per vertex; finite at any truncation.
  Vector row_l2;
  PsdReport psd;
  bool pass = false;
};

RandomFrameDiagnostic check_random_frame(const SymMatrix& covariance, double psd_tol = 1e-10);

/// M × |V| samples; row m uses the normal stream derive_seed(seed, m), so the
/// output is bit-reproducible for a fixed seed and independent of batching.
Matrix sample_field(const RandomFieldModel& model, std::size_t M);

/// Ĉ = (1/M) Σ_m s_m s_mᵀ. Throws ShapeError for M < 2.
SymMatrix empirical_gramian(const Matrix& samples);

/// c ↦ C c: in synthesis coordinates over {φ_x}, the generalized frame
/// operator f ↦ Σ_x E(φ_x f) φ_x.
Vector generalized_frame_operator_apply(const SymMatrix& covariance, std::span<const double> c);

struct BandEstimateEntry {
  double energy = 0.0;    ///< E|f|² = cᵀ C c
  double response = 0.0;  ///< Σ_x |E(φ_x f)|² = ‖C c‖²
  double lower = 0.0;     ///< a·energy
  double upper = 0.0;     ///< b·energy
  double membership_residual = 0.0;
  bool holds = false;
};

struct BandEstimateReport {
  double a = 0.0;
  double b = 0.0;
  double tol = 0.0;
  std::vector<BandEstimateEntry> entries;
  bool pass = true;
};

/// Deterministic check of a·E|f|² <= Σ_x |E(φ_x f)|² <= b·E|f|² (with
/// relative slack tol) for f = Σ c_x φ_x. Each c must lie in the spectral
/// subspace of C for [a, b]; throws BandMembershipError when the projection
/// residual exceeds tol·‖c‖, InvalidInterval unless 0 < a <= b.
BandEstimateReport band_estimate_check(const SymMatrix& covariance, double a, double b,
                                       const std::vector<Vector>& c_vectors, double tol);

struct MonteCarloEstimate {
  std::size_t samples = 0;
  double energy_exact = 0.0;
  double energy_empirical = 0.0;
  double response_exact = 0.0;
  double response_empirical = 0.0;
  /// max of the two relative deviations
  double relative_deviation = 0.0;
  /// 10/√M
  double tolerance = 0.0;
  bool within_tolerance = false;
};

/// Both sides of the band estimate from empirical moments of sample_field.
MonteCarloEstimate band_estimate_monte_carlo(const RandomFieldModel& model, std::span<const double> c, std::size_t M);

}  // namespace gramframe
