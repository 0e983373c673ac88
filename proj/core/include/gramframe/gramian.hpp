#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gramframe/matrix.hpp"
#include "gramframe/systems.hpp"

namespace gramframe {

/// N×N truncation of G = (⟨φᵢ, φⱼ⟩).
struct Gramian {
  std::size_t N = 0;
  SymMatrix matrix;
  std::string system_id;
  /// (Σⱼ G[i][j]²)^{1/2} over the truncation.
  Vector row_l2;

  /// Wraps an arbitrary symmetric matrix (synthetic Gramians, covariances).
  static Gramian from_matrix(SymMatrix m, std::string system_id = "matrix");
};

/// Throws IndexError when N exceeds a finite system, InvalidEntry on a
/// non-finite inner product, ShapeError for N == 0.
Gramian build_gramian(const VectorSystem& sys, std::size_t N);

/// Partial sums of Σⱼ |⟨φⱼ, φ_row⟩|² at increasing truncations.
struct RowL2Diagnostic {
  std::size_t row = 0;
  std::vector<std::size_t> truncations;
  Vector partial_sums;
  double rel_tol = 1e-6;
  /// Last two partial sums agree to rel_tol. A heuristic, not a proof of
  /// convergence.
  bool cauchy_flag = false;
};

/// Never throws for valid ascending input; truncations beyond a finite
/// system are clipped to its size.
RowL2Diagnostic check_row_l2(const VectorSystem& sys, std::size_t row, const std::vector<std::size_t>& truncations,
                             double rel_tol = 1e-6);

struct PsdReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double tol = 0.0;
  bool is_psd = false;
  std::string note;
};

/// PSD iff λ_min >= −tol·max|λ|. When PSD, the truncated matrix has no
/// eigenvalue −1, so G ξ = −ξ forces ξ = 0 at this truncation.
PsdReport check_psd(const SymMatrix& m, double tol = 1e-10);
PsdReport check_psd(const Gramian& g, double tol = 1e-10);

enum class CarlemanVerdict { SufficientConditionMet, Inconclusive };

std::string_view to_string(CarlemanVerdict v) noexcept;

/// Finite-N reading of the off-diagonal row-sum test for essential
/// self-adjointness: bₙ = Σ_{j≠n} |G[n][j]|, rows with bₙ = 0 excluded, and
/// the condition is "met" when Σ 1/√bₙ over the upper half of the indices
/// grows by at least 0.1·ln N. Always a diagnostic (is_proof == false).
struct SelfAdjointnessReport {
  Vector b_values;
  Vector partial_sums;
  std::size_t excluded_rows = 0;
  double tail_growth = 0.0;
  double threshold = 0.0;
  CarlemanVerdict verdict = CarlemanVerdict::Inconclusive;
  double psd_min_eigenvalue = 0.0;
  bool is_proof = false;
};

inline constexpr double kCarlemanGrowthConstant = 0.1;

/// Requires N >= 3 (ShapeError otherwise).
SelfAdjointnessReport check_carleman(const Gramian& g);

/// The verdict logic on given row sums; psd_min_eigenvalue is left at 0.
SelfAdjointnessReport carleman_from_row_sums(Vector b_values);

}  // namespace gramframe
