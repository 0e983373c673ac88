#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "gramframe/matrix.hpp"
#include "gramframe/quadrature.hpp"

namespace gramframe {

enum class SystemKind { ExplicitFinite, SampledFunctions, KernelDefined, HilbertMonomial, CovarianceField };

std::string_view to_string(SystemKind kind) noexcept;

/// Rows are the vectors φₙ in ℝ^d. As functions, φₙ(k) = coordinates(n, k)
/// on Ω = {0, ..., d-1}.
struct ExplicitFinite {
  Matrix coordinates;
};

/// values(n, k) = φₙ(t_k); inner products use the quadrature weights.
struct SampledFunctions {
  Matrix values;
  Vector grid;
  Vector weights;
  std::string rule;
};

/// p(i, j) = ⟨φᵢ, φⱼ⟩, trusted to be symmetric positive semidefinite.
/// `count` is empty for an infinite index set.
struct KernelDefined {
  std::function<double(std::size_t, std::size_t)> kernel;
  std::optional<std::size_t> count;
};

/// φₙ(t) = tⁿ on (0, 1), n >= 0, in L²(0, 1). The Gramian is the Hilbert matrix.
struct HilbertMonomial {};

/// Random field on |V| vertices with E(φ_x φ_y) = covariance(x, y).
struct CovarianceField {
  SymMatrix covariance;
};

/// A family {φₙ} given by one of five concrete descriptions. Indices are 0-based.
class VectorSystem {
 public:
  using Payload = std::variant<ExplicitFinite, SampledFunctions, KernelDefined, HilbertMonomial, CovarianceField>;

  /// Throws InvalidEntry on non-finite coordinates.
  static VectorSystem explicit_finite(Matrix coordinates, std::string id = "explicit");
  static VectorSystem kernel_defined(std::function<double(std::size_t, std::size_t)> kernel,
                                     std::optional<std::size_t> count, std::string id = "kernel");
  static VectorSystem hilbert_monomial();
  static VectorSystem covariance_field(SymMatrix covariance, std::string id = "covariance");

  SystemKind kind() const noexcept;
  const std::string& id() const noexcept { return id_; }
  const Payload& payload() const noexcept { return payload_; }

  /// Number of vectors; empty for infinite systems.
  std::optional<std::size_t> size() const noexcept;
  bool is_pointwise() const noexcept;

  const ExplicitFinite* as_explicit() const noexcept { return std::get_if<ExplicitFinite>(&payload_); }
  const SampledFunctions* as_sampled() const noexcept { return std::get_if<SampledFunctions>(&payload_); }

  /// ⟨φᵢ, φⱼ⟩. Exactly symmetric in (i, j). Throws IndexError.
  double inner_product(std::size_t i, std::size_t j) const;

  /// φₙ(t). Throws NotPointwise for kernel and covariance systems, OffGrid
  /// when t is not in Ω (sampled systems: not a grid node; no interpolation),
  /// IndexError for a bad n.
  double evaluate(std::size_t n, double t) const;

 private:
  friend VectorSystem make_sampled(Matrix values, Vector grid, Vector weights, std::string rule_name);

  VectorSystem(Payload payload, std::string id) : payload_(std::move(payload)), id_(std::move(id)) {}

  void check_index(std::size_t i) const;

  Payload payload_;
  std::string id_;
};

/// Sampled system whose inner products use `rule`. The rule's nodes must
/// match `grid` to 1e-12; throws ShapeError otherwise.
VectorSystem make_sampled(Matrix values, Vector grid, const QuadratureRule& rule);

/// Sampled system with explicit nonnegative weights (e.g. unit weights for
/// counting measure). Grid must be strictly increasing.
VectorSystem make_sampled(Matrix values, Vector grid, Vector weights, std::string rule_name = "custom");

/// Points of Ω usable for evaluation: the grid for sampled systems, {0..d-1}
/// for explicit ones, `interior_count` equispaced points of (0, 1) for the
/// monomials. Throws NotPointwise otherwise.
Vector domain_points(const VectorSystem& sys, std::size_t interior_count = 64);

}  // namespace gramframe
