#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "gramframe/matrix.hpp"

namespace gramframe {

enum class QuadratureKind { Trapezoid, Simpson, GaussLegendre };

std::string_view to_string(QuadratureKind kind) noexcept;
/// Accepts "trapezoid", "simpson", "gauss-legendre".
std::optional<QuadratureKind> parse_quadrature_kind(std::string_view name) noexcept;

/// A composite or Gaussian rule on [lower, upper]. Weights integrate
/// constants exactly (sum to upper - lower).
class QuadratureRule {
 public:
  /// Throws ShapeError for node counts the rule cannot use (trapezoid needs
  /// >= 2, Simpson an odd count >= 3, Gauss-Legendre >= 1) and
  /// InvalidInterval when upper <= lower.
  QuadratureRule(QuadratureKind kind, std::size_t nodes, double lower = 0.0, double upper = 1.0);

  QuadratureKind kind() const noexcept { return kind_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  const Vector& nodes() const noexcept { return nodes_; }
  const Vector& weights() const noexcept { return weights_; }

 private:
  QuadratureKind kind_;
  double lower_;
  double upper_;
  Vector nodes_;
  Vector weights_;
};

}  // namespace gramframe
