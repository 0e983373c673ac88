#include "gramframe/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gramframe/error.hpp"

namespace gramframe {

std::string_view to_string(QuadratureKind kind) noexcept {
  switch (kind) {
    case QuadratureKind::Trapezoid: return "trapezoid";
    case QuadratureKind::Simpson: return "simpson";
    case QuadratureKind::GaussLegendre: return "gauss-legendre";
  }
  return "unknown";
}

std::optional<QuadratureKind> parse_quadrature_kind(std::string_view name) noexcept {
  if (name == "trapezoid") return QuadratureKind::Trapezoid;
  if (name == "simpson") return QuadratureKind::Simpson;
  if (name == "gauss-legendre") return QuadratureKind::GaussLegendre;
  return std::nullopt;
}

namespace {

// Nodes and weights on [-1, 1], ascending. Newton iteration on P_n from the
// Chebyshev initial guess; the three-term recurrence gives P_n and P_n'.
void gauss_legendre_reference(std::size_t n, Vector& x, Vector& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 - (static_cast<double>(k) - 1.0) * p2) /
             static_cast<double>(k);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 - (static_cast<double>(k) - 1.0) * p2) /
           static_cast<double>(k);
    }
    dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace

QuadratureRule::QuadratureRule(QuadratureKind kind, std::size_t nodes, double lower, double upper)
    : kind_(kind), lower_(lower), upper_(upper) {
  if (!(upper > lower) || !std::isfinite(lower) || !std::isfinite(upper))
    throw Error(ErrorCode::InvalidInterval, "quadrature interval must satisfy lower < upper");
  const double length = upper - lower;

  switch (kind) {
    case QuadratureKind::Trapezoid: {
      if (nodes < 2) throw Error(ErrorCode::ShapeError, "trapezoid rule needs at least 2 nodes");
      const double h = length / static_cast<double>(nodes - 1);
      nodes_.resize(nodes);
      weights_.assign(nodes, h);
      for (std::size_t k = 0; k < nodes; ++k) nodes_[k] = lower + h * static_cast<double>(k);
      nodes_.back() = upper;
      weights_.front() = weights_.back() = 0.5 * h;
      break;
    }
    case QuadratureKind::Simpson: {
      if (nodes < 3 || nodes % 2 == 0)
        throw Error(ErrorCode::ShapeError, "Simpson rule needs an odd node count >= 3, got " + std::to_string(nodes));
      const double h = length / static_cast<double>(nodes - 1);
      nodes_.resize(nodes);
      weights_.resize(nodes);
      for (std::size_t k = 0; k < nodes; ++k) {
        nodes_[k] = lower + h * static_cast<double>(k);
        weights_[k] = (k == 0 || k == nodes - 1) ? h / 3.0 : (k % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
      }
      nodes_.back() = upper;
      break;
    }
    case QuadratureKind::GaussLegendre: {
      if (nodes < 1) throw Error(ErrorCode::ShapeError, "Gauss-Legendre rule needs at least 1 node");
      Vector x;
      Vector w;
      gauss_legendre_reference(nodes, x, w);
      nodes_.resize(nodes);
      weights_.resize(nodes);
      for (std::size_t k = 0; k < nodes; ++k) {
        nodes_[k] = lower + 0.5 * length * (x[k] + 1.0);
        weights_[k] = 0.5 * length * w[k];
      }
      break;
    }
  }
}

}  // namespace gramframe
