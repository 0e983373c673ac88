#include "gramframe/systems.hpp"

#include <algorithm>
#include <cmath>

#include "gramframe/error.hpp"

namespace gramframe {

std::string_view to_string(SystemKind kind) noexcept {
  switch (kind) {
    case SystemKind::ExplicitFinite: return "explicit";
    case SystemKind::SampledFunctions: return "sampled";
    case SystemKind::KernelDefined: return "kernel";
    case SystemKind::HilbertMonomial: return "hilbert";
    case SystemKind::CovarianceField: return "covariance";
  }
  return "unknown";
}

VectorSystem VectorSystem::explicit_finite(Matrix coordinates, std::string id) {
  if (coordinates.rows() == 0 || coordinates.cols() == 0)
    throw Error(ErrorCode::ShapeError, "explicit system needs at least one vector of dimension >= 1");
  for (double x : coordinates.data())
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidEntry, "explicit system has a non-finite coordinate");
  return VectorSystem(ExplicitFinite{std::move(coordinates)}, std::move(id));
}

VectorSystem VectorSystem::kernel_defined(std::function<double(std::size_t, std::size_t)> kernel,
                                          std::optional<std::size_t> count, std::string id) {
  if (!kernel) throw Error(ErrorCode::InvalidEntry, "kernel system needs a callable");
  if (count && *count == 0) throw Error(ErrorCode::ShapeError, "kernel system needs at least one index");
  return VectorSystem(KernelDefined{std::move(kernel), count}, std::move(id));
}

VectorSystem VectorSystem::hilbert_monomial() { return VectorSystem(HilbertMonomial{}, "hilbert"); }

VectorSystem VectorSystem::covariance_field(SymMatrix covariance, std::string id) {
  return VectorSystem(CovarianceField{std::move(covariance)}, std::move(id));
}

SystemKind VectorSystem::kind() const noexcept { return static_cast<SystemKind>(payload_.index()); }

std::optional<std::size_t> VectorSystem::size() const noexcept {
  switch (kind()) {
    case SystemKind::ExplicitFinite: return std::get<ExplicitFinite>(payload_).coordinates.rows();
    case SystemKind::SampledFunctions: return std::get<SampledFunctions>(payload_).values.rows();
    case SystemKind::KernelDefined: return std::get<KernelDefined>(payload_).count;
    case SystemKind::HilbertMonomial: return std::nullopt;
    case SystemKind::CovarianceField: return std::get<CovarianceField>(payload_).covariance.size();
  }
  return std::nullopt;
}

bool VectorSystem::is_pointwise() const noexcept {
  const SystemKind k = kind();
  return k == SystemKind::ExplicitFinite || k == SystemKind::SampledFunctions || k == SystemKind::HilbertMonomial;
}

void VectorSystem::check_index(std::size_t i) const {
  if (auto n = size(); n && i >= *n) {
    throw Error(ErrorCode::IndexError,
                "index " + std::to_string(i) + " out of range for system of size " + std::to_string(*n));
  }
}

double VectorSystem::inner_product(std::size_t i, std::size_t j) const {
  check_index(i);
  check_index(j);
  // Evaluate with (lo, hi) so the result is bitwise symmetric for every kind.
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ExplicitFinite>) {
          return dot(p.coordinates.row(lo), p.coordinates.row(hi));
        } else if constexpr (std::is_same_v<T, SampledFunctions>) {
          double s = 0.0;
          for (std::size_t k = 0; k < p.grid.size(); ++k) s += p.weights[k] * p.values(lo, k) * p.values(hi, k);
          return s;
        } else if constexpr (std::is_same_v<T, KernelDefined>) {
          return p.kernel(lo, hi);
        } else if constexpr (std::is_same_v<T, HilbertMonomial>) {
          return 1.0 / static_cast<double>(lo + hi + 1);
        } else {
          return p.covariance(lo, hi);
        }
      },
      payload_);
}

double VectorSystem::evaluate(std::size_t n, double t) const {
  if (!is_pointwise()) {
    throw Error(ErrorCode::NotPointwise,
                std::string(to_string(kind())) + " systems have no pointwise representation");
  }
  check_index(n);
  if (const auto* e = as_explicit()) {
    const double k = std::round(t);
    if (k != t || k < 0.0 || k >= static_cast<double>(e->coordinates.cols()))
      throw Error(ErrorCode::OffGrid, "explicit systems are functions on {0..d-1}; got t = " + std::to_string(t));
    return e->coordinates(n, static_cast<std::size_t>(k));
  }
  if (const auto* s = as_sampled()) {
    auto it = std::lower_bound(s->grid.begin(), s->grid.end(), t);
    if (it == s->grid.end() || *it != t) throw Error(ErrorCode::OffGrid, "t = " + std::to_string(t) + " is not a grid node");
    return s->values(n, static_cast<std::size_t>(it - s->grid.begin()));
  }
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::OffGrid, "monomials live on (0, 1); got t = " + std::to_string(t));
  return std::pow(t, static_cast<double>(n));
}

VectorSystem make_sampled(Matrix values, Vector grid, Vector weights, std::string rule_name) {
  if (values.rows() == 0) throw Error(ErrorCode::ShapeError, "sampled system needs at least one function");
  if (values.cols() != grid.size() || weights.size() != grid.size()) {
    throw Error(ErrorCode::ShapeError, "sampled system: " + std::to_string(values.cols()) + " samples per function, " +
                                           std::to_string(grid.size()) + " grid points, " +
                                           std::to_string(weights.size()) + " weights");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k]) || (k > 0 && !(grid[k] > grid[k - 1])))
      throw Error(ErrorCode::ShapeError, "grid must be finite and strictly increasing");
    if (!(weights[k] >= 0.0) || !std::isfinite(weights[k]))
      throw Error(ErrorCode::InvalidEntry, "quadrature weights must be finite and >= 0");
  }
  for (double v : values.data())
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidEntry, "sampled values must be finite");
  return VectorSystem(SampledFunctions{std::move(values), std::move(grid), std::move(weights), std::move(rule_name)},
                      "sampled");
}

VectorSystem make_sampled(Matrix values, Vector grid, const QuadratureRule& rule) {
  if (grid.size() != rule.node_count()) {
    throw Error(ErrorCode::ShapeError, "grid has " + std::to_string(grid.size()) + " points but the " +
                                           std::string(to_string(rule.kind())) + " rule has " +
                                           std::to_string(rule.node_count()) + " nodes");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (std::abs(grid[k] - rule.nodes()[k]) > 1e-12)
      throw Error(ErrorCode::ShapeError, "grid point " + std::to_string(k) + " does not match the rule's node");
  }
  return make_sampled(std::move(values), std::move(grid), rule.weights(), std::string(to_string(rule.kind())));
}

Vector domain_points(const VectorSystem& sys, std::size_t interior_count) {
  if (const auto* e = sys.as_explicit()) {
    Vector pts(e->coordinates.cols());
    for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = static_cast<double>(k);
    return pts;
  }
  if (const auto* s = sys.as_sampled()) return s->grid;
  if (sys.kind() == SystemKind::HilbertMonomial) {
    Vector pts(interior_count);
    for (std::size_t k = 0; k < interior_count; ++k)
      pts[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(interior_count);
    return pts;
  }
  throw Error(ErrorCode::NotPointwise, std::string(to_string(sys.kind())) + " systems have no point domain");
}

}  // namespace gramframe
