#include <gtest/gtest.h>

#include <cmath>

#include "gramframe/error.hpp"
#include "gramframe/quadrature.hpp"
#include "gramframe/random.hpp"
#include "gramframe/rkhs.hpp"
#include "support/oracles.hpp"

namespace gramframe {
namespace {

TEST(EvalL, Examples) {
  EXPECT_EQ(eval_l(VectorSystem::hilbert_monomial(), 0.5, 3), (Vector{1.0, 0.5, 0.25}));
  EXPECT_EQ(eval_l(testing::delta_system(4), 2.0, 4), (Vector{0.0, 0.0, 1.0, 0.0}));
  const auto s = make_sampled(Matrix::from_rows({{1.0, 1.0, 1.0}, {0.0, 0.5, 1.0}, {0.0, 0.25, 1.0}}),
                              {0.0, 0.5, 1.0}, QuadratureRule(QuadratureKind::Simpson, 3));
  EXPECT_EQ(eval_l(s, 1.0, 3), (Vector{1.0, 1.0, 1.0}));
  EXPECT_THROW(eval_l(VectorSystem::covariance_field(SymMatrix::identity(2)), 0.0, 2), Error);
}

TEST(PointwiseL2, HilbertAtHalf) {
  const auto d = check_pointwise_l2(VectorSystem::hilbert_monomial(), 0.5, {10, 20, 40});
  EXPECT_NEAR(d.partial_sums.back(), 4.0 / 3.0, 1e-15);
  EXPECT_TRUE(d.cauchy_flag);
}

TEST(PointwiseL2, HilbertNearOne) {
  const auto d = check_pointwise_l2(VectorSystem::hilbert_monomial(), 0.999, {10, 100, 1000});
  const double limit = 1.0 / (1.0 - 0.999 * 0.999);
  EXPECT_NEAR(limit, 500.25, 0.001);
  EXPECT_LT(d.partial_sums.back(), limit);
  EXPECT_FALSE(d.cauchy_flag);
  const double r = 0.999 * 0.999;
  EXPECT_NEAR(d.partial_sums[1], (1.0 - std::pow(r, 100)) / (1.0 - r), 1e-10);
}

TEST(PointwiseL2, FiniteSystemSaturates) {
  const auto d = check_pointwise_l2(testing::system_b(), 0.0, {1, 3, 10});
  EXPECT_EQ(d.partial_sums[1], d.partial_sums[2]);
  EXPECT_NEAR(d.partial_sums[2], 1.5, 1e-15);
  EXPECT_TRUE(d.cauchy_flag);
}

TEST(KernelEval, DeltaSystemIsKronecker) {
  const RkhsKernel k(testing::delta_system(5), 5);
  for (int s = 0; s < 5; ++s)
    for (int t = 0; t < 5; ++t) EXPECT_EQ(kernel_eval(k, s, t), s == t ? 1.0 : 0.0);
}

TEST(KernelEval, ConstantFunction) {
  const std::size_t m = 7;
  Vector grid(m);
  for (std::size_t k = 0; k < m; ++k) grid[k] = static_cast<double>(k);
  const RkhsKernel k(make_sampled(Matrix(1, m, 1.0), grid, Vector(m, 1.0)), 1);
  for (double s : grid)
    for (double t : grid) EXPECT_NEAR(kernel_eval(k, s, t), 1.0 / m, 1e-16);
}

TEST(KernelEval, MercedesProjectsOntoFullSpan) {
  const RkhsKernel k(testing::mercedes(), 3);
  const Vector pts{0.0, 1.0};
  const SymMatrix km = kernel_matrix(k, pts);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(km(i, j), i == j ? 1.0 : 0.0, 1e-14);
}

TEST(KernelEval, NotPointwise) {
  EXPECT_THROW(RkhsKernel(VectorSystem::covariance_field(SymMatrix::identity(2)), 2), Error);
}

TEST(KernelEval, SymmetricAndPsd) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sys = testing::random_explicit(seed);
    const RkhsKernel k(sys, *sys.size());
    const Vector pts = domain_points(sys);
    for (double s : pts)
      for (double t : pts) EXPECT_EQ(kernel_eval(k, s, t), kernel_eval(k, t, s));
    const auto spec = eig_sym(kernel_matrix(k, pts));
    EXPECT_GE(spec.eigenvalues.front(), -1e-10 * std::max(1.0, spec.max_abs_eigenvalue())) << seed;
  }
  const RkhsKernel h(VectorSystem::hilbert_monomial(), 12);
  const Vector pts = domain_points(h.system(), 32);
  const auto spec = eig_sym(kernel_matrix(h, pts));
  EXPECT_GE(spec.eigenvalues.front(), -1e-10 * spec.max_abs_eigenvalue());
}

TEST(KernelEval, ParsevalFormAgrees) {
  std::vector<VectorSystem> systems = {testing::trig_system(), testing::system_b(), testing::mercedes()};
  for (std::uint64_t seed = 500; seed < 520; ++seed) systems.push_back(testing::random_explicit(seed));
  for (const auto& sys : systems) {
    const RkhsKernel k(sys, *sys.size());
    const Vector pts = domain_points(sys);
    for (std::size_t i = 0; i < pts.size(); i += 3)
      for (std::size_t j = 0; j < pts.size(); j += 5) {
        const double a = kernel_eval(k, pts[i], pts[j]);
        const double b = kernel_eval_parseval(k, pts[i], pts[j]);
        EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, std::abs(a))) << sys.id();
      }
  }
}

TEST(Reproducing, DeltaSystemExact) {
  const RkhsKernel k(testing::delta_system(6), 6);
  const Vector xi{0.3, -1.0, 2.0, 0.0, 5.5, -0.25};
  const Vector pts{0, 1, 2, 3, 4, 5};
  const auto r = reproducing_check(k, xi, pts, 1e-12);
  EXPECT_EQ(r.max_residual, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Reproducing, TrigSystem) {
  const auto sys = testing::trig_system();
  const RkhsKernel k(sys, 3);
  EXPECT_NEAR(k.condition_number(), 1.0, 1e-12);
  const Vector pts = domain_points(sys);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    NormalSampler normal(seed);
    const Vector xi{normal(), normal(), normal()};
    const auto r = reproducing_check(k, xi, pts, 1e-8);
    EXPECT_LT(r.max_residual, 1e-9);
    EXPECT_TRUE(r.pass);
  }
}

TEST(Reproducing, WellConditionedRandomSystems) {
  for (std::uint64_t seed = 600; seed < 640; ++seed) {
    const auto sys = testing::random_explicit(seed);
    const RkhsKernel k(sys, *sys.size());
    // Only systems whose nonzero spectrum stays above 0.1.
    bool ok = true;
    for (double l : k.spectrum().eigenvalues)
      if (l > k.pinv().cutoff && l < 0.1) ok = false;
    if (!ok) continue;
    NormalSampler normal(seed);
    Vector xi(*sys.size());
    for (auto& x : xi) x = normal();
    const auto r = reproducing_check(k, xi, domain_points(sys), 1e-8);
    EXPECT_TRUE(r.pass) << seed << " " << r.max_residual / r.f_norm;
  }
}

TEST(Reproducing, HilbertFailsFromTwelve) {
  const Vector pts = domain_points(VectorSystem::hilbert_monomial(), 64);
  for (std::size_t n : {12u, 14u, 16u, 20u}) {
    const RkhsKernel k(VectorSystem::hilbert_monomial(), n);
    Vector xi(n, 1.0);
    const auto r = reproducing_check(k, xi, pts, 1e-8);
    EXPECT_FALSE(r.pass) << n;
    // Retained condition number, so capped near 1/rank_tol.
    EXPECT_GT(r.condition_number, 1e10) << n;
  }
}

TEST(Reproducing, RejectsShapeMismatch) {
  const RkhsKernel k(testing::system_b(), 3);
  const Vector pts{0.0};
  EXPECT_THROW(reproducing_check(k, Vector{1.0, 2.0}, pts, 1e-8), Error);
}

}  // namespace
}  // namespace gramframe
