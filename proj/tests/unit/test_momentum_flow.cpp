#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncdeform/errors.hpp"
#include "ncdeform/momentum_flow.hpp"
#include "ncdeform/realization.hpp"
#include "test_support.hpp"

using namespace ncdeform;
using namespace ncdeform::testing;

namespace {

FloatParams fparams(std::vector<double> a, double s) { return FloatParams::make(std::move(a), s); }

MomentumVector random_vector(std::mt19937_64& rng, int n, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  MomentumVector v(static_cast<std::size_t>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

FloatParams random_params(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  std::vector<double> a(static_cast<std::size_t>(n));
  for (auto& x : a) x = u(rng);
  return fparams(a, u(rng));
}

}  // namespace

// ---------- even kernels ----------

TEST(EvenKernels, TaylorLimitAtZero) {
  const auto [sh, ch] = even_kernels(0.0);
  EXPECT_DOUBLE_EQ(sh, 1.0);
  EXPECT_DOUBLE_EQ(ch, 0.5);
}

TEST(EvenKernels, PositiveArgument) {
  const auto [sh, ch] = even_kernels(1.0);
  EXPECT_NEAR(sh, std::sinh(1.0), 1e-15);
  EXPECT_NEAR(ch, std::cosh(1.0) - 1.0, 1e-15);
}

TEST(EvenKernels, NegativeArgumentIsTrigonometric) {
  // W = i*pi: sinh(W)/W = sin(pi)/pi, (cosh W - 1)/W^2 = (cos(pi) - 1)/(-pi^2) = 2/pi^2.
  const double pi = std::numbers::pi;
  const auto [sh, ch] = even_kernels(-pi * pi);
  EXPECT_NEAR(sh, 0.0, 1e-15);
  EXPECT_NEAR(ch, 2.0 / (pi * pi), 1e-15);
}

TEST(EvenKernels, ContinuousAcrossZero) {
  for (double w2 : {1e-8, -1e-8}) {
    const auto [sh, ch] = even_kernels(w2);
    const double w = std::sqrt(std::abs(w2));
    const double direct_sh = w2 > 0 ? std::sinh(w) / w : std::sin(w) / w;
    const double direct_ch = w2 > 0 ? 2 * std::pow(std::sinh(w / 2) / w, 2) : 2 * std::pow(std::sin(w / 2) / w, 2);
    EXPECT_NEAR(sh, direct_sh, 1e-12);
    EXPECT_NEAR(ch, direct_ch, 1e-12);
    const auto [sh2, ch2] = even_kernels(w2 * 1.5);
    EXPECT_NEAR(sh, sh2, 1e-8);
    EXPECT_NEAR(ch, ch2, 1e-8);
  }
}

// ---------- Z^-1(q) ----------

TEST(ZInverse, AtZeroMomentum) { EXPECT_DOUBLE_EQ(z_inverse_of({0, 0}, fparams({0.1, 0.2}, 0.05)), 1.0); }

TEST(ZInverse, SnyderTimelike) {
  const double m = 0.7, s = 0.1;
  EXPECT_NEAR(z_inverse_of({m, 0, 0}, fparams({0, 0, 0}, s)), std::sqrt(1 + s * m * m), 1e-15);
}

TEST(ZInverse, UndeformedIsOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(z_inverse_of(random_vector(rng, 3, 5), fparams({0, 0, 0}, 0)), 1.0);
}

TEST(ZInverse, NegativeRadicandIsDomainError) {
  // 1 + (a^2 - s) q^2 with a = 0, s = 1 and spacelike q^2 = 4.
  EXPECT_THROW(z_inverse_of({0, 2}, fparams({0, 0}, 1.0)), DomainError);
}

// ---------- flow ----------

TEST(Flow, BoundaryAtZeroTime) {
  const MomentumVector q = {0.7, 0.4};
  EXPECT_EQ(flow_closed_form({0.3, -0.2}, q, 0.0, fparams({0.1, 0}, 0.05)).p, q);
}

TEST(Flow, UndeformedIsStraightLine) {
  const MomentumVector k = {0.3, -0.2, 0.5}, q = {0.7, 0.4, -0.1};
  const auto p = flow_closed_form(k, q, 0.6, fparams({0, 0, 0}, 0)).p;
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(p[i], q[i] + 0.6 * k[i], 1e-15);
}

TEST(Flow, ExampleMatchesIntegrator) {
  const auto fp = fparams({0.1, 0}, 0.05);
  const MomentumVector k = {0.3, -0.2}, q = {0.7, 0.4};
  EXPECT_LT(max_abs_diff(flow_closed_form(k, q, 1, fp).p, flow_ode(k, q, 1, fp, 1000).p), 1e-9);
}

TEST(Flow, ZeroKIsStationary) {
  const MomentumVector q = {0.2, 0.3};
  EXPECT_EQ(flow_ode({0, 0}, q, 1, fparams({0.1, 0.1}, 0.1), 50).p, q);
}

TEST(Flow, ClosedFormMatchesIntegratorOnRandomSamples) {
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 3;
    const auto fp = random_params(rng, n);
    const auto k = random_vector(rng, n, 1), q = random_vector(rng, n, 1);
    worst = std::max(worst, max_abs_diff(flow_closed_form(k, q, 1, fp).p, flow_ode(k, q, 1, fp, 1000).p));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Flow, IntegratorIsFourthOrder) {
  const auto fp = fparams({0.15, -0.1, 0.05}, 0.12);
  const MomentumVector k = {0.9, -0.6, 0.8}, q = {0.5, 0.7, -0.9};
  const auto exact = flow_closed_form(k, q, 1, fp).p;
  const double e1 = max_abs_diff(flow_ode(k, q, 1, fp, 8).p, exact);
  const double e2 = max_abs_diff(flow_ode(k, q, 1, fp, 16).p, exact);
  EXPECT_GT(e1 / e2, 12);
  EXPECT_LT(e1 / e2, 20);
}

TEST(Flow, SatisfiesTheDifferentialEquation) {
  const auto fp = fparams({0.1, 0.05}, -0.08);
  const MomentumVector k = {0.4, -0.7}, q = {0.6, 0.3};
  const double h = 1e-5;
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    const auto plus = flow_closed_form(k, q, t + h, fp).p, minus = flow_closed_form(k, q, t - h, fp).p;
    const auto rhs = flow_rhs(k, flow_closed_form(k, q, t, fp).p, fp);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR((plus[i] - minus[i]) / (2 * h), rhs[i], 1e-9) << t;
  }
}

TEST(Flow, SemigroupProperty) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto fp = random_params(rng, 3);
    const auto k = random_vector(rng, 3, 1), q = random_vector(rng, 3, 1);
    const auto split = flow_closed_form(k, flow_closed_form(k, q, 0.35, fp).p, 0.4, fp).p;
    EXPECT_LT(max_abs_diff(split, flow_closed_form(k, q, 0.75, fp).p), 1e-9);
  }
}

// ---------- K ----------

TEST(BigK, UndeformedIsIdentity) {
  const MomentumVector k = {0.3, 0.2, -0.4};
  EXPECT_EQ(big_k(k, fparams({0, 0, 0}, 0)), k);
}

TEST(BigK, SnyderScalesBySinhc) {
  const double s = 0.15;
  const MomentumVector k = {0.3, 0.8};
  const double w2 = -s * dot(k, k);
  const double factor = w2 > 0 ? std::sinh(std::sqrt(w2)) / std::sqrt(w2) : std::sin(std::sqrt(-w2)) / std::sqrt(-w2);
  const auto K = big_k(k, fparams({0, 0}, s));
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(K[i], k[i] * factor, 1e-15);
}

TEST(BigK, ZeroMapsToZero) { EXPECT_EQ(big_k({0, 0}, fparams({0.1, 0.2}, 0.1)), MomentumVector({0, 0})); }

TEST(BigK, EqualsFlowFromZero) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto fp = random_params(rng, 3);
    const auto k = random_vector(rng, 3, 1);
    EXPECT_LT(max_abs_diff(big_k(k, fp), flow_closed_form(k, {0, 0, 0}, 1, fp).p), 1e-15);
  }
}

TEST(BigKInverse, UndeformedConvergesAtOnce) {
  const MomentumVector k = {0.3, -0.1};
  const auto r = big_k_inverse(k, fparams({0, 0}, 0));
  EXPECT_EQ(r.p, k);
  EXPECT_LE(r.diagnostics.iterations, 1);
}

TEST(BigKInverse, ZeroIsFixed) { EXPECT_EQ(big_k_inverse({0, 0, 0}, fparams({0.1, 0.1, 0}, 0.1)).p, MomentumVector({0, 0, 0})); }

TEST(BigKInverse, RoundTripOnRandomSamples) {
  std::mt19937_64 rng(77);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 3;
    const auto fp = random_params(rng, n);
    const auto k = random_vector(rng, n, 0.5);
    worst = std::max(worst, max_abs_diff(big_k_inverse(big_k(k, fp), fp).p, k));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(BigKInverse, TooFewIterationsReportNoConvergence) {
  EXPECT_THROW(big_k_inverse({0.8, 0.5}, fparams({0.2, 0.1}, 0.2), 1e-12, 1), NoConvergence);
}

// ---------- identities for K^-1 ----------

TEST(KIdentities, Undeformed) {
  const auto id = check_k_identities({0.3, 0.4}, fparams({0, 0}, 0));
  EXPECT_DOUBLE_EQ(id.z_lhs, 1.0);
  EXPECT_DOUBLE_EQ(id.z_rhs, 1.0);
  EXPECT_NEAR(id.box_lhs, -dot({0.3, 0.4}, {0.3, 0.4}), 1e-15);
  EXPECT_NEAR(id.box_rhs, id.box_lhs, 1e-15);
}

TEST(KIdentities, Example) {
  const auto id = check_k_identities({0.4, 0.1}, fparams({0.1, 0.05}, 0.03));
  EXPECT_LT(id.z_error(), 1e-9);
  EXPECT_LT(id.box_error(), 1e-9);
}

TEST(KIdentities, SnyderReduction) {
  const double s = 0.1;
  const MomentumVector k = {0.5, 0.3, 0.2};
  const auto fp = fparams({0, 0, 0}, s);
  const auto id = check_k_identities(k, fp);
  EXPECT_NEAR(id.z_lhs, std::sqrt(1 - s * dot(k, k)), 1e-15);
  const double w2 = -s * dot(id.k_inverse, id.k_inverse);
  const double cosh_w = w2 > 0 ? std::cosh(std::sqrt(w2)) : std::cos(std::sqrt(-w2));
  EXPECT_NEAR(id.z_lhs, cosh_w, 1e-10);
}

TEST(KIdentities, RandomSamples) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 3;
    const auto fp = random_params(rng, n);
    const auto id = check_k_identities(random_vector(rng, n, 0.5), fp);
    EXPECT_LT(id.z_error(), 1e-9);
    EXPECT_LT(id.box_error(), 1e-9);
  }
}

// ---------- mass shell ----------

TEST(MassShell, OnShellRestFrame) { EXPECT_DOUBLE_EQ(mass_shell({1.3, 0, 0}, 1.3), 0.0); }

TEST(MassShell, Massless) { EXPECT_DOUBLE_EQ(mass_shell({0, 0}, 0), 0.0); }

TEST(MassShell, IndependentOfDeformation) {
  // The dispersion relation takes no deformation input at all; the closed-form box does.
  const MomentumVector k = {0.4, 0.3};
  const double h = 1e-6;
  const auto box_at = [&](double s) { return box_of(k, fparams({0.1, 0}, s)); };
  EXPECT_GT(std::abs(box_at(0.1 + h) - box_at(0.1 - h)) / (2 * h), 1e-4);
  EXPECT_DOUBLE_EQ(mass_shell(k, 0.5), dot(k, k) + 0.25);
}

// ---------- nested-commutator cross-check ----------

TEST(Bch, MatchesExactlyThroughThirdOrder) {
  const Realization r(RealizationSpec(params({q(1, 10), q(1, 20), q(-1, 30)}, q(3, 100)), FKind::sqrt_one_minus_B, 8));
  for (int order = 1; order <= 3; ++order) {
    const auto rep = bch_cross_check({0.2, 0.1, -0.3}, {0.1, -0.2, 0.05}, r, order);
    EXPECT_TRUE(rep.exact_match) << order;
    EXPECT_GT(rep.coefficients_compared, 0u);
    EXPECT_EQ(rep.mismatches, 0u);
  }
}

TEST(Bch, ZeroKAndUndeformed) {
  const Realization flat(RealizationSpec(DeformationParams::undeformed(2), FKind::sqrt_one_minus_B, 8));
  EXPECT_TRUE(bch_cross_check({0.3, 0.2}, {0.1, 0.1}, flat, 3).exact_match);
  const Realization r(RealizationSpec(params({q(1, 3), q(0)}, q(1, 5)), FKind::sqrt_one_minus_B, 8));
  const auto rep = bch_cross_check({0, 0}, {0.2, 0.1}, r, 3);
  EXPECT_TRUE(rep.exact_match);
  EXPECT_EQ(rep.max_abs_err, 0.0);
}

TEST(Bch, RequiresSquareRootF) {
  const Realization r(RealizationSpec(params({q(1, 3), q(0)}, q(1, 5)), FKind::unity, 8));
  EXPECT_THROW(bch_cross_check({0.1, 0.1}, {0.1, 0.1}, r, 2), DomainError);
}
