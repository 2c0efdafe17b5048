#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ncdeform/coalgebra_star.hpp"
#include "ncdeform/errors.hpp"
#include "ncdeform/momentum_flow.hpp"
#include "test_support.hpp"

using namespace ncdeform;
using namespace ncdeform::testing;

namespace {

constexpr int kOrder = 6;

MomentumVector random_vector(std::mt19937_64& rng, int n, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  MomentumVector v(static_cast<std::size_t>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

TruncatedSeries variable(int n, int mu) { return TruncatedSeries::variable(n, kOrder, mu); }

MultiIndex unit(int n, int mu) { return MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(mu)); }

const DeformationParams& general3() {
  static const DeformationParams p = params({q(1, 10), q(-1, 20), q(1, 30)}, q(3, 100));
  return p;
}

}  // namespace

// ---------- K as a series ----------

TEST(KSeries, UndeformedIsIdentity) {
  const auto K = k_series(DeformationParams::undeformed(3), kOrder);
  for (int mu = 0; mu < 3; ++mu) EXPECT_TRUE(K[static_cast<std::size_t>(mu)].agrees_with(variable(3, mu)));
}

TEST(KSeries, SnyderCubicTerm) {
  // a = 0: K_mu = k_mu (1 - s k^2 / 6 + ...), k^2 = -k_0^2 + k_1^2.
  const auto p = params({q(0), q(0)}, q(1, 5));
  const auto K = k_series(p, kOrder);
  EXPECT_EQ(K[0].coeff(MultiIndex({3, 0})), ExactScalar(mpq_class(1, 30)));
  EXPECT_EQ(K[0].coeff(MultiIndex({1, 2})), ExactScalar(mpq_class(-1, 30)));
  EXPECT_EQ(K[1].coeff(MultiIndex({0, 3})), ExactScalar(mpq_class(-1, 30)));
}

TEST(KSeries, MatchesFiniteDifferencesOfTheFloatMap) {
  const auto& p = general3();
  const auto fp = FloatParams::from_exact(p);
  const auto K = k_series(p, kOrder);
  // Third directional derivative along e_0 at k = 0 equals 3! times the k_0^3 coefficient.
  const double h = 1e-2;
  for (int mu = 0; mu < 3; ++mu) {
    auto at = [&](double t) { return big_k({t, 0, 0}, fp)[static_cast<std::size_t>(mu)]; };
    const double third = (at(2 * h) - 2 * at(h) + 2 * at(-h) - at(-2 * h)) / (2 * h * h * h);
    const double coeff = K[static_cast<std::size_t>(mu)].coeff(MultiIndex({3, 0, 0})).re().get_d();
    EXPECT_NEAR(third / 6, coeff, 1e-5) << mu;
    EXPECT_NEAR(evaluate(K[static_cast<std::size_t>(mu)], {0.01, -0.02, 0.015}).real(),
                big_k({0.01, -0.02, 0.015}, fp)[static_cast<std::size_t>(mu)], 1e-14);
  }
}

TEST(KSeriesInverse, UndeformedIsIdentity) {
  const auto Kinv = k_series_inverse(DeformationParams::undeformed(2), kOrder);
  for (int mu = 0; mu < 2; ++mu) EXPECT_TRUE(Kinv[static_cast<std::size_t>(mu)].agrees_with(variable(2, mu)));
}

TEST(KSeriesInverse, ComposesToIdentity) {
  const auto& p = general3();
  const auto K = k_series(p, kOrder), Kinv = k_series_inverse(p, kOrder);
  for (int mu = 0; mu < 3; ++mu) {
    EXPECT_TRUE(substitute(K[static_cast<std::size_t>(mu)], Kinv, kOrder).agrees_with(variable(3, mu)));
  }
}

TEST(KSeriesInverse, AgreesWithNewton) {
  const auto p = params({q(1, 10), q(1, 20)}, q(3, 100));
  const auto fp = FloatParams::from_exact(p);
  const auto Kinv = k_series_inverse(p, 8);
  const MomentumVector k = {0.1, 0.05};
  const auto newton = big_k_inverse(k, fp).p;
  for (int mu = 0; mu < 2; ++mu) EXPECT_NEAR(evaluate(Kinv[static_cast<std::size_t>(mu)], k).real(), newton[static_cast<std::size_t>(mu)], 1e-8);
}

// ---------- deformed addition ----------

TEST(DSum, BoundaryConditions) {
  const auto& p = general3();
  const auto d = dsum_series(p, kOrder);
  for (int mu = 0; mu < 3; ++mu) {
    const auto& dm = d[static_cast<std::size_t>(mu)];
    EXPECT_TRUE(dm.at_k_zero().agrees_with(variable(3, mu))) << mu;
    EXPECT_TRUE(dm.at_q_zero().agrees_with(variable(3, mu))) << mu;
  }
}

TEST(DSum, BilinearCoefficientsMatchFirstOrderCoproduct) {
  // Coefficient of k_alpha q_beta in D_mu equals d/dk_alpha d/dq_beta of k_mu (a.q) - a_mu (k.q).
  const auto& p = general3();
  const auto d = dsum_series(p, kOrder);
  for (int mu = 0; mu < 3; ++mu) {
    for (int al = 0; al < 3; ++al) {
      for (int be = 0; be < 3; ++be) {
        mpq_class expected = 0;
        if (al == mu) expected += p.a_upper(be);
        if (al == be) expected -= p.a(mu) * eta(al);
        EXPECT_EQ(d[static_cast<std::size_t>(mu)].coefficient(unit(3, al), unit(3, be)), ExactScalar(expected));
      }
    }
  }
}

TEST(DSum, ExactAndFloatPathsAgree) {
  std::mt19937_64 rng(4);
  const auto& p = general3();
  const auto fp = FloatParams::from_exact(p);
  const auto d = dsum_series(p, 10);
  for (int i = 0; i < 10; ++i) {
    const auto k = random_vector(rng, 3, 0.1), q = random_vector(rng, 3, 0.1);
    const auto f = star_plane_waves(k, q, fp);
    for (int mu = 0; mu < 3; ++mu) {
      const auto v = d[static_cast<std::size_t>(mu)].evaluate(k, q);
      EXPECT_NEAR(v.real(), f[static_cast<std::size_t>(mu)], 1e-8);
      EXPECT_EQ(v.imag(), 0.0);
    }
  }
}

TEST(DSum, JsonIsDeterministicAndOrdered) {
  const auto d = dsum_series(params({q(1, 3), q(0)}, q(1, 5)), 3);
  const auto j = d[0].to_json();
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.dump(), dsum_series(params({q(1, 3), q(0)}, q(1, 5)), 3)[0].to_json().dump());
  for (const auto& term : j) {
    EXPECT_TRUE(term.contains("k_exp"));
    EXPECT_TRUE(term.contains("q_exp"));
    EXPECT_TRUE(term.at("coeff").is_string());
  }
}

// ---------- second-order coproduct ----------

TEST(Coproduct, ZerothOrderIsPlainSum) {
  const MomentumVector k = {0.01, -0.004, 0.007}, q = {0.003, 0.008, -0.006};
  const auto t = coproduct_terms(k, q, FloatParams::from_exact(general3()));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(t.order0[i], k[i] + q[i]);
}

TEST(Coproduct, EpsilonFitOnRandomPairs) {
  std::mt19937_64 rng(12);
  const auto fp = FloatParams::from_exact(general3());
  for (int i = 0; i < 20; ++i) {
    const auto fit = coproduct_check(fp, random_vector(rng, 3, 0.01), random_vector(rng, 3, 0.01));
    EXPECT_LT(fit.rel_err0, 1e-6);
    EXPECT_LT(fit.rel_err1, 1e-6);
    EXPECT_LT(fit.rel_err2, 1e-5);
    EXPECT_GT(fit.residual_ratio, 6.0);
    EXPECT_LT(fit.residual_ratio, 10.0);
  }
}

TEST(Coproduct, WrongFirstOrderSignIsDetected) {
  const auto fp = FloatParams::from_exact(general3());
  const MomentumVector k = {0.01, -0.004, 0.007}, q = {0.003, 0.008, -0.006};
  const auto fit = coproduct_check(fp, k, q);
  MomentumVector flipped = fit.expected.order1;
  for (auto& x : flipped) x = -x;
  EXPECT_GT(max_abs_diff(fit.fitted.order1, flipped), 1e3 * max_abs_diff(fit.fitted.order1, fit.expected.order1));
}

// ---------- closed-form special cases ----------

TEST(SpecialCoproducts, SnyderClosedForm) {
  const auto p = params({q(0), q(0), q(0)}, q(1, 7));
  const MomentumVector k = {0.3, -0.2, 0.1}, q = {0.1, 0.25, -0.3};
  const auto rep = special_coproducts(p, k, q, kOrder);
  EXPECT_EQ(rep.kind, "snyder");
  EXPECT_TRUE(rep.series_match);
  EXPECT_LT(rep.float_err, 1e-10);
  // By hand, with k^2 = -k_0^2 + k_1^2 + k_2^2.
  const double s = 1.0 / 7, kq = dot(k, q), kk = dot(k, k), qq = dot(q, q);
  const auto d = star_plane_waves(k, q, FloatParams::from_exact(p));
  for (std::size_t i = 0; i < 3; ++i) {
    const double by_hand = k[i] * std::sqrt(1 - s * qq) + q[i] - s * k[i] * kq / (1 + std::sqrt(1 - s * kk));
    EXPECT_NEAR(d[i], by_hand, 1e-10);
  }
}

TEST(SpecialCoproducts, KappaClosedFormAndMultiplicativeZ) {
  const auto p = params({q(1, 10), q(1, 20), q(-1, 15)}, 0);
  const MomentumVector k = {0.3, -0.2, 0.1}, q = {0.1, 0.25, -0.3};
  const auto rep = special_coproducts(p, k, q, kOrder);
  EXPECT_EQ(rep.kind, "kappa");
  EXPECT_TRUE(rep.series_match);
  EXPECT_LT(rep.float_err, 1e-10);
  EXPECT_LT(rep.z_product_err, 1e-10);
}

TEST(SpecialCoproducts, KappaWithZeroSecondArgument) {
  const FloatParams fp = FloatParams::from_exact(params({q(1, 10), q(1, 20)}, 0));
  const MomentumVector k = {0.3, -0.2};
  EXPECT_LT(max_abs_diff(kappa_dsum(k, {0, 0}, fp), k), 1e-15);
}

TEST(SpecialCoproducts, RejectsGeneralParameters) {
  EXPECT_THROW(special_coproducts(general3(), {0.1, 0, 0}, {0, 0.1, 0}, 4), DomainError);
  EXPECT_THROW(snyder_dsum_series(general3(), 4), DomainError);
  EXPECT_THROW(kappa_dsum_series(general3(), 4), DomainError);
}

// ---------- plane waves ----------

TEST(StarPlaneWaves, ZeroSecondMomentum) {
  const auto fp = FloatParams::from_exact(general3());
  const MomentumVector k = {0.2, 0.1, -0.3};
  EXPECT_LT(max_abs_diff(star_plane_waves(k, {0, 0, 0}, fp), k), 1e-12);
}

TEST(StarPlaneWaves, UndeformedAddsMomenta) {
  const auto d = star_plane_waves({0.2, 0.1}, {0.3, -0.4}, FloatParams::make({0, 0}, 0));
  EXPECT_NEAR(d[0], 0.5, 1e-15);
  EXPECT_NEAR(d[1], -0.3, 1e-15);
}

TEST(StarPlaneWaves, KappaMatchesClosedForm) {
  const auto fp = FloatParams::from_exact(params({q(1, 10), q(1, 20)}, 0));
  const MomentumVector k = {0.4, -0.3}, q = {0.2, 0.5};
  EXPECT_LT(max_abs_diff(star_plane_waves(k, q, fp), kappa_dsum(k, q, fp)), 1e-10);
}

// ---------- polynomial star product ----------

TEST(StarPolynomials, Unital) {
  const auto d = dsum_series(general3(), kOrder);
  const Polynomial one = Polynomial::constant(3, 1);
  for (const auto& m : monomials_upto(3, 3)) {
    const Polynomial f = Polynomial::monomial(3, m, ExactScalar(mpq_class(2, 3)));
    EXPECT_EQ(star_polynomials(one, f, d), f);
    EXPECT_EQ(star_polynomials(f, one, d), f);
  }
}

TEST(StarPolynomials, UndeformedIsPointwise) {
  const auto d = dsum_series(DeformationParams::undeformed(2), kOrder);
  for (const auto& m1 : monomials_upto(2, 3)) {
    for (const auto& m2 : monomials_upto(2, 3)) {
      const Polynomial f = Polynomial::monomial(2, m1), g = Polynomial::monomial(2, m2);
      EXPECT_EQ(star_polynomials(f, g, d), f * g);
    }
  }
}

TEST(StarPolynomials, CoordinateCommutator) {
  const auto& p = general3();
  const auto d = dsum_series(p, kOrder);
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      const Polynomial xm = Polynomial::variable(3, mu), xn = Polynomial::variable(3, nu);
      const Polynomial lhs = star_polynomials(xm, xn, d) - star_polynomials(xn, xm, d);
      const Polynomial rhs = (xn * ExactScalar(p.a(mu)) - xm * ExactScalar(p.a(nu))) * ExactScalar::i();
      EXPECT_EQ(lhs, rhs) << mu << nu;
      if (mu != nu) EXPECT_NE(lhs, -rhs);
    }
  }
}

TEST(StarPolynomials, Bilinear) {
  const auto d = dsum_series(general3(), kOrder);
  const Polynomial x0 = Polynomial::variable(3, 0), x1 = Polynomial::variable(3, 1), x2 = Polynomial::variable(3, 2);
  const Polynomial f = x0 * x1, g = x2 + x0 * ExactScalar(3);
  const ExactScalar c = ExactScalar::parse("1/2-2*i");
  EXPECT_EQ(star_polynomials(f * c + x2, g, d), star_polynomials(f, g, d) * c + star_polynomials(x2, g, d));
}

TEST(StarPolynomials, DegreeOverflowThrows) {
  const auto d = dsum_series(general3(), 3);
  const Polynomial x0 = Polynomial::variable(3, 0);
  EXPECT_THROW(star_polynomials(x0 * x0, x0 * x0, d), DomainError);
}

// ---------- coassociativity ----------

TEST(Associativity, UndeformedHasNoDefect) {
  EXPECT_LT(associativity_defect({0.1, 0.2}, {0.3, -0.1}, {0.2, 0.2}, FloatParams::make({0, 0}, 0)), 1e-15);
}

TEST(Associativity, KappaIsCoassociative) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 3;
    std::vector<double> a(static_cast<std::size_t>(n));
    for (auto& x : a) x = u(rng);
    const auto fp = FloatParams::make(a, 0);
    EXPECT_LT(associativity_defect(random_vector(rng, n, 0.3), random_vector(rng, n, 0.3), random_vector(rng, n, 0.3), fp), 1e-9);
  }
}

TEST(Associativity, DefectVanishesLinearlyWithDeformation) {
  const MomentumVector k = {0.2, 0.1, -0.25}, q = {-0.1, 0.3, 0.2}, r = {0.15, -0.2, 0.1};
  auto defect = [&](double lambda) { return associativity_defect(k, q, r, FloatParams::make({0.1 * lambda, 0.05 * lambda, 0}, 0.2 * lambda)); };
  EXPECT_GT(defect(1.0), 1e-6);
  const double ratio = defect(1e-2) / defect(5e-3);
  EXPECT_NEAR(ratio, 2.0, 0.2);
}
