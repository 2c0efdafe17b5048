#include <gtest/gtest.h>

#include "ncdeform/dseries.hpp"
#include "ncdeform/errors.hpp"
#include "ncdeform/realization.hpp"
#include "test_support.hpp"

using namespace ncdeform;
using namespace ncdeform::testing;

namespace {

constexpr int kTrunc = 8;
constexpr int kMaxDeg = 6;

Realization make(std::vector<mpq_class> a, mpq_class s, FKind kind = FKind::sqrt_one_minus_B,
                 std::vector<mpq_class> custom = {}) {
  return Realization(RealizationSpec(params(std::move(a), std::move(s)), kind, kTrunc, std::move(custom)));
}

void expect_all_pass(const VerificationReport& rep) {
  EXPECT_GT(rep.entries().size(), 0u);
  for (const auto& e : rep.entries()) {
    EXPECT_TRUE(e.passed) << e.identity << " " << e.detail;
  }
}

// Exact-zero test at the operator level through the realization's truncation.
bool vanishes(const WeylElement& w, int through = kMaxDeg) {
  return w.precision() >= through && w.truncated(through).is_zero();
}

}  // namespace

// ---------- f and gamma_2 ----------

TEST(Gamma2, VanishesForSquareRoot) {
  const auto g = gamma2_from_f(f_series(FKind::sqrt_one_minus_B, 6));
  for (int m = 0; m <= 5; ++m) EXPECT_EQ(g[m], 0) << m;
}

TEST(Gamma2, MinusOneForUnitF) {
  const auto g = gamma2_from_f(f_series(FKind::unity, 6));
  EXPECT_EQ(g[0], -1);
  for (int m = 1; m <= 5; ++m) EXPECT_EQ(g[m], 0) << m;
}

TEST(Gamma2, LinearFMatchesSeriesDivision) {
  // f = 1 - t/2: gamma_2 = -(t/2)/(1 + t/2) = sum_{m>=1} (-1)^m t^m / 2^m.
  const auto g = gamma2_from_f(f_series(FKind::custom, 6, {1, mpq_class(-1, 2)}));
  EXPECT_EQ(g[0], 0);
  for (int m = 1; m <= 5; ++m) {
    EXPECT_EQ(g[m], m % 2 == 1 ? mpq_class(-1, 1 << m) : mpq_class(1, 1 << m)) << m;
  }
}

TEST(RealizationSpec, RejectsFWithoutUnitConstant) {
  EXPECT_THROW(RealizationSpec(params({q(0), q(0)}, 0), FKind::custom, kTrunc, {2}), DomainError);
}

// ---------- x-hat ----------

TEST(BuildXhat, UndeformedIsX) {
  for (FKind kind : {FKind::sqrt_one_minus_B, FKind::unity}) {
    const RealizationSpec spec(DeformationParams::undeformed(3), kind, kTrunc);
    for (int mu = 0; mu < 3; ++mu) EXPECT_TRUE(vanishes(build_xhat(spec, mu) - WeylElement::X(3, mu), kTrunc));
  }
  const RealizationSpec custom(DeformationParams::undeformed(2), FKind::custom, kTrunc, {1, 3, -2});
  for (int mu = 0; mu < 2; ++mu) EXPECT_TRUE(vanishes(build_xhat(custom, mu) - WeylElement::X(2, mu), kTrunc));
}

TEST(BuildXhat, SnyderSquareRoot) {
  const auto p = params({q(0), q(0), q(0)}, q(1, 5));
  const RealizationSpec spec(p, FKind::sqrt_one_minus_B, kTrunc);
  // sqrt(1 + s D.D) as a power series in s D.D.
  DSeries root = DSeries::constant(3, kTrunc, 0), power = DSeries::constant(3, kTrunc, 1);
  mpq_class c = 1;
  for (int m = 0; 2 * m <= kTrunc; ++m) {
    root += power * ExactScalar(c);
    power = (power * d_squared(3) * ExactScalar(p.s())).truncated(kTrunc);
    c *= mpq_class(1, 2) - m;
    c /= m + 1;
  }
  for (int mu = 0; mu < 3; ++mu) {
    const WeylElement expected = normal_product(WeylElement::X(3, mu), root.to_weyl());
    EXPECT_TRUE(vanishes(build_xhat(spec, mu) - expected, kTrunc)) << mu;
  }
}

TEST(BuildXhat, SnyderUnitF) {
  const auto p = params({q(0), q(0)}, q(1, 7));
  const RealizationSpec spec(p, FKind::unity, kTrunc);
  WeylElement xd(2);
  for (int a = 0; a < 2; ++a) xd += normal_product(WeylElement::X(2, a), WeylElement::D(2, a)) * ExactScalar(eta(a));
  for (int mu = 0; mu < 2; ++mu) {
    const WeylElement expected = WeylElement::X(2, mu) - normal_product(xd, WeylElement::D(2, mu)) * ExactScalar(p.s());
    EXPECT_TRUE(vanishes(build_xhat(spec, mu) - expected, kTrunc));
  }
}

TEST(BuildXhat, PhiAtZeroIsTheMetric) {
  const Realization r = make({q(1, 3), q(-2, 7), q(1, 4)}, q(1, 5));
  for (int a = 0; a < 3; ++a) {
    for (int mu = 0; mu < 3; ++mu) {
      EXPECT_EQ(r.Phi(a, mu).series().constant_term(), ExactScalar(a == mu ? eta(a) : 0));
    }
  }
}

// ---------- Lorentz generators ----------

TEST(BuildM, DiagonalIsZero) {
  for (int mu = 0; mu < 3; ++mu) EXPECT_TRUE(build_M(3, mu, mu).is_zero());
}

TEST(BuildM, LorentzAlgebraSample) {
  // [M_01, M_12] = eta_11 M_02 by direct expansion.
  EXPECT_EQ(commutator(build_M(3, 0, 1), build_M(3, 1, 2)), build_M(3, 0, 2));
  EXPECT_NE(commutator(build_M(3, 0, 1), build_M(3, 1, 2)), -build_M(3, 0, 2));
}

TEST(BuildM, AnnihilatesVacuum) { EXPECT_TRUE(apply(build_M(2, 0, 1), Polynomial::constant(2, 1)).is_zero()); }

// ---------- axiom suite ----------

TEST(Axioms, UndeformedPassesAndCoordinatesCommute) {
  const Realization r(RealizationSpec(DeformationParams::undeformed(3), FKind::sqrt_one_minus_B, kTrunc));
  expect_all_pass(check_axioms(r, kMaxDeg));
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) EXPECT_TRUE(commutator(r.xhat(mu), r.xhat(nu)).is_zero());
  }
}

TEST(Axioms, CoordinateCommutatorExample) {
  const Realization r = make({q(1, 3), q(0)}, q(1, 5));
  const auto& p = r.spec().params();
  const WeylElement lhs = commutator(r.xhat(0), r.xhat(1), kTrunc);
  const WeylElement rhs =
      (r.xhat(1) * ExactScalar(p.a(0)) - r.xhat(0) * ExactScalar(p.a(1))) * ExactScalar::i() + r.M(0, 1) * ExactScalar(p.s());
  EXPECT_TRUE(vanishes(lhs - rhs));
  // A flipped sign on the Snyder term must not pass.
  const WeylElement wrong = rhs - r.M(0, 1) * ExactScalar(2 * p.s());
  EXPECT_FALSE(vanishes(lhs - wrong));
}

TEST(Axioms, TrilinearIdentity) {
  const Realization r = make({q(1, 3), q(-1, 4), q(1, 6)}, q(2, 9));
  const auto& p = r.spec().params();
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      for (int la = 0; la < 3; ++la) {
        const WeylElement lhs = commutator(commutator(r.xhat(mu), r.xhat(nu), kTrunc + 1), r.xhat(la), kTrunc);
        const WeylElement rhs =
            (r.xhat(nu) * ExactScalar(p.a(mu)) - r.xhat(mu) * ExactScalar(p.a(nu))) * ExactScalar(p.a(la)) +
            (r.xhat(mu) * ExactScalar(la == nu ? eta(nu) : 0) - r.xhat(nu) * ExactScalar(la == mu ? eta(mu) : 0)) *
                ExactScalar(p.s());
        EXPECT_TRUE(vanishes(lhs - rhs)) << mu << nu << la;
      }
    }
  }
}

TEST(Axioms, FullSuiteSquareRootAndUnitF) {
  for (FKind kind : {FKind::sqrt_one_minus_B, FKind::unity}) {
    expect_all_pass(check_axioms(make({q(1, 3), q(-2, 7), q(1, 5)}, q(1, 5), kind), kMaxDeg));
  }
}

TEST(Axioms, CustomFSatisfiesTheSuite) {
  expect_all_pass(check_axioms(make({q(1, 4), q(1, 3)}, q(-1, 6), FKind::custom, {1, mpq_class(-1, 2), mpq_class(1, 5)}), kMaxDeg));
}

TEST(Axioms, LightlikeAndTimelikeCovectors) {
  expect_all_pass(check_axioms(make({q(1, 2), q(1, 2)}, q(1, 3)), kMaxDeg));
  expect_all_pass(check_axioms(make({q(1, 2), q(0)}, q(-1, 4)), kMaxDeg));
}

TEST(Axioms, ReportJsonMarksExactPasses) {
  const auto j = check_axioms(make({q(1, 3), q(0)}, q(1, 5)), kMaxDeg).to_json();
  ASSERT_TRUE(j.is_array());
  for (const auto& e : j) {
    EXPECT_EQ(e.at("status"), "exact-pass");
    EXPECT_TRUE(e.contains("identity"));
    EXPECT_TRUE(e.contains("indices"));
  }
}

TEST(VerificationReport, RecordsWitnessOnFailure) {
  VerificationReport rep;
  const WeylElement diff = normal_product(WeylElement::X(2, 0), WeylElement::D(2, 1)) + WeylElement::D(2, 0);
  EXPECT_FALSE(record_zero(rep, "bogus", {0}, diff, 4));
  ASSERT_EQ(rep.failures(), 1u);
  ASSERT_TRUE(rep.entries()[0].witness.has_value());
  EXPECT_EQ(rep.to_json()[0].at("status"), "fail");
  // Too little precision also fails, even when nothing nonzero is stored.
  EXPECT_FALSE(record_zero(rep, "short", {}, WeylElement(2, 3), 4));
}

// ---------- shift operator ----------

TEST(ShiftOperator, UndeformedIsOne) {
  const Realization r(RealizationSpec(DeformationParams::undeformed(2), FKind::sqrt_one_minus_B, kTrunc));
  const auto [zinv, z] = r.Z_pair();
  EXPECT_TRUE(z.agrees_with(DSeries::constant(2, kTrunc, 1)));
  EXPECT_TRUE(zinv.agrees_with(DSeries::constant(2, kTrunc, 1)));
}

TEST(ShiftOperator, LightlikeSpecializationIsOneMinusA) {
  // s = a^2 with a = (1/2, 1/3): a^2 = -1/4 + 1/9.
  const mpq_class a2 = q(-1, 4) + q(1, 9);
  const Realization r = make({q(1, 2), q(1, 3)}, a2);
  const auto [zinv, z] = r.Z_pair();
  EXPECT_TRUE(zinv.agrees_with(DSeries::constant(2, kTrunc, 1) - variable_A(r.spec().params())));
}

TEST(ShiftOperator, SymmetricSandwichOnMonomials) {
  const Realization r = make({q(1, 3), q(-1, 5), q(1, 7)}, q(1, 4));
  const WeylElement z = r.Z_pair().second.to_weyl();
  for (const auto& m : monomials_upto(3, kMaxDeg)) {
    const Polynomial p = Polynomial::monomial(3, m);
    for (int mu = 0; mu < 3; ++mu) {
      for (int nu = mu + 1; nu < 3; ++nu) {
        const auto lhs = apply(r.xhat(mu), apply(z, apply(r.xhat(nu), p)));
        const auto rhs = apply(r.xhat(nu), apply(z, apply(r.xhat(mu), p)));
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
}

TEST(ShiftOperator, FullSuite) {
  expect_all_pass(check_z_suite(make({q(1, 3), q(-2, 7), q(1, 5)}, q(1, 5)), kMaxDeg));
  expect_all_pass(check_z_suite(make({q(1, 2), q(1, 3)}, q(-1, 4) + q(1, 9)), kMaxDeg));
}

TEST(ShiftOperator, NeedsSquareRootF) {
  EXPECT_THROW(make({q(1, 3), q(0)}, q(1, 5), FKind::unity).Z_pair(), DomainError);
}

// ---------- d'Alembertian ----------

TEST(Box, SquareRootClosedFormCoefficients) {
  // 2(1 - sqrt(1 - t))/t = sum_m c_m t^m with c_m = -2 binomial(1/2, m+1)(-1)^{m+1}.
  const auto f = f_series(FKind::sqrt_one_minus_B, 6);
  const auto h = box_generator(f, gamma2_from_f(f));
  mpq_class b = 1;
  for (int m = 0; m <= 4; ++m) {
    b *= mpq_class(1, 2) - m;
    b /= m + 1;
    mpq_class expected = -2 * b * ((m + 1) % 2 == 1 ? -1 : 1);
    expected.canonicalize();
    EXPECT_EQ(h[m + 1], expected) << m;
  }
  EXPECT_EQ(h[0], 0);
  EXPECT_EQ(h[1], 1);
}

TEST(Box, DAlembertianIdentities) {
  for (FKind kind : {FKind::sqrt_one_minus_B, FKind::unity}) {
    const Realization r = make({q(1, 3), q(-2, 7), q(1, 5)}, q(1, 5), kind);
    const WeylElement box = r.box().to_weyl();
    for (int mu = 0; mu < 3; ++mu) {
      EXPECT_TRUE(vanishes(commutator(box, r.xhat(mu)) - r.D(mu) * ExactScalar(2)));
      EXPECT_FALSE(vanishes(commutator(box, r.xhat(mu)) - r.D(mu)));
    }
    expect_all_pass(check_box(r, kMaxDeg));
  }
}

TEST(Box, LightlikeAndUndeformedGiveDSquared) {
  const Realization light = make({q(1, 2), q(1, 3)}, q(-1, 4) + q(1, 9));
  EXPECT_TRUE(light.box().agrees_with(d_squared(2)));
  const Realization flat(RealizationSpec(DeformationParams::undeformed(2), FKind::sqrt_one_minus_B, kTrunc));
  EXPECT_TRUE(flat.box().agrees_with(d_squared(2)));
}

// ---------- inverse realization ----------

TEST(InverseRealization, UndeformedIsIdentity) {
  const Realization r(RealizationSpec(DeformationParams::undeformed(3), FKind::unity, kTrunc));
  for (int mu = 0; mu < 3; ++mu) EXPECT_TRUE(vanishes(r.inverse_realization(mu) - r.X(mu)));
}

TEST(InverseRealization, RecoversCoordinates) {
  for (FKind kind : {FKind::sqrt_one_minus_B, FKind::unity}) {
    expect_all_pass(check_inverse_realization(make({q(1, 3), q(-1, 4), q(1, 5)}, q(1, 6), kind), kMaxDeg));
  }
}

// ---------- invariants ----------

TEST(Invariants, UndeformedI2IsXDotX) {
  const Realization r(RealizationSpec(DeformationParams::undeformed(3), FKind::sqrt_one_minus_B, kTrunc));
  const auto res = invariant_I2(r);
  expect_all_pass(res.report);
  for (const auto& [w, c] : res.expression) EXPECT_EQ(w.degree(), 2);
}

TEST(Invariants, KappaI2InFourDimensions) {
  const Realization r = make({q(1, 2), q(0), q(0), q(0)}, 0);
  const auto res = invariant_I2(r);
  expect_all_pass(res.report);
  // Linear part -3i a^0 xhat_0 with a^0 = -1/2.
  EXPECT_EQ(res.expression.at(MultiIndex({1, 0, 0, 0})), ExactScalar(mpq_class(0), mpq_class(3, 2)));
}

TEST(Invariants, TensorDemo) {
  for (FKind kind : {FKind::sqrt_one_minus_B, FKind::unity}) {
    expect_all_pass(tensor_demo(make({q(1, 3), q(-1, 4), q(1, 5)}, q(1, 6), kind)));
  }
}

TEST(Invariants, WordsOnVacuum) {
  const Realization r = make({q(1, 3), q(0)}, q(1, 5));
  EXPECT_EQ(word_on_vacuum(r, MultiIndex({0, 1})), Polynomial::variable(2, 1));
  const auto back = nc_from_commutative(r, Polynomial::variable(2, 0) * Polynomial::variable(2, 1));
  EXPECT_EQ(apply(nc_to_operator(r, back), Polynomial::constant(2, 1)), Polynomial::variable(2, 0) * Polynomial::variable(2, 1));
}

// ---------- Snyder map ----------

TEST(SnyderMap, ZeroCovectorIsIdentity) {
  const Realization r = make({q(0), q(0), q(0)}, q(1, 5));
  for (int mu = 0; mu < 3; ++mu) EXPECT_TRUE(vanishes(r.snyder_coordinate(mu) - r.xhat(mu), kTrunc));
}

TEST(SnyderMap, LightlikeGivesCommutingCoordinates) {
  const Realization r = make({q(1, 2), q(1, 3)}, q(-1, 4) + q(1, 9), FKind::unity);
  EXPECT_TRUE(vanishes(commutator(r.snyder_coordinate(0), r.snyder_coordinate(1), kTrunc)));
}

TEST(SnyderMap, AllIdentitiesBothF) {
  for (FKind kind : {FKind::sqrt_one_minus_B, FKind::unity}) {
    expect_all_pass(check_snyder_map(make({q(1, 4), q(1, 5), q(0)}, q(1, 7), kind), kMaxDeg));
  }
}
