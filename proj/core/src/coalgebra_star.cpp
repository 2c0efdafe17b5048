#include "ncdeform/coalgebra_star.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ncdeform/errors.hpp"

namespace ncdeform {

namespace {

using Covector = std::vector<TruncatedSeries>;

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

TruncatedSeries constant(int nv, int order, const ExactScalar& c) { return TruncatedSeries::constant(nv, order, c); }

Covector variables(int nv, int order, int offset, int n) {
  Covector v;
  for (int mu = 0; mu < n; ++mu) v.push_back(TruncatedSeries::variable(nv, order, offset + mu));
  return v;
}

/// eta^{mu mu} x_mu y_mu
TruncatedSeries eta_dot(const Covector& x, const Covector& y, int order) {
  TruncatedSeries s(x.front().nvars(), order);
  for (std::size_t mu = 0; mu < x.size(); ++mu) s += multiply(x[mu], y[mu], order) * ExactScalar(eta(static_cast<int>(mu)));
  return s;
}

/// a^mu x_mu
TruncatedSeries a_dot_series(const DeformationParams& p, const Covector& x, int order) {
  TruncatedSeries s(x.front().nvars(), order);
  for (std::size_t mu = 0; mu < x.size(); ++mu) s += x[mu].truncated(order) * ExactScalar(p.a_upper(static_cast<int>(mu)));
  return s;
}

/// sqrt(1 + c t) with t a series without constant term.
TruncatedSeries sqrt_one_plus(const mpq_class& c, const TruncatedSeries& t, int order) {
  return compose(UnivariateSeries::sqrt_one_plus(order / 2 + 1), t * ExactScalar(c), order);
}

/// The closed-form flow at t = 1 with k and q replaced by covector series.
Covector flow_formula(const DeformationParams& p, const Covector& k, const Covector& q, int order) {
  const int nv = k.front().nvars();
  const int G = order / 2 + 1;
  const TruncatedSeries ak = a_dot_series(p, k, order);
  const TruncatedSeries kk = eta_dot(k, k, order);
  const TruncatedSeries kq = eta_dot(k, q, order);
  const TruncatedSeries qq = eta_dot(q, q, order);
  const TruncatedSeries w2 = multiply(ak, ak, order) - kk * ExactScalar(p.s());
  const TruncatedSeries sh = compose(UnivariateSeries::sinhc(G), w2, order);
  const TruncatedSeries ch = compose(UnivariateSeries::coshc(G), w2, order);
  const TruncatedSeries zq = a_dot_series(p, q, order) + sqrt_one_plus(p.b_prefactor(), qq, order);
  const TruncatedSeries ak_kq = multiply(ak, kq, order);
  Covector P;
  for (int mu = 0; mu < p.n(); ++mu) {
    const ExactScalar amu(p.a(mu));
    const TruncatedSeries& kmu = k[sz(mu)];
    TruncatedSeries lin = multiply(kmu, zq, order) - kq * amu;
    TruncatedSeries quad = multiply(multiply(kmu, ak, order) - kk * amu, zq, order) + ak_kq * amu -
                           multiply(kmu, kq, order) * ExactScalar(p.s());
    TruncatedSeries out = q[sz(mu)].truncated(order) + multiply(lin, sh, order) + multiply(quad, ch, order);
    P.push_back(out.truncated(order));
  }
  (void)nv;
  return P;
}

std::vector<BiSeries> as_bi(int n, Covector v) {
  std::vector<BiSeries> out;
  for (auto& s : v) out.emplace_back(n, std::move(s));
  return out;
}

Covector embed_k(const Covector& v) {
  Covector out;
  for (const auto& s : v) out.push_back(BiSeries::from_k_series(s).series());
  return out;
}

double norm_inf(const MomentumVector& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

FloatParams scaled(const FloatParams& p, double eps) {
  FloatParams r = p;
  for (double& a : r.a) a *= eps;
  r.s *= eps * eps;
  return r;
}

// Error relative to the size of the individual terms, so that a cancelling sum does not inflate it.
double rel_err(const MomentumVector& fit, const MomentumVector& expected, const MomentumVector& magnitude) {
  const double scale = norm_inf(magnitude);
  const double err = max_abs_diff(fit, expected);
  return scale > 0 ? err / scale : err;
}

nlohmann::json terms_json(const CoproductTerms& t) {
  return {{"order0", t.order0}, {"order1", t.order1}, {"order2", t.order2}};
}

}  // namespace

std::vector<BiSeries> flow_series(const DeformationParams& p, int order) {
  const int n = p.n();
  return as_bi(n, flow_formula(p, variables(2 * n, order, 0, n), variables(2 * n, order, n, n), order));
}

std::vector<TruncatedSeries> k_series(const DeformationParams& p, int order) {
  const int n = p.n();
  Covector zero(sz(n), TruncatedSeries(n, order));
  return flow_formula(p, variables(n, order, 0, n), zero, order);
}

std::vector<TruncatedSeries> k_series_inverse(const DeformationParams& p, int order) {
  return compositional_inverse(k_series(p, order), order);
}

std::vector<BiSeries> dsum_series(const DeformationParams& p, int order) {
  const int n = p.n();
  const Covector kinv = embed_k(k_series_inverse(p, order));
  return as_bi(n, flow_formula(p, kinv, variables(2 * n, order, n, n), order));
}

std::vector<BiSeries> snyder_dsum_series(const DeformationParams& p, int order) {
  const int n = p.n();
  for (int mu = 0; mu < n; ++mu) {
    if (p.a(mu) != 0) throw DomainError("the a = 0 coproduct needs a vanishing covector a");
  }
  const int nv = 2 * n;
  const Covector k = variables(nv, order, 0, n), q = variables(nv, order, n, n);
  const TruncatedSeries sq = sqrt_one_plus(-p.s(), eta_dot(q, q, order), order);
  const TruncatedSeries sk = sqrt_one_plus(-p.s(), eta_dot(k, k, order), order);
  const TruncatedSeries frac = multiply(eta_dot(k, q, order), invert(constant(nv, order, 1) + sk), order) * ExactScalar(p.s());
  Covector out;
  for (int mu = 0; mu < n; ++mu) {
    out.push_back(multiply(k[sz(mu)], sq, order) + q[sz(mu)].truncated(order) - multiply(k[sz(mu)], frac, order));
  }
  return as_bi(n, std::move(out));
}

std::vector<BiSeries> kappa_dsum_series(const DeformationParams& p, int order) {
  if (p.s() != 0) throw DomainError("the s = 0 coproduct needs s = 0");
  const int n = p.n();
  const int nv = 2 * n;
  const Covector k = variables(nv, order, 0, n), q = variables(nv, order, n, n);
  const mpq_class& a2 = p.a_squared();
  const TruncatedSeries kk = eta_dot(k, k, order);
  const TruncatedSeries root_k = sqrt_one_plus(a2, kk, order);
  const TruncatedSeries zinv_q = a_dot_series(p, q, order) + sqrt_one_plus(a2, eta_dot(q, q, order), order);
  const TruncatedSeries z_k = invert(a_dot_series(p, k, order) + root_k);
  // box(k) = -2 k^2 / (1 + sqrt(1 + a^2 k^2))
  const TruncatedSeries box_k = multiply(kk, invert(constant(nv, order, 1) + root_k), order) * ExactScalar(-2);
  const TruncatedSeries kq_z = multiply(eta_dot(k, q, order), z_k, order);
  const TruncatedSeries box_z_aq =
      multiply(multiply(box_k, z_k, order), a_dot_series(p, q, order), order) * ExactScalar(mpq_class(1, 2));
  Covector out;
  for (int mu = 0; mu < n; ++mu) {
    const ExactScalar amu(p.a(mu));
    out.push_back(multiply(k[sz(mu)], zinv_q, order) + q[sz(mu)].truncated(order) - kq_z * amu + box_z_aq * amu);
  }
  return as_bi(n, std::move(out));
}

MomentumVector snyder_dsum(const MomentumVector& k, const MomentumVector& q, const FloatParams& p) {
  const double rq = 1.0 - p.s * dot(q, q), rk = 1.0 - p.s * dot(k, k);
  if (rq < 0 || rk < 0) throw DomainError("1 - s k^2 or 1 - s q^2 is negative");
  const double sq = std::sqrt(rq), frac = p.s * dot(k, q) / (1.0 + std::sqrt(rk));
  MomentumVector d(k.size());
  for (std::size_t mu = 0; mu < k.size(); ++mu) d[mu] = k[mu] * sq + q[mu] - k[mu] * frac;
  return d;
}

MomentumVector kappa_dsum(const MomentumVector& k, const MomentumVector& q, const FloatParams& p) {
  const double zinv_q = z_inverse_of(q, p);
  const double z_k = 1.0 / z_inverse_of(k, p);
  const double box_k = box_of(k, p);
  const double kq = dot(k, q), aq = a_dot(p, q);
  MomentumVector d(k.size());
  for (std::size_t mu = 0; mu < k.size(); ++mu) {
    d[mu] = k[mu] * zinv_q + q[mu] - p.a[mu] * kq * z_k + 0.5 * p.a[mu] * box_k * z_k * aq;
  }
  return d;
}

MomentumVector star_plane_waves(const MomentumVector& k, const MomentumVector& q, const FloatParams& p) {
  const MomentumVector kinv = big_k_inverse(k, p).p;
  return flow_closed_form(kinv, q, 1.0, p).p;
}

namespace {

// Per-component sum of absolute values of the terms, or the signed sum when magnitude is false.
CoproductTerms term_sums(const MomentumVector& k, const MomentumVector& q, const FloatParams& p, bool magnitude) {
  const double aq = a_dot(p, q), ak = a_dot(p, k), kq = dot(k, q), kk = dot(k, k), qq = dot(q, q);
  const double a2 = p.a_squared();
  auto sum = [magnitude](std::initializer_list<double> terms) {
    double out = 0;
    for (double t : terms) out += magnitude ? std::abs(t) : t;
    return out;
  };
  CoproductTerms t;
  for (std::size_t mu = 0; mu < k.size(); ++mu) {
    t.order0.push_back(sum({k[mu], q[mu]}));
    t.order1.push_back(sum({k[mu] * aq, -p.a[mu] * kq}));
    t.order2.push_back(sum({0.5 * (a2 - p.s) * k[mu] * qq, p.a[mu] * ak * kq, -0.5 * p.a[mu] * kk * aq,
                            -0.5 * p.s * k[mu] * kq}));
  }
  return t;
}

}  // namespace

CoproductTerms coproduct_terms(const MomentumVector& k, const MomentumVector& q, const FloatParams& p) {
  return term_sums(k, q, p, false);
}

CoproductFit coproduct_check(const FloatParams& p, const MomentumVector& k, const MomentumVector& q) {
  const std::size_t n = k.size();
  const double nodes[4] = {0.5, 0.25, 0.125, 0.0625};
  Eigen::Matrix4d V;
  Eigen::MatrixXd Y(4, static_cast<Eigen::Index>(n));
  for (int j = 0; j < 4; ++j) {
    for (int m = 0; m < 4; ++m) V(j, m) = std::pow(nodes[j], m);
    const MomentumVector d = star_plane_waves(k, q, scaled(p, nodes[j]));
    for (std::size_t mu = 0; mu < n; ++mu) Y(j, static_cast<Eigen::Index>(mu)) = d[mu];
  }
  const Eigen::MatrixXd C = V.fullPivLu().solve(Y);
  CoproductFit fit;
  fit.expected = coproduct_terms(k, q, p);
  for (std::size_t mu = 0; mu < n; ++mu) {
    const auto c = static_cast<Eigen::Index>(mu);
    fit.fitted.order0.push_back(C(0, c));
    fit.fitted.order1.push_back(C(1, c));
    fit.fitted.order2.push_back(C(2, c));
  }
  const CoproductTerms size = term_sums(k, q, p, true);
  fit.rel_err0 = rel_err(fit.fitted.order0, fit.expected.order0, size.order0);
  fit.rel_err1 = rel_err(fit.fitted.order1, fit.expected.order1, size.order1);
  fit.rel_err2 = rel_err(fit.fitted.order2, fit.expected.order2, size.order2);
  // Remove the expected orders 0..2: what is left should shrink like eps^3.
  double r[2] = {0, 0};
  for (int j = 2; j < 4; ++j) {
    for (std::size_t mu = 0; mu < n; ++mu) {
      const double e = nodes[j];
      const double left = Y(j, static_cast<Eigen::Index>(mu)) - fit.expected.order0[mu] - e * fit.expected.order1[mu] -
                          e * e * fit.expected.order2[mu];
      r[j - 2] = std::max(r[j - 2], std::abs(left));
    }
  }
  fit.residual_ratio = r[1] > 0 ? r[0] / r[1] : 0.0;
  return fit;
}

nlohmann::json CoproductFit::to_json() const {
  return {{"fitted", terms_json(fitted)},
          {"expected", terms_json(expected)},
          {"rel_err", {rel_err0, rel_err1, rel_err2}},
          {"residual_ratio", residual_ratio}};
}

nlohmann::json SpecialCoproductReport::to_json() const {
  nlohmann::json j = {{"kind", kind}, {"series_match", series_match}, {"series_order", series_order}, {"float_err", float_err}};
  if (kind == "kappa") j["z_product_err"] = z_product_err;
  return j;
}

SpecialCoproductReport special_coproducts(const DeformationParams& p, const MomentumVector& k, const MomentumVector& q,
                                          int order) {
  SpecialCoproductReport rep;
  rep.series_order = order;
  const bool a_zero = std::all_of(p.a().begin(), p.a().end(), [](const mpq_class& v) { return v == 0; });
  if (!a_zero && p.s() != 0) throw DomainError("closed-form coproducts need a = 0 or s = 0");
  rep.kind = a_zero ? "snyder" : "kappa";
  const auto closed = a_zero ? snyder_dsum_series(p, order) : kappa_dsum_series(p, order);
  const auto general = dsum_series(p, order);
  rep.series_match = true;
  for (std::size_t mu = 0; mu < closed.size(); ++mu) {
    rep.series_match = rep.series_match && closed[mu].agrees_with(general[mu]) && general[mu].order() >= order;
  }
  const FloatParams fp = FloatParams::from_exact(p);
  const MomentumVector d = star_plane_waves(k, q, fp);
  rep.float_err = max_abs_diff(a_zero ? snyder_dsum(k, q, fp) : kappa_dsum(k, q, fp), d);
  if (!a_zero) rep.z_product_err = std::abs(z_inverse_of(d, fp) - z_inverse_of(k, fp) * z_inverse_of(q, fp));
  return rep;
}

Polynomial star_polynomials(const Polynomial& f, const Polynomial& g, const std::vector<BiSeries>& dsum) {
  if (dsum.empty()) throw DimensionMismatch("empty coproduct series");
  const int n = dsum.front().dim();
  if (f.dim() != n || g.dim() != n) throw DimensionMismatch("polynomials and series of different dimension");
  const int order = dsum.front().order();
  if (f.degree() + g.degree() > order) {
    throw DomainError("deg f + deg g = " + std::to_string(f.degree() + g.degree()) + " exceeds series order " +
                      std::to_string(order));
  }
  const auto un = sz(n);

  // Terms of X_alpha E^alpha: X_alpha * factor * d_Y^a d_Z^b.
  struct Term {
    std::size_t alpha;
    MultiIndex dy, dz;
    ExactScalar factor;
  };
  static const ExactScalar minus_i_pow[4] = {ExactScalar(1), -ExactScalar::i(), ExactScalar(-1), ExactScalar::i()};
  std::vector<Term> terms;
  for (int alpha = 0; alpha < n; ++alpha) {
    dsum[sz(alpha)].series().for_each_nonzero([&](std::size_t, const MultiIndex& e, const ExactScalar& c) {
      if (e.degree() < 2) return;
      MultiIndex dy(un), dz(un);
      for (std::size_t v = 0; v < un; ++v) {
        dy[v] = e[v];
        dz[v] = e[un + v];
      }
      const ExactScalar factor = ExactScalar::i() * ExactScalar(eta(alpha)) * c * minus_i_pow[e.degree() % 4];
      terms.push_back({sz(alpha), std::move(dy), std::move(dz), factor});
    });
  }

  // Polynomials in (X, Y, Z).
  auto lift = [&](const MultiIndex& y, const MultiIndex& z) {
    std::vector<int> e(3 * un, 0);
    for (std::size_t v = 0; v < un; ++v) {
      e[un + v] = y[v];
      e[2 * un + v] = z[v];
    }
    return MultiIndex(std::move(e));
  };
  Polynomial F(3 * n);
  for (const auto& [fe, fc] : f.terms()) {
    for (const auto& [ge, gc] : g.terms()) F.add_term(lift(fe, ge), fc * gc);
  }

  // d^a on x^e with D_mu X_mu = eta_mu.
  auto derive = [&](MultiIndex& e, std::size_t offset, const MultiIndex& d, mpz_class& w) {
    for (std::size_t v = 0; v < un; ++v) {
      const int have = e[offset + v];
      if (d[v] > have) return false;
      for (int j = 0; j < d[v]; ++j) w *= have - j;
      if (eta(static_cast<int>(v)) < 0 && d[v] % 2 == 1) w = -w;
      e[offset + v] -= d[v];
    }
    return true;
  };
  auto apply_T = [&](const Polynomial& P) {
    Polynomial out(3 * n);
    for (const auto& [e, c] : P.terms()) {
      for (const auto& t : terms) {
        MultiIndex ne = e;
        mpz_class w = 1;
        if (!derive(ne, un, t.dy, w) || !derive(ne, 2 * un, t.dz, w)) continue;
        ++ne[t.alpha];
        out.add_term(ne, c * t.factor * ExactScalar(mpq_class(w)));
      }
    }
    return out;
  };

  Polynomial total = F, term = F;
  for (int m = 1; !term.is_zero(); ++m) {
    term = apply_T(term) * ExactScalar(mpq_class(1, m));
    total += term;
  }

  Polynomial out(n);
  for (const auto& [e, c] : total.terms()) {
    MultiIndex x(un);
    for (std::size_t v = 0; v < un; ++v) x[v] = e[v] + e[un + v] + e[2 * un + v];
    out.add_term(x, c);
  }
  return out;
}

Polynomial star_polynomials(const Polynomial& f, const Polynomial& g, const DeformationParams& p, int order) {
  return star_polynomials(f, g, dsum_series(p, order));
}

double associativity_defect(const MomentumVector& k, const MomentumVector& q, const MomentumVector& r,
                            const FloatParams& p) {
  const MomentumVector left = star_plane_waves(star_plane_waves(k, q, p), r, p);
  const MomentumVector right = star_plane_waves(k, star_plane_waves(q, r, p), p);
  return max_abs_diff(left, right);
}

}  // namespace ncdeform
