#include <string>

#include "ncdeform/errors.hpp"
#include "ncdeform/realization.hpp"

namespace ncdeform {

namespace {

ExactScalar i_times(const mpq_class& q) { return ExactScalar(mpq_class(0), q); }

void require_degree(const Realization& r, int max_degree) {
  if (max_degree < 0 || max_degree > r.trunc()) {
    throw DomainError("max_degree " + std::to_string(max_degree) + " must lie in [0, trunc]");
  }
}

struct Generator {
  std::string label;
  const WeylElement* op;
};

std::vector<Generator> generators(const Realization& r) {
  std::vector<Generator> g;
  const int n = r.n();
  for (int mu = 0; mu < n; ++mu) g.push_back({"xhat_" + std::to_string(mu), &r.xhat(mu)});
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      g.push_back({"M_" + std::to_string(mu) + "_" + std::to_string(nu), &r.M(mu, nu)});
    }
  }
  for (int mu = 0; mu < n; ++mu) g.push_back({"D_" + std::to_string(mu), &r.D(mu)});
  return g;
}

/// eta_{mu nu} as a scalar.
ExactScalar metric(int mu, int nu) { return mu == nu ? ExactScalar(eta(mu)) : ExactScalar(0); }

}  // namespace

VerificationReport check_axioms(const Realization& r, int max_degree) {
  require_degree(r, max_degree);
  VerificationReport rep;
  const int n = r.n();
  const auto& p = r.spec().params();
  const mpq_class& s = p.s();
  auto xc = [&](int mu, int nu) { return commutator(r.xhat(mu), r.xhat(nu)); };

  // Phi read off the realization: coefficient of X_alpha in xhat_mu is eta^{alpha alpha} Phi_{alpha mu}.
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int mu = 0; mu < n; ++mu) {
      const auto& coeffs = r.xhat(mu).x_coefficients();
      const auto it = coeffs.find(MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(alpha)));
      const ExactScalar phi0 = it == coeffs.end() ? ExactScalar(0) : it->second.constant_term() * ExactScalar(eta(alpha));
      record_flag(rep, "Phi(0) = eta", {alpha, mu}, phi0 == metric(alpha, mu), "Phi(0) = " + phi0.to_string());
    }
  }

  std::vector<WeylElement> xx(static_cast<std::size_t>(n * n));
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      WeylElement c = xc(mu, nu);
      xx[static_cast<std::size_t>(mu * n + nu)] = c;
      xx[static_cast<std::size_t>(nu * n + mu)] = -c;
      // [x_mu, x_nu] = i(a_mu x_nu - a_nu x_mu) + s M_{mu nu}
      WeylElement rhs = r.xhat(nu) * i_times(p.a(mu)) - r.xhat(mu) * i_times(p.a(nu)) + r.M(mu, nu) * ExactScalar(s);
      record_zero(rep, "[xhat_mu, xhat_nu] = i(a_mu xhat_nu - a_nu xhat_mu) + s M_mu_nu", {mu, nu}, c - rhs,
                  max_degree);
    }
  }

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      for (int la = 0; la < n; ++la) {
        for (int rho = la + 1; rho < n; ++rho) {
          WeylElement rhs = r.M(mu, rho) * metric(nu, la) - r.M(nu, rho) * metric(mu, la) -
                            r.M(mu, la) * metric(nu, rho) + r.M(nu, la) * metric(mu, rho);
          record_zero(rep, "[M_mu_nu, M_la_rho] = Lorentz algebra", {mu, nu, la, rho},
                      commutator(r.M(mu, nu), r.M(la, rho)) - rhs, max_degree);
        }
      }
    }
  }

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      if (mu < nu) record_zero(rep, "[D_mu, D_nu] = 0", {mu, nu}, commutator(r.D(mu), r.D(nu)), max_degree);
    }
  }

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      for (int la = 0; la < n; ++la) {
        WeylElement rhs = r.D(mu) * metric(nu, la) - r.D(nu) * metric(mu, la);
        record_zero(rep, "[M_mu_nu, D_la] = eta_nu_la D_mu - eta_mu_la D_nu", {mu, nu, la},
                    commutator(r.M(mu, nu), r.D(la)) - rhs, max_degree);
      }
    }
  }

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      for (int la = 0; la < n; ++la) {
        WeylElement rhs = r.xhat(mu) * metric(nu, la) - r.xhat(nu) * metric(mu, la) -
                          r.M(nu, la) * i_times(p.a(mu)) + r.M(mu, la) * i_times(p.a(nu));
        record_zero(rep, "[M_mu_nu, xhat_la] = xhat_mu eta_nu_la - xhat_nu eta_mu_la - i(a_mu M_nu_la - a_nu M_mu_la)",
                    {mu, nu, la}, commutator(r.M(mu, nu), r.xhat(la)) - rhs, max_degree);
      }
    }
  }

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      record_zero(rep, "[D_mu, xhat_nu] = Phi_mu_nu(D)", {mu, nu},
                  commutator(r.D(mu), r.xhat(nu)) - r.Phi(mu, nu).to_weyl(), max_degree);
    }
  }

  const WeylElement phi_inv = r.phi_inverse().to_weyl();
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      WeylElement rhs = (r.xhat(mu) * r.D(nu) - r.xhat(nu) * r.D(mu)) * phi_inv;
      record_zero(rep, "M_mu_nu = (xhat_mu D_nu - xhat_nu D_mu) / phi", {mu, nu}, r.M(mu, nu) - rhs, max_degree);
    }
  }

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      for (int la = 0; la < n; ++la) {
        WeylElement rhs = (r.xhat(nu) * ExactScalar(p.a(mu)) - r.xhat(mu) * ExactScalar(p.a(nu))) * ExactScalar(p.a(la)) +
                          (r.xhat(mu) * metric(nu, la) - r.xhat(nu) * metric(mu, la)) * ExactScalar(s);
        record_zero(rep, "[[xhat_mu, xhat_nu], xhat_la] = a_la(a_mu xhat_nu - a_nu xhat_mu) + s(...)", {mu, nu, la},
                    commutator(xx[static_cast<std::size_t>(mu * n + nu)], r.xhat(la)) - rhs, max_degree);
      }
    }
  }

  // Jacobi identities for all distinct triples of generators. Inner
  // commutators keep one order more than the outer ones need.
  const auto gens = generators(r);
  const std::size_t G = gens.size();
  std::vector<WeylElement> inner(G * G);
  auto comm = [&](std::size_t i, std::size_t j) -> WeylElement {
    if (i < j) return inner[i * G + j];
    return -inner[j * G + i];
  };
  for (std::size_t i = 0; i < G; ++i) {
    for (std::size_t j = i + 1; j < G; ++j) inner[i * G + j] = commutator(*gens[i].op, *gens[j].op, max_degree + 1);
  }
  for (std::size_t i = 0; i < G; ++i) {
    for (std::size_t j = i + 1; j < G; ++j) {
      for (std::size_t k = j + 1; k < G; ++k) {
        WeylElement J = commutator(comm(i, j), *gens[k].op, max_degree);
        J += commutator(comm(j, k), *gens[i].op, max_degree);
        J += commutator(comm(k, i), *gens[j].op, max_degree);
        record_zero(rep, "Jacobi(" + gens[i].label + ", " + gens[j].label + ", " + gens[k].label + ")",
                    {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)}, J, max_degree);
      }
    }
  }
  return rep;
}

VerificationReport check_z_suite(const Realization& r, int max_degree) {
  require_degree(r, max_degree);
  VerificationReport rep;
  const int n = r.n();
  const auto& p = r.spec().params();
  const ExactScalar s(p.s());
  const auto [zinv_d, z_d] = r.Z_pair();
  const WeylElement zinv = zinv_d.to_weyl();
  const WeylElement z = z_d.to_weyl();

  record_zero(rep, "Z Z^-1 = 1", {}, z * zinv - WeylElement::scalar(n, 1), max_degree);
  for (int mu = 0; mu < n; ++mu) {
    record_zero(rep, "[Z^-1, xhat_mu] = -i a_mu Z^-1 + s D_mu", {mu},
                commutator(zinv, r.xhat(mu)) - (zinv * i_times(-p.a(mu)) + r.D(mu) * s), max_degree);
    record_zero(rep, "[Z, D_mu] = 0", {mu}, commutator(z, r.D(mu)), max_degree);
    record_zero(rep, "[Z, xhat_mu] = i a_mu Z - s D_mu Z^2", {mu},
                commutator(z, r.xhat(mu)) - (z * i_times(p.a(mu)) - r.D(mu) * z * z * s), max_degree);
  }
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      const WeylElement diff = r.xhat(mu) * z * r.xhat(nu) - r.xhat(nu) * z * r.xhat(mu);
      record_zero(rep, "xhat_mu Z xhat_nu = xhat_nu Z xhat_mu", {mu, nu}, diff, max_degree);
      Polynomial worst(n);
      for (const auto& m : monomials_upto(n, max_degree)) {
        Polynomial v = apply(diff, Polynomial::monomial(n, m));
        if (!v.is_zero()) {
          worst = v;
          break;
        }
      }
      record_zero(rep, "xhat_mu Z xhat_nu = xhat_nu Z xhat_mu on monomials", {mu, nu}, worst);
      record_zero(rep, "M_mu_nu = (xhat_mu D_nu - xhat_nu D_mu) Z", {mu, nu},
                  r.M(mu, nu) - (r.xhat(mu) * r.D(nu) - r.xhat(nu) * r.D(mu)) * z, max_degree);
      record_zero(rep, "[Z^-1, M_mu_nu] = -i(a_mu D_nu - a_nu D_mu)", {mu, nu},
                  commutator(zinv, r.M(mu, nu)) + (r.D(nu) * i_times(p.a(mu)) - r.D(mu) * i_times(p.a(nu))),
                  max_degree);
    }
  }
  if (p.s() == p.a_squared()) {
    const DSeries expected = (DSeries::constant(n, kExactOrder, 1) - variable_A(p)).truncated(r.trunc());
    record_zero(rep, "Z^-1 = 1 - A at s = a^2", {}, zinv - expected.to_weyl(), max_degree);
  }
  return rep;
}

VerificationReport check_box(const Realization& r, int max_degree) {
  require_degree(r, max_degree);
  VerificationReport rep;
  const int n = r.n();
  const auto& p = r.spec().params();
  const WeylElement box = r.box().to_weyl();
  for (int mu = 0; mu < n; ++mu) {
    record_zero(rep, "[box, xhat_mu] = 2 D_mu", {mu}, commutator(box, r.xhat(mu)) - r.D(mu) * ExactScalar(2),
                max_degree);
  }
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      record_zero(rep, "[M_mu_nu, box] = 0", {mu, nu}, commutator(r.M(mu, nu), box), max_degree);
    }
  }
  const WeylElement dd = d_squared(n).truncated(r.trunc()).to_weyl();
  if (r.spec().f_kind() == FKind::sqrt_one_minus_B) {
    // 2(1 - sqrt(1 - t)) against the integral form, coefficientwise in t.
    const UnivariateSeries g = box_generator(r.spec().f(), r.spec().gamma2());
    const UnivariateSeries sq = f_series(FKind::sqrt_one_minus_B, g.order());
    const UnivariateSeries closed = (UnivariateSeries::constant(1, g.order()) - sq) * mpq_class(2);
    bool same = g.order() >= 4;
    for (int m = 0; m <= 4; ++m) same = same && g[m] == closed[m];
    record_flag(rep, "box series = 2(1 - sqrt(1 - B))/(a^2 - s) through B^4", {}, same);
  }
  if (p.s() == p.a_squared() || p.is_undeformed()) {
    record_zero(rep, "box = D.D", {}, box - dd, max_degree);
  }
  return rep;
}

VerificationReport check_inverse_realization(const Realization& r, int max_degree) {
  require_degree(r, max_degree);
  VerificationReport rep;
  const int n = r.n();
  const auto& p = r.spec().params();
  for (int mu = 0; mu < n; ++mu) {
    record_zero(rep, "X_mu = xhat_alpha (Phi^-1)^alpha_mu", {mu}, r.inverse_realization(mu) - r.X(mu), max_degree);
  }
  if (r.spec().f_kind() == FKind::sqrt_one_minus_B) {
    // gamma_2 = 0: X_mu = [xhat_mu - i (a xhat) (1/f) D_mu] (1 / (-A + f)).
    const int N = r.trunc();
    const WeylElement f_inv_d = [&] {
      return WeylElement::from_d_series(dseries_invert(r.f_of_B(), N).series());
    }();
    WeylElement a_xhat(n, N);
    for (int alpha = 0; alpha < n; ++alpha) a_xhat += r.xhat(alpha) * ExactScalar(p.a_upper(alpha));
    for (int mu = 0; mu < n; ++mu) {
      const WeylElement rebuilt =
          (r.xhat(mu) - a_xhat * f_inv_d * r.D(mu) * ExactScalar::i()) * r.phi_inverse().to_weyl();
      record_zero(rep, "X_mu = [xhat_mu - i(a xhat) D_mu / f] / phi", {mu}, rebuilt - r.X(mu), max_degree);
    }
  }
  return rep;
}

VerificationReport check_snyder_map(const Realization& r, int max_degree) {
  require_degree(r, max_degree);
  VerificationReport rep;
  const int n = r.n();
  const auto& p = r.spec().params();
  const int N = r.trunc();
  std::vector<WeylElement> xt;
  for (int mu = 0; mu < n; ++mu) xt.push_back(r.snyder_coordinate(mu));
  const WeylElement f_inv = dseries_invert(r.f_of_B(), N).to_weyl();
  const WeylElement f_b = r.f_of_B().to_weyl();
  const WeylElement g2 = r.gamma2().to_weyl();

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      record_zero(rep, "[xt_mu, xt_nu] = (s - a^2) M_mu_nu", {mu, nu},
                  commutator(xt[mu], xt[nu]) - r.M(mu, nu) * ExactScalar(p.s() - p.a_squared()), max_degree);
      record_zero(rep, "M_mu_nu = (xt_mu D_nu - xt_nu D_mu) / f(B)", {mu, nu},
                  r.M(mu, nu) - (xt[mu] * r.D(nu) - xt[nu] * r.D(mu)) * f_inv, max_degree);
      for (int la = 0; la < n; ++la) {
        record_zero(rep, "[M_mu_nu, xt_la] = eta_nu_la xt_mu - eta_mu_la xt_nu", {mu, nu, la},
                    commutator(r.M(mu, nu), xt[la]) - (xt[mu] * metric(nu, la) - xt[nu] * metric(mu, la)),
                    max_degree);
      }
    }
  }
  for (int mu = 0; mu < n; ++mu) {
    WeylElement rhs = r.X(mu) * f_b;
    for (int alpha = 0; alpha < n; ++alpha) {
      rhs -= r.X(alpha) * r.D(alpha) * r.D(mu) * g2 * ExactScalar(mpq_class(eta(alpha) * p.b_prefactor()));
    }
    record_zero(rep, "xt_mu = X_mu f(B) - (a^2 - s)(XD) D_mu gamma_2", {mu}, xt[mu] - rhs, max_degree);
  }
  return rep;
}

}  // namespace ncdeform
