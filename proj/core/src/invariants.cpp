#include <map>

#include "ncdeform/errors.hpp"
#include "ncdeform/realization.hpp"

namespace ncdeform {

namespace {

/// Memoized values xhat^w |0>, built by peeling the leftmost letter.
class WordEvaluator {
 public:
  explicit WordEvaluator(const Realization& r) : r_(r) {}

  const Polynomial& operator()(const MultiIndex& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    Polynomial value(r_.n());
    std::size_t first = 0;
    while (first < w.size() && w[first] == 0) ++first;
    if (first == w.size()) {
      value = Polynomial::constant(r_.n(), 1);
    } else {
      MultiIndex rest = w;
      --rest[first];
      value = apply(r_.xhat(static_cast<int>(first)), (*this)(rest));
    }
    return memo_.emplace(w, std::move(value)).first->second;
  }

 private:
  const Realization& r_;
  std::map<MultiIndex, Polynomial> memo_;
};

}  // namespace

Polynomial word_on_vacuum(const Realization& r, const MultiIndex& w) {
  WordEvaluator eval(r);
  return eval(w);
}

NCPolynomial nc_from_commutative(const Realization& r, const Polynomial& p) {
  if (p.dim() != r.n()) throw DimensionMismatch("polynomial dimension differs from the realization");
  if (p.degree() > r.trunc() + 1) throw DomainError("polynomial degree exceeds the truncation order");
  WordEvaluator eval(r);
  NCPolynomial out;
  Polynomial residual = p;
  while (!residual.is_zero()) {
    // Pick a top-degree monomial; its word removes it without creating others of that degree.
    const MultiIndex* top = nullptr;
    for (const auto& [e, c] : residual.terms()) {
      if (top == nullptr || e.degree() > top->degree()) top = &e;
    }
    const MultiIndex w = *top;
    const ExactScalar c = residual.coefficient(w);
    out[w] += c;
    residual -= eval(w) * c;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

WeylElement nc_to_operator(const Realization& r, const NCPolynomial& p) {
  WeylElement out(r.n(), r.trunc());
  for (const auto& [w, c] : p) {
    WeylElement word = WeylElement::scalar(r.n(), 1);
    for (std::size_t mu = 0; mu < w.size(); ++mu) {
      for (int k = 0; k < w[mu]; ++k) word = word * r.xhat(static_cast<int>(mu));
    }
    out += word * c;
  }
  return out;
}

InvariantResult invariant_I2(const Realization& r) {
  const int n = r.n();
  const auto un = static_cast<std::size_t>(n);
  const auto& p = r.spec().params();
  InvariantResult res;

  Polynomial xx(n);
  for (int a = 0; a < n; ++a) {
    MultiIndex e(un);
    e[static_cast<std::size_t>(a)] = 2;
    xx.add_term(e, eta(a));
  }
  res.expression = nc_from_commutative(r, xx);

  // xhat.xhat - i(n-1) a.xhat in sorted words.
  NCPolynomial expected;
  for (int a = 0; a < n; ++a) {
    MultiIndex e(un);
    e[static_cast<std::size_t>(a)] = 2;
    expected[e] += eta(a);
    const ExactScalar lin(mpq_class(0), -mpq_class(n - 1) * p.a_upper(a));
    if (!lin.is_zero()) expected[MultiIndex::unit(un, static_cast<std::size_t>(a))] += lin;
  }
  Polynomial mismatch(n);
  for (const auto& [w, c] : res.expression) {
    auto it = expected.find(w);
    mismatch.add_term(w, it == expected.end() ? c : c - it->second);
  }
  for (const auto& [w, c] : expected) {
    if (!res.expression.contains(w)) mismatch.add_term(w, -c);
  }
  record_zero(res.report, "I2 = xhat.xhat - i(n-1) a.xhat", {}, mismatch);

  const WeylElement I2 = nc_to_operator(r, expected);
  const Polynomial one = Polynomial::constant(n, 1);
  record_zero(res.report, "I2 |0> = X.X", {}, apply(I2, one) - xx);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu < n; ++nu) {
      record_zero(res.report, "M_mu_nu I2 |0> = 0", {mu, nu}, apply(r.M(mu, nu) * I2, one));
    }
  }
  return res;
}

VerificationReport tensor_demo(const Realization& r) {
  VerificationReport rep;
  const int n = r.n();
  const Polynomial one = Polynomial::constant(n, 1);
  std::vector<WeylElement> rebuilt;
  for (int mu = 0; mu < n; ++mu) rebuilt.push_back(r.inverse_realization(mu));
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu; nu < n; ++nu) {
      const Polynomial expected = Polynomial::variable(n, mu) * Polynomial::variable(n, nu);
      record_zero(rep, "X_mu X_nu rebuilt from xhat acts as X_mu X_nu on |0>", {mu, nu},
                  apply(rebuilt[mu] * rebuilt[nu], one) - expected);
    }
  }
  return rep;
}

}  // namespace ncdeform
