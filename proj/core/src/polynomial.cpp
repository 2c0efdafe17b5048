#include "ncdeform/polynomial.hpp"

#include <sstream>

#include "ncdeform/errors.hpp"
#include "ncdeform/graded_basis.hpp"

namespace ncdeform {

Polynomial Polynomial::constant(int n, const ExactScalar& c) {
  return monomial(n, MultiIndex(static_cast<std::size_t>(n)), c);
}

Polynomial Polynomial::variable(int n, int mu) {
  return monomial(n, MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(mu)));
}

Polynomial Polynomial::monomial(int n, const MultiIndex& exps, const ExactScalar& c) {
  Polynomial p(n);
  p.add_term(exps, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

ExactScalar Polynomial::coefficient(const MultiIndex& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? ExactScalar() : it->second;
}

void Polynomial::add_term(const MultiIndex& exps, const ExactScalar& c) {
  if (exps.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch("monomial length differs from dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw DimensionMismatch("polynomials of different dimension");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.n_ != n_) throw DimensionMismatch("polynomials of different dimension");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("polynomials of different dimension");
  Polynomial r(a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
  }
  return r;
}

nlohmann::json Polynomial::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    out.push_back({{"x_exp", m.exponents()}, {"coeff", c.to_string()}});
  }
  return out;
}

Polynomial Polynomial::from_json(const nlohmann::json& j, int n) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array");
  Polynomial p(n);
  for (const auto& term : j) {
    auto exps = term.at("x_exp").get<std::vector<int>>();
    if (exps.size() != static_cast<std::size_t>(n)) throw DimensionMismatch("x_exp length differs from dimension");
    p.add_term(MultiIndex(std::move(exps)), ExactScalar::parse(term.at("coeff").get<std::string>()));
  }
  return p;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (std::size_t mu = 0; mu < m.size(); ++mu) {
      if (m[mu] == 1) os << "*X_" << mu;
      if (m[mu] > 1) os << "*X_" << mu << "^" << m[mu];
    }
  }
  return os.str();
}

std::vector<MultiIndex> monomials_upto(int n, int max_degree) {
  if (max_degree < 0) return {};
  const auto basis = GradedBasis::get(n, max_degree);
  std::vector<MultiIndex> out;
  out.reserve(basis->size());
  for (std::size_t i = 0; i < basis->size(); ++i) out.push_back(basis->exponents(i));
  return out;
}

}  // namespace ncdeform
