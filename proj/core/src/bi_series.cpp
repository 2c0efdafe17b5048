#include "ncdeform/bi_series.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "ncdeform/errors.hpp"

namespace ncdeform {

namespace {

MultiIndex join(const MultiIndex& k_exp, const MultiIndex& q_exp) {
  std::vector<int> e(k_exp.exponents());
  e.insert(e.end(), q_exp.exponents().begin(), q_exp.exponents().end());
  return MultiIndex(std::move(e));
}

std::pair<MultiIndex, MultiIndex> split(const MultiIndex& e, int n) {
  const auto& v = e.exponents();
  return {MultiIndex(std::vector<int>(v.begin(), v.begin() + n)), MultiIndex(std::vector<int>(v.begin() + n, v.end()))};
}

BiSeries embed(const TruncatedSeries& s, bool as_q) {
  const int n = s.nvars();
  TruncatedSeries out(2 * n, s.order());
  const MultiIndex zero(static_cast<std::size_t>(n));
  s.for_each_nonzero([&](std::size_t, const MultiIndex& e, const ExactScalar& c) {
    out.add_to(as_q ? join(zero, e) : join(e, zero), c);
  });
  return BiSeries(n, std::move(out));
}

}  // namespace

BiSeries::BiSeries(int n, TruncatedSeries s) : n_(n), s_(std::move(s)) {
  if (s_.nvars() != 2 * n) throw DimensionMismatch("BiSeries needs 2n variables");
}

BiSeries BiSeries::k(int n, int order, int mu) { return BiSeries(n, TruncatedSeries::variable(2 * n, order, mu)); }

BiSeries BiSeries::q(int n, int order, int mu) { return BiSeries(n, TruncatedSeries::variable(2 * n, order, n + mu)); }

BiSeries BiSeries::from_k_series(const TruncatedSeries& s) { return embed(s, false); }

BiSeries BiSeries::from_q_series(const TruncatedSeries& s) { return embed(s, true); }

ExactScalar BiSeries::coefficient(const MultiIndex& k_exp, const MultiIndex& q_exp) const {
  return s_.coeff(join(k_exp, q_exp));
}

TruncatedSeries BiSeries::at_q_zero() const {
  TruncatedSeries out(n_, s_.order());
  s_.for_each_nonzero([&](std::size_t, const MultiIndex& e, const ExactScalar& c) {
    auto [ke, qe] = split(e, n_);
    if (qe.degree() == 0) out.add_to(ke, c);
  });
  return out;
}

TruncatedSeries BiSeries::at_k_zero() const {
  TruncatedSeries out(n_, s_.order());
  s_.for_each_nonzero([&](std::size_t, const MultiIndex& e, const ExactScalar& c) {
    auto [ke, qe] = split(e, n_);
    if (ke.degree() == 0) out.add_to(qe, c);
  });
  return out;
}

std::complex<double> BiSeries::evaluate(const std::vector<double>& k, const std::vector<double>& q) const {
  if (k.size() != static_cast<std::size_t>(n_) || q.size() != static_cast<std::size_t>(n_)) {
    throw DimensionMismatch("BiSeries::evaluate: wrong momentum dimension");
  }
  std::vector<double> x(k);
  x.insert(x.end(), q.begin(), q.end());
  return ncdeform::evaluate(s_, x);
}

nlohmann::json BiSeries::to_json() const {
  std::vector<std::tuple<int, MultiIndex, MultiIndex, std::string>> rows;
  s_.for_each_nonzero([&](std::size_t, const MultiIndex& e, const ExactScalar& c) {
    auto [ke, qe] = split(e, n_);
    rows.emplace_back(e.degree(), std::move(ke), std::move(qe), c.to_string());
  });
  std::sort(rows.begin(), rows.end());
  auto out = nlohmann::json::array();
  for (const auto& [deg, ke, qe, c] : rows) {
    out.push_back({{"k_exp", ke.exponents()}, {"q_exp", qe.exponents()}, {"coeff", c}});
  }
  return out;
}

std::complex<double> evaluate(const TruncatedSeries& s, const std::vector<double>& x) {
  if (x.size() != static_cast<std::size_t>(s.nvars())) throw DimensionMismatch("evaluate: wrong point dimension");
  std::complex<double> sum = 0.0;
  s.for_each_nonzero([&](std::size_t, const MultiIndex& e, const ExactScalar& c) {
    double m = 1.0;
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (e[v] != 0) m *= std::pow(x[v], e[v]);
    }
    sum += c.to_complex() * m;
  });
  return sum;
}

}  // namespace ncdeform
