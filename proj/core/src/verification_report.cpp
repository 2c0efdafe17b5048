#include "ncdeform/verification_report.hpp"

#include <algorithm>

namespace ncdeform {

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const VerificationEntry& e) { return !e.passed; }));
}

nlohmann::json VerificationReport::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& e : entries_) {
    nlohmann::json j = {{"identity", e.identity},
                        {"indices", e.indices},
                        {"status", e.passed ? "exact-pass" : "fail"},
                        {"precision", e.precision >= kExactOrder ? nlohmann::json("exact") : nlohmann::json(e.precision)}};
    if (e.witness) j["witness"] = e.witness->exponents();
    if (!e.detail.empty()) j["detail"] = e.detail;
    out.push_back(std::move(j));
  }
  return out;
}

bool record_zero(VerificationReport& report, std::string identity, std::vector<int> indices,
                 const WeylElement& difference, int max_degree) {
  VerificationEntry entry{std::move(identity), std::move(indices), false, std::nullopt, difference.precision(), {}};
  if (difference.precision() < max_degree) {
    entry.detail = "difference known only through derivative order " + std::to_string(difference.precision());
  } else if (difference.is_zero()) {
    entry.passed = true;
  } else {
    // The lowest-order D monomial D^b acts nontrivially on X^b.
    const auto terms = difference.terms();
    const auto lowest = std::min_element(terms.begin(), terms.end(), [](const WeylTerm& a, const WeylTerm& b) {
      return a.d_exp.degree() < b.d_exp.degree();
    });
    if (lowest->d_exp.degree() <= max_degree) entry.witness = lowest->d_exp;
    entry.detail = "nonzero term " + lowest->coeff.to_string() + " X^" + lowest->x_exp.to_string() + " D^" +
                   lowest->d_exp.to_string();
  }
  const bool passed = entry.passed;
  report.add(std::move(entry));
  return passed;
}

bool record_zero(VerificationReport& report, std::string identity, std::vector<int> indices,
                 const Polynomial& difference) {
  VerificationEntry entry{std::move(identity), std::move(indices), difference.is_zero(), std::nullopt, kExactOrder, {}};
  if (!entry.passed) {
    const auto& [exps, c] = *difference.terms().rbegin();
    entry.witness = exps;
    entry.detail = "residual " + difference.to_string();
  }
  const bool passed = entry.passed;
  report.add(std::move(entry));
  return passed;
}

bool record_flag(VerificationReport& report, std::string identity, std::vector<int> indices, bool passed,
                 std::string detail) {
  report.add({std::move(identity), std::move(indices), passed, std::nullopt, kExactOrder, passed ? "" : std::move(detail)});
  return passed;
}

}  // namespace ncdeform
