#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdeform/multi_index.hpp"
#include "ncdeform/weyl_element.hpp"

namespace ncdeform {

struct VerificationEntry {
  std::string identity;
  std::vector<int> indices;
  bool passed = false;
  /// Monomial X^w with (LHS - RHS) X^w != 0, when one exists within max_degree.
  std::optional<MultiIndex> witness;
  /// Derivative order through which the difference was formed.
  int precision = 0;
  std::string detail;
};

class VerificationReport {
 public:
  void add(VerificationEntry entry) { entries_.push_back(std::move(entry)); }
  void merge(const VerificationReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }

  const std::vector<VerificationEntry>& entries() const noexcept { return entries_; }
  std::size_t failures() const;
  bool all_passed() const { return failures() == 0; }

  /// [{"identity", "indices", "status": "exact-pass" | "fail", "witness"?, "precision"}].
  nlohmann::json to_json() const;

 private:
  std::vector<VerificationEntry> entries_;
};

/// Records whether `difference` vanishes on every polynomial of degree <= max_degree.
/// A difference formed to precision >= max_degree is zero there iff it has no terms.
/// Returns the entry's pass flag.
bool record_zero(VerificationReport& report, std::string identity, std::vector<int> indices,
                 const WeylElement& difference, int max_degree);

/// Records whether a polynomial difference is zero; the witness is its
/// leading monomial.
bool record_zero(VerificationReport& report, std::string identity, std::vector<int> indices,
                 const Polynomial& difference);

/// Records a check that has no operator form.
bool record_flag(VerificationReport& report, std::string identity, std::vector<int> indices, bool passed,
                 std::string detail = {});

}  // namespace ncdeform
