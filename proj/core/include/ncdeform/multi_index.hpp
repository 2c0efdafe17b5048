#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ncdeform {

/// Exponent vector over n variables.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : exps_(n, 0) {}
  MultiIndex(std::initializer_list<int> exps) : exps_(exps) {}
  explicit MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) {}

  static MultiIndex unit(std::size_t n, std::size_t var) {
    MultiIndex m(n);
    m.exps_[var] = 1;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  int degree() const noexcept {
    int d = 0;
    for (int e : exps_) d += e;
    return d;
  }

  /// Componentwise a <= b.
  bool divides(const MultiIndex& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  MultiIndex& operator+=(const MultiIndex& other) {
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += other.exps_[i];
    return *this;
  }
  MultiIndex& operator-=(const MultiIndex& other) {
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] -= other.exps_[i];
    return *this;
  }
  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
  friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.exps_ <=> b.exps_; }

  std::string to_string() const;

 private:
  std::vector<int> exps_;
};

/// Calls fn(kappa) for every kappa with 0 <= kappa <= bound componentwise.
template <class Fn>
void for_each_sub_index(const MultiIndex& bound, Fn&& fn) {
  MultiIndex kappa(bound.size());
  while (true) {
    fn(static_cast<const MultiIndex&>(kappa));
    std::size_t i = 0;
    while (i < bound.size() && kappa[i] == bound[i]) {
      kappa[i] = 0;
      ++i;
    }
    if (i == bound.size()) return;
    ++kappa[i];
  }
}

}  // namespace ncdeform
