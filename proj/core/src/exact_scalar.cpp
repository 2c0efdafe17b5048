#include "ncdeform/exact_scalar.hpp"

#include <cctype>
#include <ostream>

#include "ncdeform/errors.hpp"

namespace ncdeform {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string imaginary_text(const mpq_class& im) { return im.get_str() + "*i"; }

}  // namespace

mpq_class parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

ExactScalar ExactScalar::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty scalar");
  if (text.back() != 'i') return ExactScalar(parse_rational(text));

  std::string_view head = text.substr(0, text.size() - 1);
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);

  std::size_t split = std::string_view::npos;
  for (std::size_t pos = head.size(); pos-- > 1;) {
    if (head[pos] == '+' || head[pos] == '-') {
      split = pos;
      break;
    }
  }
  std::string_view re_text = split == std::string_view::npos ? std::string_view() : head.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? head : head.substr(split);

  mpq_class re = re_text.empty() ? mpq_class(0) : parse_rational(re_text);
  mpq_class im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    im = parse_rational(im_text);
  }
  return ExactScalar(std::move(re), std::move(im));
}

std::string ExactScalar::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return imaginary_text(im_);
  if (sgn(im_) > 0) return re_.get_str() + "+" + imaginary_text(im_);
  return re_.get_str() + imaginary_text(im_);
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& other) {
  if (sgn(other.re_) != 0) re_ += other.re_;
  if (sgn(other.im_) != 0) im_ += other.im_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& other) {
  if (sgn(other.re_) != 0) re_ -= other.re_;
  if (sgn(other.im_) != 0) im_ -= other.im_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& other) {
  if (sgn(im_) == 0 && sgn(other.im_) == 0) {
    re_ *= other.re_;
    return *this;
  }
  mpq_class re = re_ * other.re_ - im_ * other.im_;
  mpq_class im = re_ * other.im_ + im_ * other.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& other) {
  if (other.is_zero()) throw DomainError("division of exact scalar by zero");
  if (sgn(other.im_) == 0) {
    re_ /= other.re_;
    im_ /= other.re_;
    return *this;
  }
  const mpq_class norm = other.re_ * other.re_ + other.im_ * other.im_;
  *this *= other.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const mpq_class& factor) {
  re_ *= factor;
  im_ *= factor;
  return *this;
}

void ExactScalar::add_product(const ExactScalar& a, const ExactScalar& b) {
  const bool ar = sgn(a.re_) != 0, ai = sgn(a.im_) != 0;
  const bool br = sgn(b.re_) != 0, bi = sgn(b.im_) != 0;
  if (ar && br) re_ += a.re_ * b.re_;
  if (ai && bi) re_ -= a.im_ * b.im_;
  if (ar && bi) im_ += a.re_ * b.im_;
  if (ai && br) im_ += a.im_ * b.re_;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& value) { return os << value.to_string(); }

}  // namespace ncdeform
