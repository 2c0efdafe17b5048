#include "ncdeform/deformation_params.hpp"

#include <sstream>

#include "ncdeform/errors.hpp"

namespace ncdeform {

DeformationParams::DeformationParams(int n, std::vector<mpq_class> a, mpq_class s)
    : n_(n), a_(std::move(a)), s_(std::move(s)) {
  if (n_ < 2) throw DomainError("deformation needs dimension n >= 2");
  if (a_.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch("covector a must have n components");
  for (auto& v : a_) v.canonicalize();
  s_.canonicalize();
  for (int mu = 0; mu < n_; ++mu) a2_ += eta(mu) * a_[static_cast<std::size_t>(mu)] * a_[static_cast<std::size_t>(mu)];
}

DeformationParams DeformationParams::undeformed(int n) {
  return DeformationParams(n, std::vector<mpq_class>(static_cast<std::size_t>(std::max(n, 0))), 0);
}

bool DeformationParams::is_undeformed() const {
  if (sgn(s_) != 0) return false;
  for (const auto& v : a_) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

std::string DeformationParams::to_string() const {
  std::ostringstream os;
  os << "n=" << n_ << " a=(";
  for (int mu = 0; mu < n_; ++mu) os << (mu ? "," : "") << a_[static_cast<std::size_t>(mu)].get_str();
  os << ") s=" << s_.get_str();
  return os.str();
}

FloatParams FloatParams::from_exact(const DeformationParams& p) {
  FloatParams f;
  f.n = p.n();
  for (const auto& v : p.a()) f.a.push_back(v.get_d());
  f.s = p.s().get_d();
  return f;
}

FloatParams FloatParams::make(std::vector<double> a, double s) {
  if (a.size() < 2) throw DomainError("deformation needs dimension n >= 2");
  FloatParams f;
  f.n = static_cast<int>(a.size());
  f.a = std::move(a);
  f.s = s;
  return f;
}

double FloatParams::a_squared() const {
  double r = 0.0;
  for (int mu = 0; mu < n; ++mu) r += eta(mu) * a[static_cast<std::size_t>(mu)] * a[static_cast<std::size_t>(mu)];
  return r;
}

}  // namespace ncdeform
