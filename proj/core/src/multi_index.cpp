#include "ncdeform/multi_index.hpp"

namespace ncdeform {

std::string MultiIndex::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exps_[i]);
  }
  return s + "]";
}

}  // namespace ncdeform
