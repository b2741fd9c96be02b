#include "sallykit/monomial.hpp"

namespace sallykit {

std::string Monomial::to_string(std::span<const std::string> names) const {
  if (is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (exp_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += i < names.size() ? names[i] : "x" + std::to_string(i);
    if (exp_[i] > 1) out += "^" + std::to_string(exp_[i]);
  }
  return out;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::kGrevlex:
      return "grevlex";
    case Kind::kLex:
      return "lex";
    case Kind::kBlockElimination:
      return "block-elimination(" + std::to_string(block_) + ")";
  }
  return "?";
}

}  // namespace sallykit
