#include "longres/monomial.hpp"

namespace longres {

std::string Monomial::str() const {
  std::string out;
  for (int k = 0; k < vars(); ++k) {
    int e = exponent(k);
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += "z" + std::to_string(k + 1);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

}  // namespace longres
