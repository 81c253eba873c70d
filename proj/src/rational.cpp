#include "longres/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>

namespace longres {

Rational Rational::from_string(const std::string& text) {
  if (text.empty()) throw BadInput("empty rational literal");
  mpq_class v;
  if (v.set_str(text, 10) != 0)
    throw BadInput("malformed rational literal: '" + text + "'");
  if (v.get_den() == 0) throw BadInput("zero denominator in '" + text + "'");
  return Rational(v);
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw BadInput("non-finite double");
  return Rational(mpq_class(x));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(b);
}

Rational rationalize(double x, std::uint64_t max_den) {
  if (!std::isfinite(x)) throw BadInput("non-finite double");
  bool neg = x < 0;
  double v = std::fabs(x);

  // Continued-fraction convergents p/q of v, stopping before q exceeds
  // the bound.
  std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  Rational best(0);
  for (int iter = 0; iter < 64; ++iter) {
    double fa = std::floor(frac);
    if (fa > 9e18) break;
    std::uint64_t a = static_cast<std::uint64_t>(fa);
    // overflow / bound guard
    if (q1 != 0 && a > (max_den - q0) / q1) break;
    std::uint64_t p2 = a * p1 + p0;
    std::uint64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    best = Rational(mpq_class(static_cast<unsigned long>(p1),
                              static_cast<unsigned long>(q1)));
    double rem = frac - fa;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) best = Rational(0);
  return neg ? -best : best;
}

}  // namespace longres
