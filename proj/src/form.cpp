#include "longres/form.hpp"

#include <algorithm>

namespace longres {

void Form::set_coefficient(const Monomial& m, const Rational& c) {
  if (m.vars() != d_)
    throw SizeMismatch("monomial variable count does not match form");
  if (m.degree() != degree_)
    throw DegreeMismatch("monomial degree " + std::to_string(m.degree()) +
                         " does not match form degree " +
                         std::to_string(degree_));
  if (c.is_zero())
    terms_.erase(m);
  else
    terms_[m] = c;
}

int Form::degree_in(int k) const {
  int best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.exponent(k));
  return best;
}

int Form::max_exponent() const {
  int best = 0;
  for (const auto& [m, c] : terms_)
    for (int v : m.exponents()) best = std::max(best, v);
  return best;
}

void Form::require_compatible(const Form& o) const {
  if (o.d_ != d_)
    throw SizeMismatch("forms live in different variable spaces");
}

Form Form::operator-() const {
  Form out(d_, degree_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Form& Form::operator+=(const Form& o) {
  require_compatible(o);
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (o.degree_ != degree_)
    throw DegreeMismatch("cannot add forms of degree " +
                         std::to_string(degree_) + " and " +
                         std::to_string(o.degree_));
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form operator*(const Form& a, const Form& b) {
  a.require_compatible(b);
  Form out(a.d_, a.degree_ + b.degree_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma.times(mb);
      auto it = out.terms_.find(m);
      if (it == out.terms_.end()) {
        out.terms_.emplace(std::move(m), ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  return out;
}

Form Form::scaled(const Rational& c) const {
  Form out(d_, degree_);
  if (c.is_zero()) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

bool operator==(const Form& a, const Form& b) {
  if (a.d_ != b.d_) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

Form Form::partial_derivative(int k) const {
  if (k < 0 || k >= d_) throw BadInput("variable index out of range");
  Form out(d_, degree_ > 0 ? degree_ - 1 : 0);
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(k);
    if (e == 0) continue;
    out.terms_.emplace(m.with_exponent(k, e - 1), c * Rational(e));
  }
  return out;
}

GaussianRational Form::evaluate(
    const std::vector<GaussianRational>& point) const {
  if (static_cast<int>(point.size()) != d_)
    throw SizeMismatch("evaluation point has wrong dimension");
  GaussianRational acc;
  for (const auto& [m, c] : terms_) {
    GaussianRational t{c};
    for (int k = 0; k < d_; ++k)
      for (int e = 0; e < m.exponent(k); ++e) t = t * point[static_cast<size_t>(k)];
    acc = acc + t;
  }
  return acc;
}

Rational Form::evaluate_real(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != d_)
    throw SizeMismatch("evaluation point has wrong dimension");
  Rational acc;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int k = 0; k < d_; ++k)
      for (int e = 0; e < m.exponent(k); ++e) t *= point[static_cast<size_t>(k)];
    acc += t;
  }
  return acc;
}

Form Form::with_degree(int degree) const {
  if (!is_zero()) {
    if (degree != degree_)
      throw DegreeMismatch("cannot re-tag a nonzero form");
    return *this;
  }
  return Form(d_, degree);
}

Form Form::embedded(int new_vars, const std::vector<int>& position) const {
  if (static_cast<int>(position.size()) != d_)
    throw SizeMismatch("position map has wrong length");
  Form out(new_vars, degree_);
  for (const auto& [m, c] : terms_)
    out.terms_.emplace(m.embedded(new_vars, position), c);
  return out;
}

Form Form::collapsed(int new_vars, const std::vector<int>& target) const {
  if (static_cast<int>(target.size()) != d_)
    throw SizeMismatch("target map has wrong length");
  Form out(new_vars, degree_);
  for (const auto& [m, c] : terms_) {
    Monomial nm(new_vars);
    for (int k = 0; k < d_; ++k)
      if (m.exponent(k) > 0)
        nm = nm.times_var(target[static_cast<size_t>(k)], m.exponent(k));
    auto it = out.terms_.find(nm);
    if (it == out.terms_.end()) {
      out.terms_.emplace(std::move(nm), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) out.terms_.erase(it);
    }
  }
  return out;
}

}  // namespace longres
