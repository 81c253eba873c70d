#pragma once

#include <map>
#include <vector>

#include "longres/monomial.hpp"
#include "longres/rational.hpp"

namespace longres {

// Homogeneous multivariate polynomial with exact rational coefficients.
// Homogeneity is structural: every stored monomial has the tagged degree,
// so f(lambda z) = lambda^degree f(z) holds identically.  The zero form is
// an empty term map with an explicit degree tag, which keeps homogeneous
// addition total.
class Form {
 public:
  Form(int vars, int degree) : d_(vars), degree_(check_degree(degree)) {}

  static Form constant(int vars, const Rational& c) {
    Form f(vars, 0);
    f.set_coefficient(Monomial(vars), c);
    return f;
  }
  static Form monomial(const Monomial& m, const Rational& c = Rational(1)) {
    Form f(m.vars(), m.degree());
    f.set_coefficient(m, c);
    return f;
  }
  static Form variable(int vars, int k) {
    return monomial(Monomial(vars).times_var(k));
  }
  static Form zero(int vars, int degree) { return Form(vars, degree); }

  int vars() const { return d_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  void set_coefficient(const Monomial& m, const Rational& c);

  // Degree in one variable (0 for the zero form).
  int degree_in(int k) const;
  bool multiaffine() const { return max_exponent() <= 1; }
  int max_exponent() const;
  bool depends_on(int k) const { return degree_in(k) > 0; }

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Form& a, const Form& b);
  Form scaled(const Rational& c) const;

  // Zero forms compare equal regardless of their degree tag.
  friend bool operator==(const Form& a, const Form& b);
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  Form partial_derivative(int k) const;

  GaussianRational evaluate(const std::vector<GaussianRational>& point) const;
  Rational evaluate_real(const std::vector<Rational>& point) const;

  // Re-tags a zero form; identity on nonzero forms with matching degree.
  Form with_degree(int degree) const;

  // Variable renaming along an injective position map into a wider space.
  Form embedded(int new_vars, const std::vector<int>& position) const;

  // Substitutes variable i by variable target[i] (collapsing map), the
  // inverse direction of degree reduction.
  Form collapsed(int new_vars, const std::vector<int>& target) const;

 private:
  static int check_degree(int degree) {
    if (degree < 0) throw BadDegree("negative form degree");
    return degree;
  }
  void require_compatible(const Form& o) const;
  int d_;
  int degree_;
  std::map<Monomial, Rational> terms_;
};

}  // namespace longres
