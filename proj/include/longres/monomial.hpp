#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "longres/errors.hpp"

namespace longres {

// Exponent multi-index of a monomial z1^e1 ... zd^ed.  Variable indices are
// 0-based throughout the library; the text grammar uses 1-based names.
class Monomial {
 public:
  explicit Monomial(int vars) : e_(static_cast<size_t>(check_vars(vars)), 0) {}
  explicit Monomial(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int v : e_)
      if (v < 0) throw BadInput("negative exponent in monomial");
  }

  int vars() const { return static_cast<int>(e_.size()); }
  int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
  int exponent(int k) const { return e_[static_cast<size_t>(k)]; }
  const std::vector<int>& exponents() const { return e_; }

  bool is_constant() const { return degree() == 0; }
  bool multiaffine() const {
    for (int v : e_)
      if (v > 1) return false;
    return true;
  }

  Monomial times(const Monomial& o) const {
    require_same_vars(o);
    std::vector<int> e(e_);
    for (size_t i = 0; i < e.size(); ++i) e[i] += o.e_[i];
    return Monomial(std::move(e));
  }

  // Componentwise quotient, empty if any exponent would go negative.
  std::optional<Monomial> divided_by(const Monomial& o) const {
    require_same_vars(o);
    std::vector<int> e(e_);
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] -= o.e_[i];
      if (e[i] < 0) return std::nullopt;
    }
    return Monomial(std::move(e));
  }

  Monomial gcd(const Monomial& o) const {
    require_same_vars(o);
    std::vector<int> e(e_);
    for (size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], o.e_[i]);
    return Monomial(std::move(e));
  }

  Monomial with_exponent(int k, int value) const {
    if (k < 0 || k >= vars()) throw BadInput("variable index out of range");
    std::vector<int> e(e_);
    e[static_cast<size_t>(k)] = value;
    return Monomial(std::move(e));
  }

  Monomial times_var(int k, int count = 1) const {
    return with_exponent(k, exponent(k) + count);
  }

  // Embeds into a wider variable space, variable i -> position[i].
  Monomial embedded(int new_vars, const std::vector<int>& position) const {
    Monomial out(new_vars);
    for (int k = 0; k < vars(); ++k) {
      if (e_[static_cast<size_t>(k)] == 0) continue;
      out.e_[static_cast<size_t>(position[static_cast<size_t>(k)])] +=
          e_[static_cast<size_t>(k)];
    }
    return out;
  }

  bool divides(const Monomial& o) const {
    require_same_vars(o);
    for (size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  // Graded order, ties broken so that z1-heavy monomials come first:
  // (2,0) < (1,1) < (0,2).  Total order used for term maps and bases.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e_ > b.e_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.e_ == b.e_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return a.e_ != b.e_;
  }

  std::string str() const;  // "z1^2*z3", "1" for the constant monomial

 private:
  static int check_vars(int vars) {
    if (vars < 0) throw BadInput("negative variable count");
    return vars;
  }
  void require_same_vars(const Monomial& o) const {
    if (o.vars() != vars())
      throw SizeMismatch("monomials live in different variable spaces");
  }
  std::vector<int> e_;
};

}  // namespace longres
