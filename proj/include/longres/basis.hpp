#pragma once

#include <optional>
#include <vector>

#include "longres/monomial.hpp"

namespace longres {

// Ordered list of distinct monomials of one degree, each respecting
// per-variable caps, in graded-lexicographic order (z1-heavy first).
class MonomialBasis {
 public:
  // All monomials of the given degree under caps (cap < 0 means no cap).
  static MonomialBasis all_of_degree(int vars, int degree,
                                     std::vector<int> caps);
  static MonomialBasis multiaffine(int vars, int degree);
  // Explicit list; validated (distinct, common degree, caps) and sorted.
  static MonomialBasis from_monomials(std::vector<Monomial> monomials,
                                      std::vector<int> caps);
  static MonomialBasis empty(int vars, int degree) {
    return MonomialBasis(vars, degree,
                         std::vector<int>(static_cast<size_t>(vars), 0), {});
  }

  int vars() const { return d_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const Monomial& at(int i) const {
    return monomials_[static_cast<size_t>(i)];
  }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const std::vector<int>& caps() const { return caps_; }

  std::optional<int> index_of(const Monomial& m) const;
  bool all_multiaffine() const;

  // Subset with deg_k <= bound, as a new basis (caps adjusted).
  MonomialBasis restricted(int k, int bound) const;

  friend bool operator==(const MonomialBasis& a, const MonomialBasis& b) {
    return a.d_ == b.d_ && a.degree_ == b.degree_ &&
           a.monomials_ == b.monomials_;
  }

 private:
  MonomialBasis(int vars, int degree, std::vector<int> caps,
                std::vector<Monomial> monomials)
      : d_(vars), degree_(degree), caps_(std::move(caps)),
        monomials_(std::move(monomials)) {}
  int d_;
  int degree_;
  std::vector<int> caps_;
  std::vector<Monomial> monomials_;
};

}  // namespace longres
