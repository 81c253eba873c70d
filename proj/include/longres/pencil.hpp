#pragma once

#include <vector>

#include "longres/basis.hpp"
#include "longres/matrix_form.hpp"
#include "longres/ratmat.hpp"

namespace longres {

// Linear matrix pencil A(z) = z_1 A_1 + ... + z_d A_d with real symmetric
// exact-rational coefficients.
class Pencil {
 public:
  Pencil() : d_(0), size_(0) {}
  Pencil(int vars, int size)
      : d_(vars), size_(size),
        coeffs_(static_cast<size_t>(vars), RatMat(size, size)) {}

  int vars() const { return d_; }
  int size() const { return size_; }

  const RatMat& coeff(int k) const { return coeffs_[static_cast<size_t>(k)]; }
  RatMat& coeff(int k) { return coeffs_[static_cast<size_t>(k)]; }

  void validate_symmetric() const {
    for (const auto& c : coeffs_)
      if (!c.is_symmetric())
        throw InvariantError("pencil coefficient is not symmetric");
  }

  RatMat evaluate(const std::vector<Rational>& point) const;

  // A(z) as a symmetric matrix of linear forms.
  MatrixForm as_matrix_form() const;

  friend Pencil operator-(const Pencil& a, const Pencil& b) {
    if (a.d_ != b.d_ || a.size_ != b.size_)
      throw SizeMismatch("pencil shapes differ");
    Pencil out(a.d_, a.size_);
    for (int k = 0; k < a.d_; ++k)
      out.coeff(k) = a.coeff(k) - b.coeff(k);
    return out;
  }
  friend bool operator==(const Pencil& a, const Pencil& b) {
    return a.d_ == b.d_ && a.size_ == b.size_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int d_;
  int size_;
  std::vector<RatMat> coeffs_;
};

// Block monomial row vector Psi(z) = (z^{a_1} I_m, ..., z^{a_N} I_m) paired
// with a pencil over it.  These helpers compute the exact symbolic objects
// used in the product-representation identities.

// A(z) * Psi(z)^T: an (N*m) x m matrix of forms of degree n+1.
FormMatrix pencil_times_psi(const Pencil& pencil, const MonomialBasis& basis,
                            int m);

// Psi(z) * C * Psi(z)^T for a constant symmetric matrix C over the block
// basis: an m x m symmetric matrix form of degree 2n.
MatrixForm psi_quadratic(const RatMat& c, const MonomialBasis& basis, int m);

// Psi(zeta) * A(z) * Psi(z)^T in a doubled variable space: first block of
// variables hosts zeta, second hosts z.  Returns an m x m matrix of forms
// in 2*basis.vars() variables.
FormMatrix psi_pencil_psi_doubled(const Pencil& pencil,
                                  const MonomialBasis& basis, int m);

// Embeds a form f(z) into the doubled space, as f(zeta) (block = 0) or
// f(z) (block = 1).
Form doubled(const Form& f, int block);

}  // namespace longres
