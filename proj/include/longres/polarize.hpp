#pragma once

#include "longres/pencil.hpp"

namespace longres {

// Tie-breaking order for the chain construction inside transfer pencils.
// Both orders are valid; two polarizations built with different orders
// differ by the gauge freedom checked by gauge_difference_check.
enum class ChainOrder { ascending, descending };

// Monomial-transfer pencil: C(z) with C(z) Psi(z)^T = z^beta e_slot over a
// full multiaffine basis.  Every coefficient has rank at most 2.  The
// construction is verified symbolically before returning.
Pencil transfer_pencil(const MonomialBasis& basis, const Monomial& beta,
                       int slot, ChainOrder order = ChainOrder::ascending);

struct ProductPolarization {
  MonomialBasis basis;  // degree-n monomials in the original variables
  Pencil pencil;        // size basis.size() * m, block convention
  int m = 1;
  // Size of the multiaffine intermediate (equal to the final basis when the
  // input was already multiaffine).
  int multiaffine_vars = 0;
  int multiaffine_basis_size = 0;
};

// Product representation q(zeta) P(z) = Psi(zeta) A(z) Psi(z)^T, exact.
// Non-multiaffine inputs are degree-reduced, polarized in the fresh
// variables, and identified back (coefficients summed per variable group
// and rows compressed onto the capped basis).
ProductPolarization polarize_product(const Form& q, const MatrixForm& P,
                                     ChainOrder order = ChainOrder::ascending);

// True iff p1 - p2 lies in the gauge space of the product representation:
// (p1-p2)(z) Psi(z)^T == 0 and Psi(z) (p1-p2)_k Psi(z)^T == 0 for all k,
// exactly.
bool gauge_difference_check(const Pencil& p1, const Pencil& p2,
                            const MonomialBasis& basis);

struct PsdSlotPolarization {
  MonomialBasis basis;
  Pencil pencil;
  int m = 1;
  int slot_var = 0;
  bool exact_gram = true;
};

// Product representation of (q s)(zeta) (P s)(z) whose coefficient for
// variable k is positive semidefinite.  The Artin denominator s is
// caller-supplied (s = 1 is allowed and suffices whenever the Wronskian is
// itself SOS).  Throws NotSOS when no PSD Gram matrix is found.
PsdSlotPolarization polarize_with_psd_slot(const Form& q, const MatrixForm& P,
                                           int k, const Form& s);

}  // namespace longres
