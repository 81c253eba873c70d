#pragma once

#include <utility>
#include <vector>

#include "longres/basis.hpp"
#include "longres/ratmat.hpp"

namespace longres {

// Unordered monomial pair with a*b = beta, stored with a <= b.
struct MonomialPair {
  Monomial a;
  Monomial b;
  bool squared() const { return a == b; }
};

// All unordered pairs of cap-respecting degree-n monomials whose product is
// a fixed degree-2n monomial beta.
struct PairSet {
  Monomial beta;
  std::vector<MonomialPair> pairs;
};

// Enumerates the admissible exponent box max(r_k - n_k, 0) <= delta_k <=
// min(r_k, n_k); caps entries < 0 mean uncapped.
PairSet admissible_exponents(const Monomial& beta, const std::vector<int>& caps);

// Increments exponent r, decrements exponent l; degree preserved.  Throws
// NotApplicable when delta_r == cap_r, delta_l == 0 or r == l.
Monomial elementary_transform(const Monomial& alpha, int r, int l,
                              const std::vector<int>& caps);

// Spanning tree of the graph whose vertices are the pairs and whose edges
// join pairs linked by one elementary transformation; BFS from the
// lexicographically least pair.  Throws InternalError if the graph is
// disconnected.
std::vector<std::pair<int, int>> pair_graph_tree(const PairSet& ps,
                                                 const std::vector<int>& caps);

// Basis of the annihilator space L0 = {S symmetric : Psi S Psi^T == 0}:
// one matrix per spanning-tree edge, each with 3 or 4 nonzero entries.
std::vector<RatMat> annihilator_basis(const MonomialBasis& basis);

// Like annihilator_basis but tolerates pair graphs made disconnected by a
// pruned (non-full) basis, completing each extra component with a plain
// two-pair annihilator.  Used by the SOS engine.
std::vector<RatMat> annihilator_span(const MonomialBasis& basis);

// Representation Defect solver.  Given symmetric S with Psi S Psi^T == 0
// and S * d^{n_k} Psi^T / dz_k^{n_k} == 0 (both verified exactly), returns
// symmetric matrices, one per variable with entry [dist_var] == S, whose
// pencil annihilates Psi^T exactly:
//   (z_1 C_1 + ... + z_d C_d) Psi(z)^T == 0,  C_{dist_var} = S.
// Pattern completions follow the two explicit basic solutions; annihilator
// components whose tree edge transforms along the distinguished variable
// fall back to an exact linear solve and may be genuinely uncompletable
// (DefectUncompletable).
std::vector<RatMat> defect_solve(const RatMat& S, const MonomialBasis& basis,
                                 int dist_var);

// Monomial basis, block size, one particular Gram matrix of the target
// form, and spanning directions of the annihilator space (block-lifted for
// m > 1).
struct GramSpace {
  MonomialBasis basis;
  int m = 1;
  RatMat particular;
  std::vector<RatMat> annihilators;

  int gram_size() const { return basis.size() * m; }
};

}  // namespace longres
