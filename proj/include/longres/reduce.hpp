#pragma once

#include <utility>
#include <vector>

#include "longres/matrix_form.hpp"

namespace longres {

// One application of the degree reduction operator: the variable
// source_var of bound n0 is split into the fresh variables new_vars
// (|new_vars| == n0).  Fresh indices must be disjoint from the surviving
// variables; reusing the source slot as a fresh slot is allowed.
struct ReductionPlan {
  int source_var = 0;
  int bound = 1;
  std::vector<int> new_vars;

  int output_vars(int input_vars) const;
  void validate(int input_vars) const;
};

// For each original variable z_k, the ordered list of fresh variables that
// replace it.  Groups partition the whole fresh index range; group k of a
// joint reduction has size max(deg_k P, deg_k q).
struct MultiaffinizationMap {
  std::vector<std::vector<int>> groups;

  int original_vars() const { return static_cast<int>(groups.size()); }
  int fresh_vars() const;
  // Flat map: fresh index -> original variable.  Throws InvariantError if
  // the groups do not partition [0, fresh_vars()).
  std::vector<int> collapse_map() const;
};

// Elementary symmetric polynomial sigma_k over the given variables, as a
// form in `ambient` variables.  sigma_0 = 1.  Throws BadDegree for
// k > |vars|.
Form elementary_symmetric(int k, const std::vector<int>& vars, int ambient);

// Replaces every power source^j by binom(n0,j)^{-1} sigma_j(fresh vars).
// The result is affine in each fresh variable; identifying the fresh
// variables back to the source recovers the input exactly.
Form reduce_degree(const Form& p, const ReductionPlan& plan);
MatrixForm reduce_degree(const MatrixForm& p, const ReductionPlan& plan);

// Substitutes z_k for every fresh variable of group k, inverting the
// reduction.
Form identify_variables(const Form& p, const MultiaffinizationMap& map);
MatrixForm identify_variables(const MatrixForm& p,
                              const MultiaffinizationMap& map);

// Joint reduction of numerator and denominator with n_k = max of their
// degrees in z_k; the output is multiaffine and the map inverts it.
std::pair<RatFn, MultiaffinizationMap> multiaffinize(const RatFn& f);

}  // namespace longres
