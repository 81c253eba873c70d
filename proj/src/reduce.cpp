#include "longres/reduce.hpp"

#include <algorithm>
#include <set>

namespace longres {

int ReductionPlan::output_vars(int input_vars) const {
  int out = input_vars;
  for (int v : new_vars) out = std::max(out, v + 1);
  return out;
}

void ReductionPlan::validate(int input_vars) const {
  if (bound < 1) throw BadInput("reduction bound must be at least 1");
  if (static_cast<int>(new_vars.size()) != bound)
    throw BadInput("plan needs exactly n0 fresh variables");
  if (source_var < 0 || source_var >= input_vars)
    throw BadInput("source variable out of range");
  // Disjointness from the surviving variables is checked against the actual
  // form in reduce_degree; an unused slot below input_vars is legal.
  std::set<int> seen;
  for (int v : new_vars) {
    if (v < 0) throw BadInput("negative fresh variable index");
    if (!seen.insert(v).second)
      throw BadInput("fresh variable indices must be distinct");
  }
}

int MultiaffinizationMap::fresh_vars() const {
  int n = 0;
  for (const auto& g : groups) n += static_cast<int>(g.size());
  return n;
}

std::vector<int> MultiaffinizationMap::collapse_map() const {
  int n = fresh_vars();
  std::vector<int> target(static_cast<size_t>(n), -1);
  for (size_t k = 0; k < groups.size(); ++k)
    for (int v : groups[k]) {
      if (v < 0 || v >= n || target[static_cast<size_t>(v)] != -1)
        throw InvariantError("groups do not partition the fresh index range");
      target[static_cast<size_t>(v)] = static_cast<int>(k);
    }
  return target;
}

Form elementary_symmetric(int k, const std::vector<int>& vars, int ambient) {
  const int n = static_cast<int>(vars.size());
  if (k < 0 || k > n)
    throw BadDegree("sigma_" + std::to_string(k) + " of " + std::to_string(n) +
                    " variables");
  Form out(ambient, k);
  if (k == 0) {
    out.set_coefficient(Monomial(ambient), Rational(1));
    return out;
  }
  // Iterate k-subsets of vars in lexicographic index order.
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    Monomial m(ambient);
    for (int i : idx) m = m.times_var(vars[static_cast<size_t>(i)]);
    out.set_coefficient(m, Rational(1));
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }
  return out;
}

Form reduce_degree(const Form& p, const ReductionPlan& plan) {
  plan.validate(p.vars());
  if (p.degree_in(plan.source_var) > plan.bound)
    throw DegreeExceeded("degree in the source variable exceeds the bound");
  for (int v : plan.new_vars)
    if (v != plan.source_var && v < p.vars() && p.depends_on(v))
      throw BadInput("input form already uses a fresh variable");

  const int out_vars = plan.output_vars(p.vars());
  // Surviving variables keep their slots.
  std::vector<int> position(static_cast<size_t>(p.vars()));
  for (int i = 0; i < p.vars(); ++i) position[static_cast<size_t>(i)] = i;

  Form out(out_vars, p.degree());
  for (const auto& [m, c] : p.terms()) {
    int j = m.exponent(plan.source_var);
    Monomial rest = m.with_exponent(plan.source_var, 0)
                        .embedded(out_vars, position);
    Form sigma = elementary_symmetric(j, plan.new_vars, out_vars);
    Form term = (Form::monomial(rest, c) * sigma)
                    .scaled(Rational(1) / binomial(plan.bound, j));
    out += term;
  }
  return out;
}

MatrixForm reduce_degree(const MatrixForm& p, const ReductionPlan& plan) {
  MatrixForm out(p.size(), plan.output_vars(p.vars()), p.degree());
  for (int i = 0; i < p.size(); ++i)
    for (int j = i; j < p.size(); ++j)
      out.set_entry(i, j, reduce_degree(p.entry(i, j), plan));
  return out;
}

Form identify_variables(const Form& p, const MultiaffinizationMap& map) {
  std::vector<int> target = map.collapse_map();
  if (static_cast<int>(target.size()) != p.vars())
    throw SizeMismatch("map does not cover the form's variable space");
  return p.collapsed(map.original_vars(), target);
}

MatrixForm identify_variables(const MatrixForm& p,
                              const MultiaffinizationMap& map) {
  MatrixForm out(p.size(), map.original_vars(), p.degree());
  for (int i = 0; i < p.size(); ++i)
    for (int j = i; j < p.size(); ++j)
      out.set_entry(i, j, identify_variables(p.entry(i, j), map));
  return out;
}

std::pair<RatFn, MultiaffinizationMap> multiaffinize(const RatFn& f) {
  const int d = f.vars();
  MultiaffinizationMap map;
  map.groups.resize(static_cast<size_t>(d));
  std::vector<int> bound(static_cast<size_t>(d));
  int fresh = 0;
  for (int k = 0; k < d; ++k) {
    int nk = std::max(f.num().degree_in(k), f.den().degree_in(k));
    bound[static_cast<size_t>(k)] = nk;
    for (int i = 0; i < nk; ++i)
      map.groups[static_cast<size_t>(k)].push_back(fresh++);
  }

  // Embed each original variable at the first slot of its group, then run
  // the reduction operators one variable at a time in the final space.
  std::vector<int> position(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    const auto& g = map.groups[static_cast<size_t>(k)];
    // Absent variables get a throwaway slot; no monomial uses them.
    position[static_cast<size_t>(k)] = g.empty() ? 0 : g.front();
  }

  Form q = f.den().embedded(fresh, position);
  MatrixForm P(f.num().size(), fresh, f.num().degree());
  for (int i = 0; i < f.num().size(); ++i)
    for (int j = i; j < f.num().size(); ++j)
      P.set_entry(i, j, f.num().entry(i, j).embedded(fresh, position));

  for (int k = 0; k < d; ++k) {
    const auto& g = map.groups[static_cast<size_t>(k)];
    if (g.size() <= 1) continue;  // bound 0 or 1: nothing to split
    ReductionPlan plan{g.front(), bound[static_cast<size_t>(k)], g};
    q = reduce_degree(q, plan);
    P = reduce_degree(P, plan);
  }
  return {RatFn(std::move(P), std::move(q)), std::move(map)};
}

}  // namespace longres
