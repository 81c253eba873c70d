#include "longres/gram.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "longres/pencil.hpp"

namespace longres {

namespace {

int effective_cap(const std::vector<int>& caps, int k, int degree) {
  int c = caps[static_cast<size_t>(k)];
  return c < 0 ? degree : std::min(c, degree);
}

void enumerate_box(const Monomial& beta, const std::vector<int>& caps, int n,
                   int k, std::vector<int>& current,
                   std::vector<Monomial>& out, int remaining) {
  const int d = beta.vars();
  if (k == d) {
    if (remaining == 0) out.emplace_back(current);
    return;
  }
  int r = beta.exponent(k);
  int cap = effective_cap(caps, k, n);
  int lo = std::max(r - cap, 0);
  int hi = std::min(r, cap);
  for (int e = lo; e <= hi && e <= remaining; ++e) {
    current[static_cast<size_t>(k)] = e;
    enumerate_box(beta, caps, n, k + 1, current, out, remaining - e);
  }
  current[static_cast<size_t>(k)] = 0;
}

struct TreeEdge {
  int pi = 0, pj = 0;   // pair indices, edge discovered pi -> pj
  Monomial from;        // member of pair pi
  Monomial to;          // member of pair pj, to = from * z_r / z_l
  int r = 0, l = 0;     // incremented / decremented variable
  TreeEdge() : from(0), to(0) {}
};

using PairKey = std::pair<std::vector<int>, std::vector<int>>;

PairKey key_of(const MonomialPair& p) {
  return {p.a.exponents(), p.b.exponents()};
}

// All candidate edges in deterministic order.
std::vector<TreeEdge> enumerate_edges(const PairSet& ps,
                                      const std::vector<int>& caps) {
  std::map<PairKey, int> index;
  for (size_t i = 0; i < ps.pairs.size(); ++i)
    index.emplace(key_of(ps.pairs[i]), static_cast<int>(i));
  const int d = ps.beta.vars();
  const int n = ps.beta.degree() / 2;
  std::vector<TreeEdge> edges;
  for (size_t i = 0; i < ps.pairs.size(); ++i) {
    std::vector<Monomial> members{ps.pairs[i].a};
    if (!ps.pairs[i].squared()) members.push_back(ps.pairs[i].b);
    for (const auto& x : members)
      for (int r = 0; r < d; ++r) {
        if (x.exponent(r) >= effective_cap(caps, r, n)) continue;
        for (int l = 0; l < d; ++l) {
          if (l == r || x.exponent(l) < 1) continue;
          Monomial t = x.times_var(r).with_exponent(l, x.exponent(l) - 1);
          auto quot = ps.beta.divided_by(t);
          if (!quot) continue;
          MonomialPair cand{std::min(t, *quot), std::max(t, *quot)};
          auto it = index.find(key_of(cand));
          if (it == index.end() || it->second == static_cast<int>(i)) continue;
          TreeEdge e;
          e.pi = static_cast<int>(i);
          e.pj = it->second;
          e.from = x;
          e.to = t;
          e.r = r;
          e.l = l;
          edges.push_back(std::move(e));
        }
      }
  }
  return edges;
}

// Spanning tree preferring edges that do not transform along avoid_var.
// BFS forest over preferred edges first, then bridges across components.
// strict: throw if the full graph is disconnected.
std::vector<TreeEdge> spanning_tree(const PairSet& ps,
                                    const std::vector<int>& caps,
                                    int avoid_var, bool strict,
                                    std::vector<int>* component_reps) {
  const int m = static_cast<int>(ps.pairs.size());
  std::vector<TreeEdge> edges = enumerate_edges(ps, caps);
  std::vector<std::vector<int>> adj(static_cast<size_t>(m));
  for (size_t e = 0; e < edges.size(); ++e) {
    bool avoids = edges[e].r != avoid_var && edges[e].l != avoid_var;
    if (avoid_var >= 0 && !avoids) continue;
    adj[static_cast<size_t>(edges[e].pi)].push_back(static_cast<int>(e));
  }

  std::vector<int> component(static_cast<size_t>(m), -1);
  std::vector<TreeEdge> tree;
  std::vector<int> reps;
  int comp = 0;
  for (int start = 0; start < m; ++start) {
    if (component[static_cast<size_t>(start)] != -1) continue;
    reps.push_back(start);
    component[static_cast<size_t>(start)] = comp;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : adj[static_cast<size_t>(v)]) {
        int u = edges[static_cast<size_t>(e)].pj;
        if (component[static_cast<size_t>(u)] != -1) continue;
        component[static_cast<size_t>(u)] = comp;
        tree.push_back(edges[static_cast<size_t>(e)]);
        q.push(u);
      }
    }
    ++comp;
  }

  if (comp > 1 && avoid_var >= 0) {
    // Bridge components with the remaining (avoided) edges.
    for (const auto& e : edges) {
      int ci = component[static_cast<size_t>(e.pi)];
      int cj = component[static_cast<size_t>(e.pj)];
      if (ci == cj) continue;
      tree.push_back(e);
      for (int v = 0; v < m; ++v)
        if (component[static_cast<size_t>(v)] == cj)
          component[static_cast<size_t>(v)] = ci;
      --comp;
      if (comp == 1) break;
    }
    reps.assign(1, 0);
    if (comp > 1) {
      reps.clear();
      std::vector<bool> seen(static_cast<size_t>(m), false);
      for (int v = 0; v < m; ++v) {
        int c = component[static_cast<size_t>(v)];
        if (!seen[static_cast<size_t>(c)]) {
          seen[static_cast<size_t>(c)] = true;
          reps.push_back(v);
        }
      }
    }
  }

  if (strict && comp > 1)
    throw InternalError(
        "pair graph is disconnected; this contradicts the chain "
        "connectivity of the admissible box");
  if (component_reps) *component_reps = reps;
  return tree;
}

}  // namespace

PairSet admissible_exponents(const Monomial& beta,
                             const std::vector<int>& caps) {
  if (static_cast<int>(caps.size()) != beta.vars())
    throw SizeMismatch("cap vector length differs from variable count");
  if (beta.degree() % 2 != 0)
    throw BadDegree("pair enumeration needs an even-degree monomial");
  const int n = beta.degree() / 2;
  std::vector<Monomial> alphas;
  std::vector<int> current(static_cast<size_t>(beta.vars()), 0);
  enumerate_box(beta, caps, n, 0, current, alphas, n);
  PairSet ps{beta, {}};
  std::map<PairKey, MonomialPair> seen;
  for (const auto& a : alphas) {
    Monomial b = *beta.divided_by(a);
    MonomialPair p{std::min(a, b), std::max(a, b)};
    seen.emplace(key_of(p), p);
  }
  for (auto& [kkey, p] : seen) ps.pairs.push_back(p);
  return ps;
}

Monomial elementary_transform(const Monomial& alpha, int r, int l,
                              const std::vector<int>& caps) {
  if (r == l) throw NotApplicable("transform variables must differ");
  if (r < 0 || r >= alpha.vars() || l < 0 || l >= alpha.vars())
    throw BadInput("variable index out of range");
  int cap = effective_cap(caps, r, alpha.degree());
  if (alpha.exponent(r) >= cap)
    throw NotApplicable("incremented variable is at its cap");
  if (alpha.exponent(l) < 1)
    throw NotApplicable("decremented variable is absent");
  return alpha.times_var(r).with_exponent(l, alpha.exponent(l) - 1);
}

std::vector<std::pair<int, int>> pair_graph_tree(
    const PairSet& ps, const std::vector<int>& caps) {
  if (ps.pairs.empty()) throw BadInput("empty pair set");
  auto tree = spanning_tree(ps, caps, -1, /*strict=*/true, nullptr);
  std::vector<std::pair<int, int>> out;
  out.reserve(tree.size());
  for (const auto& e : tree) out.emplace_back(e.pi, e.pj);
  return out;
}

namespace {

std::map<Monomial, PairSet> all_buckets(const MonomialBasis& basis) {
  std::map<Monomial, PairSet> out;
  for (int i = 0; i < basis.size(); ++i)
    for (int j = i; j < basis.size(); ++j) {
      Monomial beta = basis.at(i).times(basis.at(j));
      auto it = out.find(beta);
      if (it == out.end())
        it = out.emplace(beta, PairSet{beta, {}}).first;
      it->second.pairs.push_back({basis.at(i), basis.at(j)});
    }
  for (auto& [beta, ps] : out)
    std::sort(ps.pairs.begin(), ps.pairs.end(),
              [](const MonomialPair& x, const MonomialPair& y) {
                return key_of(x) < key_of(y);
              });
  return out;
}

int index_in(const MonomialBasis& basis, const Monomial& m,
             const char* what) {
  auto idx = basis.index_of(m);
  if (!idx) throw InternalError(std::string("monomial missing from basis: ") +
                                what + " " + m.str());
  return *idx;
}

Monomial checked_div(const Monomial& num, const Monomial& den) {
  auto q = num.divided_by(den);
  if (!q) throw InternalError("monomial division failed: " + num.str() +
                              " / " + den.str());
  return *q;
}

void add_sym(RatMat& s, int i, int j, const Rational& v) {
  s(i, j) += v;
  if (i != j) s(j, i) += v;
}

// Writes both symmetric copies unconditionally: when a completion's
// auxiliary monomial collides with a pattern monomial, the two off-diagonal
// copies merge onto the diagonal and must both be counted.
void add_pair(RatMat& s, int i, int j, const Rational& v) {
  s(i, j) += v;
  s(j, i) += v;
}

// Pattern matrix of one tree edge, over full-basis indices.
RatMat edge_pattern(const TreeEdge& e, const PairSet& ps,
                    const MonomialBasis& basis) {
  RatMat s(basis.size(), basis.size());
  const MonomialPair& a = ps.pairs[static_cast<size_t>(e.pi)];
  const MonomialPair& b = ps.pairs[static_cast<size_t>(e.pj)];
  if (a.squared() || b.squared()) {
    const Monomial& sq = a.squared() ? a.a : b.a;
    const Monomial& x = a.squared() ? e.to : e.from;
    Monomial y = checked_div(ps.beta, x);
    add_sym(s, index_in(basis, sq, "squared"), index_in(basis, sq, "squared"),
            Rational(2));
    add_sym(s, index_in(basis, x, "triple"), index_in(basis, y, "triple"),
            Rational(-1));
  } else {
    // +1 on the pair containing the transform result, -1 on the source pair.
    Monomial pt = checked_div(ps.beta, e.to);
    Monomial px = checked_div(ps.beta, e.from);
    add_sym(s, index_in(basis, e.to, "rect"), index_in(basis, pt, "rect"),
            Rational(1));
    add_sym(s, index_in(basis, e.from, "rect"), index_in(basis, px, "rect"),
            Rational(-1));
  }
  return s;
}

std::vector<RatMat> annihilators_impl(const MonomialBasis& basis,
                                      bool allow_components) {
  std::vector<RatMat> out;
  auto buckets = all_buckets(basis);
  for (auto& [beta, ps] : buckets) {
    if (ps.pairs.size() < 2) continue;
    std::vector<int> reps;
    auto tree = spanning_tree(ps, basis.caps(), -1, !allow_components, &reps);
    for (const auto& e : tree) out.push_back(edge_pattern(e, ps, basis));
    // A pruned basis can leave the pair graph disconnected; bridge the
    // components with plain two-pair annihilators.
    for (size_t c = 1; c < reps.size(); ++c) {
      const MonomialPair& p = ps.pairs[static_cast<size_t>(reps[0])];
      const MonomialPair& q = ps.pairs[static_cast<size_t>(reps[c])];
      RatMat s(basis.size(), basis.size());
      add_sym(s, index_in(basis, p.a, "bridge"), index_in(basis, p.b, "bridge"),
              p.squared() ? Rational(1) : Rational(1, 2));
      add_sym(s, index_in(basis, q.a, "bridge"), index_in(basis, q.b, "bridge"),
              q.squared() ? Rational(-1) : Rational(-1, 2));
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

std::vector<RatMat> annihilator_basis(const MonomialBasis& basis) {
  if (basis.size() == 0) throw BadInput("empty basis");
  return annihilators_impl(basis, /*allow_components=*/false);
}

std::vector<RatMat> annihilator_span(const MonomialBasis& basis) {
  if (basis.size() == 0) throw BadInput("empty basis");
  return annihilators_impl(basis, /*allow_components=*/true);
}

namespace {

// Exact completion of a residual defect by a dense linear solve over the
// symmetric matrices C_v, v != dist_var.  Returns false when infeasible.
bool complete_by_solve(const RatMat& residual, const MonomialBasis& basis,
                       int dist_var, std::vector<RatMat>& out) {
  const int d = basis.vars();
  const int N = basis.size();
  // Unknown ids for entries (v, i <= j).
  std::vector<int> var_of;
  std::map<std::tuple<int, int, int>, int> id;
  for (int v = 0; v < d; ++v) {
    if (v == dist_var) continue;
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        id.emplace(std::make_tuple(v, i, j), static_cast<int>(var_of.size()));
        var_of.push_back(v);
      }
  }
  // Equations indexed by (row u, product monomial mu).
  std::map<std::pair<int, std::vector<int>>, std::pair<std::vector<int>, Rational>>
      eqs;
  auto touch = [&](int u, const Monomial& mu)
      -> std::pair<std::vector<int>, Rational>& {
    return eqs[{u, mu.exponents()}];
  };
  for (int u = 0; u < N; ++u)
    for (int j = 0; j < N; ++j) {
      // Unknown terms z_v * alpha_j at row u.
      for (int v = 0; v < d; ++v) {
        if (v == dist_var) continue;
        Monomial mu = basis.at(j).times_var(v);
        auto& eq = touch(u, mu);
        eq.first.push_back(id.at(std::make_tuple(v, std::min(u, j), std::max(u, j))));
      }
      // Fixed term z_k * residual[u][j].
      if (!residual(u, j).is_zero()) {
        Monomial mu = basis.at(j).times_var(dist_var);
        auto& eq = touch(u, mu);
        eq.second += residual(u, j);
      }
    }
  // Assemble rows that are not trivially 0 = 0.
  std::vector<std::pair<std::vector<int>, Rational>> rows;
  for (auto& [key, eq] : eqs)
    if (!eq.first.empty() || !eq.second.is_zero()) rows.push_back(eq);
  RatMat A(static_cast<int>(rows.size()), static_cast<int>(var_of.size()));
  RatMat b(static_cast<int>(rows.size()), 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int uid : rows[r].first) A(static_cast<int>(r), uid) += Rational(1);
    b(static_cast<int>(r), 0) = -rows[r].second;
  }
  auto x = solve_linear(std::move(A), std::move(b));
  if (!x) return false;
  int uid = 0;
  for (int v = 0; v < d; ++v) {
    if (v == dist_var) continue;
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        const Rational& val = (*x)(uid++, 0);
        if (!val.is_zero()) add_sym(out[static_cast<size_t>(v)], i, j, val);
      }
  }
  return true;
}

}  // namespace

std::vector<RatMat> defect_solve(const RatMat& S, const MonomialBasis& basis,
                                 int dist_var) {
  const int d = basis.vars();
  const int N = basis.size();
  const int n = basis.degree();
  if (dist_var < 0 || dist_var >= d)
    throw BadInput("distinguished variable out of range");
  if (S.rows() != N || S.cols() != N)
    throw SizeMismatch("defect matrix does not match the basis");
  if (!S.is_symmetric())
    throw PreconditionViolated("defect matrix must be symmetric");
  if (!psi_quadratic(S, basis, 1).is_zero())
    throw PreconditionViolated("Psi S Psi^T does not vanish");
  const int nk = effective_cap(basis.caps(), dist_var, n);
  for (int j = 0; j < N; ++j) {
    if (basis.at(j).exponent(dist_var) != nk) continue;
    for (int i = 0; i < N; ++i)
      if (!S(i, j).is_zero())
        throw PreconditionViolated(
            "S does not annihilate the top derivative column of Psi");
  }

  std::vector<RatMat> out(static_cast<size_t>(d), RatMat(N, N));
  out[static_cast<size_t>(dist_var)] = S;

  MonomialBasis sub = basis.restricted(dist_var, nk - 1);
  RatMat residual(N, N);
  auto buckets = all_buckets(sub);
  for (auto& [beta, ps] : buckets) {
    const int m = static_cast<int>(ps.pairs.size());
    std::vector<Rational> coord(static_cast<size_t>(m));
    bool any = false;
    for (int p = 0; p < m; ++p) {
      int i = index_in(basis, ps.pairs[static_cast<size_t>(p)].a, "pair");
      int j = index_in(basis, ps.pairs[static_cast<size_t>(p)].b, "pair");
      coord[static_cast<size_t>(p)] = S(i, j);
      if (!S(i, j).is_zero()) any = true;
    }
    if (!any) continue;
    if (m == 1)
      throw InternalError("lone pair with nonzero coefficient survived the "
                          "annihilator check");
    auto tree = spanning_tree(ps, sub.caps(), dist_var, /*strict=*/true,
                              nullptr);
    // Decompose the bucket coordinates over the tree patterns.
    RatMat A(m, static_cast<int>(tree.size()));
    RatMat b(m, 1);
    for (size_t e = 0; e < tree.size(); ++e) {
      const TreeEdge& te = tree[e];
      const MonomialPair& pa = ps.pairs[static_cast<size_t>(te.pi)];
      const MonomialPair& pb = ps.pairs[static_cast<size_t>(te.pj)];
      if (pa.squared() || pb.squared()) {
        int sq = pa.squared() ? te.pi : te.pj;
        int other = pa.squared() ? te.pj : te.pi;
        A(sq, static_cast<int>(e)) += Rational(2);
        A(other, static_cast<int>(e)) += Rational(-1);
      } else {
        A(te.pj, static_cast<int>(e)) += Rational(1);
        A(te.pi, static_cast<int>(e)) += Rational(-1);
      }
    }
    for (int p = 0; p < m; ++p) b(p, 0) = coord[static_cast<size_t>(p)];
    auto c = solve_linear(A, b);
    if (!c)
      throw InternalError("annihilator decomposition failed for a bucket");

    for (size_t e = 0; e < tree.size(); ++e) {
      const Rational& ce = (*c)(static_cast<int>(e), 0);
      if (ce.is_zero()) continue;
      const TreeEdge& te = tree[e];
      const MonomialPair& pa = ps.pairs[static_cast<size_t>(te.pi)];
      const MonomialPair& pb = ps.pairs[static_cast<size_t>(te.pj)];
      bool squared_case = pa.squared() || pb.squared();
      bool pattern_ok = te.r != dist_var && te.l != dist_var;
      if (pattern_ok && squared_case) {
        const Monomial& sq = pa.squared() ? pa.a : pb.a;
        const Monomial& x = pa.squared() ? te.to : te.from;
        // x = sq * z_rr / z_ll
        int rr = -1, ll = -1;
        for (int v = 0; v < d; ++v) {
          if (x.exponent(v) > sq.exponent(v)) rr = v;
          if (x.exponent(v) < sq.exponent(v)) ll = v;
        }
        Monomial y = checked_div(ps.beta, x);
        Monomial m1 = sq.times_var(dist_var).with_exponent(ll, sq.exponent(ll) - 1);
        Monomial m2 = sq.times_var(dist_var).with_exponent(rr, sq.exponent(rr) - 1);
        auto i1 = basis.index_of(m1), i2 = basis.index_of(m2);
        if (i1 && i2) {
          RatMat& cr = out[static_cast<size_t>(rr)];
          RatMat& cl = out[static_cast<size_t>(ll)];
          add_pair(cr, *i1, index_in(basis, y, "5x5"), ce);
          add_pair(cr, *i2, index_in(basis, sq, "5x5"), -ce);
          add_pair(cl, *i1, index_in(basis, sq, "5x5"), -ce);
          add_pair(cl, *i2, index_in(basis, x, "5x5"), ce);
          continue;
        }
      } else if (pattern_ok) {
        const Monomial& t = te.to;
        const Monomial& x = te.from;
        Monomial bt = checked_div(ps.beta, t);
        Monomial bx = checked_div(ps.beta, x);
        Monomial g1 = checked_div(x, Monomial(d).times_var(te.l));
        Monomial g2 = checked_div(bx, Monomial(d).times_var(te.r));
        Monomial u1 = g2.times_var(dist_var);
        Monomial u2 = g1.times_var(dist_var);
        auto i1 = basis.index_of(u1), i2 = basis.index_of(u2);
        if (i1 && i2) {
          RatMat& cr = out[static_cast<size_t>(te.r)];
          RatMat& cl = out[static_cast<size_t>(te.l)];
          add_pair(cl, *i1, index_in(basis, t, "6x6"), -ce);
          add_pair(cl, *i2, index_in(basis, bx, "6x6"), ce);
          add_pair(cr, *i1, index_in(basis, x, "6x6"), ce);
          add_pair(cr, *i2, index_in(basis, bt, "6x6"), -ce);
          continue;
        }
      }
      residual = residual + edge_pattern(te, ps, basis).scaled(ce);
    }
  }

  if (!residual.is_zero()) {
    if (!complete_by_solve(residual, basis, dist_var, out))
      throw DefectUncompletable(
          "no symmetric completion exists for the defect component whose "
          "tree edge transforms along the distinguished variable");
  }

  Pencil pencil(d, N);
  for (int v = 0; v < d; ++v) pencil.coeff(v) = out[static_cast<size_t>(v)];
  pencil.validate_symmetric();
  if (!pencil_times_psi(pencil, basis, 1).is_zero())
    throw InternalError("defect completion failed its exact verification");
  return out;
}

}  // namespace longres
