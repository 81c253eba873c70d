#include <doctest.h>

#include <map>
#include <random>

#include "longres/gram.hpp"
#include "longres/pencil.hpp"
#include "support/fixtures.hpp"

using namespace longres;

namespace {

Monomial mono(std::vector<int> e) { return Monomial(std::move(e)); }

bool annihilates(const RatMat& s, const MonomialBasis& basis) {
  return psi_quadratic(s, basis, 1).is_zero();
}

// The entries of an annihilator sum to zero along every product
// monomial.
bool pair_sums_vanish(const RatMat& s, const MonomialBasis& basis) {
  std::map<Monomial, Rational> sums;
  for (int i = 0; i < basis.size(); ++i)
    for (int j = 0; j < basis.size(); ++j)
      sums[basis.at(i).times(basis.at(j))] += s(i, j);
  for (const auto& [beta, v] : sums)
    if (!v.is_zero()) return false;
  return true;
}

// Verifies the pencil annihilation identity for the returned matrices.
bool defect_identity_holds(const std::vector<RatMat>& sols,
                           const MonomialBasis& basis) {
  Pencil p(basis.vars(), basis.size());
  for (int v = 0; v < basis.vars(); ++v) p.coeff(v) = sols[static_cast<size_t>(v)];
  return pencil_times_psi(p, basis, 1).is_zero();
}

void add_sym(RatMat& s, int i, int j, const Rational& v) {
  s(i, j) += v;
  if (i != j) s(j, i) += v;
}

}  // namespace

TEST_CASE("admissible exponent boxes") {
  // beta = z1^2, caps (1,1): the only admissible split is (z1, z1).
  PairSet ps = admissible_exponents(mono({2, 0}), {1, 1});
  REQUIRE(ps.pairs.size() == 1);
  CHECK(ps.pairs[0].a == mono({1, 0}));
  CHECK(ps.pairs[0].squared());

  ps = admissible_exponents(mono({1, 1}), {1, 1});
  REQUIRE(ps.pairs.size() == 1);
  CHECK(ps.pairs[0].a == mono({1, 0}));
  CHECK(ps.pairs[0].b == mono({0, 1}));

  ps = admissible_exponents(mono({2, 1, 1}), {1, 1, 1});
  REQUIRE(ps.pairs.size() == 1);
  CHECK(ps.pairs[0].a == mono({1, 1, 0}));
  CHECK(ps.pairs[0].b == mono({1, 0, 1}));

  CHECK_THROWS_AS(admissible_exponents(mono({1, 1, 1}), {1, 1, 1}), BadDegree);
}

TEST_CASE("elementary monomial transformations") {
  CHECK(elementary_transform(mono({1, 1}), 0, 1, {2, 1}) == mono({2, 0}));
  CHECK_THROWS_AS(elementary_transform(mono({1, 0}), 0, 0, {2, 2}),
                  NotApplicable);
  CHECK_THROWS_AS(elementary_transform(mono({1, 1}), 0, 1, {1, 1}),
                  NotApplicable);
  CHECK(elementary_transform(mono({0, 1, 1}), 0, 2, {1, 1, 1}) ==
        mono({1, 1, 0}));
}

TEST_CASE("pair graph trees") {
  PairSet single = admissible_exponents(mono({2, 1, 1}), {1, 1, 1});
  CHECK(pair_graph_tree(single, {1, 1, 1}).empty());

  PairSet two = admissible_exponents(mono({2, 2}), {2, 2});
  REQUIRE(two.pairs.size() == 2);
  CHECK(pair_graph_tree(two, {2, 2}).size() == 1);
}

TEST_CASE("pair graph trees span on random boxes") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 40; ++t) {
    int d = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 3);
    std::vector<int> caps(static_cast<size_t>(d));
    for (auto& c : caps) c = 1 + static_cast<int>(rng() % 3);
    MonomialBasis basis = MonomialBasis::all_of_degree(d, n, caps);
    if (basis.size() == 0) continue;
    std::uniform_int_distribution<int> pick(0, basis.size() - 1);
    Monomial beta = basis.at(pick(rng)).times(basis.at(pick(rng)));
    PairSet ps = admissible_exponents(beta, caps);
    if (ps.pairs.empty()) continue;
    auto edges = pair_graph_tree(ps, caps);
    CHECK(edges.size() == ps.pairs.size() - 1);
    fixtures::UnionFind uf(static_cast<int>(ps.pairs.size()));
    int merges = 0;
    for (const auto& [i, j] : edges)
      if (uf.unite(i, j)) ++merges;
    CHECK(merges == static_cast<int>(ps.pairs.size()) - 1);
  }
}

TEST_CASE("annihilator basis of a pairless space is empty") {
  MonomialBasis basis = MonomialBasis::multiaffine(2, 1);
  CHECK(annihilator_basis(basis).empty());
  CHECK(fixtures::annihilator_nullity_oracle(basis) == 0);
}

TEST_CASE("annihilator basis of the binary quadratics") {
  MonomialBasis basis =
      MonomialBasis::all_of_degree(2, 2, std::vector<int>{2, 2});
  auto anns = annihilator_basis(basis);
  REQUIRE(anns.size() == 1);
  RatMat expected(3, 3);
  expected(0, 2) = Rational(-1);
  expected(2, 0) = Rational(-1);
  expected(1, 1) = Rational(2);
  CHECK(anns[0] == expected);
  CHECK(annihilates(anns[0], basis));
  CHECK(pair_sums_vanish(anns[0], basis));
}

TEST_CASE("annihilator basis matches the generic nullity oracle") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    int d = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 3);
    std::vector<int> caps(static_cast<size_t>(d));
    for (auto& c : caps) c = 1 + static_cast<int>(rng() % 3);
    MonomialBasis basis = MonomialBasis::all_of_degree(d, n, caps);
    if (basis.size() == 0) continue;
    auto anns = annihilator_basis(basis);
    for (const auto& s : anns) {
      CHECK(s.is_symmetric());
      CHECK(annihilates(s, basis));
      CHECK(pair_sums_vanish(s, basis));
      // 3 or 4 nonzero entries in the two patterns.
      int nonzero = 0;
      for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j)
          if (!s(i, j).is_zero()) ++nonzero;
      CHECK((nonzero == 3 || nonzero == 4));
    }
    CHECK(fixtures::span_dimension(anns) ==
          fixtures::annihilator_nullity_oracle(basis));
    CHECK(static_cast<int>(anns.size()) ==
          fixtures::annihilator_nullity_oracle(basis));
  }
}

TEST_CASE("defect solve: zero defect") {
  MonomialBasis basis =
      MonomialBasis::all_of_degree(2, 2, std::vector<int>{2, 2});
  RatMat zero(basis.size(), basis.size());
  auto sols = defect_solve(zero, basis, 1);
  for (int v = 0; v < 2; ++v) CHECK(sols[static_cast<size_t>(v)].is_zero());
}

TEST_CASE("defect solve rejects violated preconditions") {
  MonomialBasis basis =
      MonomialBasis::all_of_degree(2, 2, std::vector<int>{2, 2});
  RatMat bad(basis.size(), basis.size());
  bad(0, 0) = Rational(1);  // Psi S Psi^T = z1^4 != 0
  CHECK_THROWS_AS(defect_solve(bad, basis, 1), PreconditionViolated);
}

TEST_CASE("defect solve reproduces the five-monomial completion") {
  // Basis of degree-2 monomials with caps (2,2,1); distinguished z3.
  MonomialBasis basis =
      MonomialBasis::all_of_degree(3, 2, std::vector<int>{2, 2, 1});
  REQUIRE(basis.size() == 5);
  int i_z1z1 = *basis.index_of(mono({2, 0, 0}));
  int i_z1z2 = *basis.index_of(mono({1, 1, 0}));
  int i_z2z2 = *basis.index_of(mono({0, 2, 0}));
  int i_z1z3 = *basis.index_of(mono({1, 0, 1}));
  int i_z2z3 = *basis.index_of(mono({0, 1, 1}));

  RatMat S(5, 5);
  add_sym(S, i_z1z2, i_z1z2, Rational(2));
  add_sym(S, i_z1z1, i_z2z2, Rational(-1));
  auto sols = defect_solve(S, basis, 2);
  CHECK(sols[2] == S);
  CHECK(defect_identity_holds(sols, basis));

  RatMat C1(5, 5), C2(5, 5);
  add_sym(C1, i_z1z3, i_z2z2, Rational(1));
  add_sym(C1, i_z2z3, i_z1z2, Rational(-1));
  add_sym(C2, i_z1z3, i_z1z2, Rational(-1));
  add_sym(C2, i_z2z3, i_z1z1, Rational(1));
  CHECK(sols[0] == C1);
  CHECK(sols[1] == C2);
}

TEST_CASE("defect solve handles the four-monomial pattern") {
  MonomialBasis basis =
      MonomialBasis::all_of_degree(3, 2, std::vector<int>{2, 2, 2});
  RatMat S(basis.size(), basis.size());
  add_sym(S, *basis.index_of(mono({1, 1, 0})), *basis.index_of(mono({1, 0, 1})),
          Rational(1));
  add_sym(S, *basis.index_of(mono({2, 0, 0})), *basis.index_of(mono({0, 1, 1})),
          Rational(-1));
  auto sols = defect_solve(S, basis, 2);
  CHECK(sols[2] == S);
  CHECK(defect_identity_holds(sols, basis));
  for (int v = 0; v < 3; ++v)
    CHECK(sols[static_cast<size_t>(v)].is_symmetric());
}

TEST_CASE("defect completions on random avoiding annihilators") {
  std::mt19937_64 rng(59);
  int done = 0;
  while (done < 20) {
    int d = 2 + static_cast<int>(rng() % 3);
    int n = 2 + static_cast<int>(rng() % 2);
    std::vector<int> caps(static_cast<size_t>(d));
    for (auto& c : caps) c = 1 + static_cast<int>(rng() % 3);
    int k = static_cast<int>(rng() % static_cast<std::uint64_t>(d));
    MonomialBasis basis = MonomialBasis::all_of_degree(d, n, caps);
    if (basis.size() == 0) continue;
    auto patterns = fixtures::avoiding_patterns(basis, k);
    if (patterns.empty()) continue;
    RatMat S(basis.size(), basis.size());
    for (const auto& p : patterns)
      if (rng() % 2) S = S + p.scaled(fixtures::random_coeff(rng));
    if (S.is_zero()) S = patterns.front();
    auto sols = defect_solve(S, basis, k);
    CHECK(sols[static_cast<size_t>(k)] == S);
    CHECK(defect_identity_holds(sols, basis));
    ++done;
  }
}

TEST_CASE("defects transforming along the distinguished variable can be "
          "genuinely uncompletable") {
  // A four-entry annihilator whose only pair-graph edge transforms along the
  // distinguished variable; the symmetric completion system is infeasible,
  // which is surfaced, never patched.
  MonomialBasis basis =
      MonomialBasis::all_of_degree(3, 3, std::vector<int>{2, 2, 3});
  RatMat S(basis.size(), basis.size());
  add_sym(S, *basis.index_of(mono({1, 2, 0})), *basis.index_of(mono({1, 0, 2})),
          Rational(1));
  add_sym(S, *basis.index_of(mono({2, 0, 1})), *basis.index_of(mono({0, 2, 1})),
          Rational(-1));
  CHECK_THROWS_AS(defect_solve(S, basis, 2), DefectUncompletable);
}
