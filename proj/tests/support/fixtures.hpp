#pragma once

// Shared fixtures and independent oracles for the test suites.  Everything
// here goes through the text grammar so the fixtures stay readable; the
// oracles are deliberately simple-minded (brute force, union-find, generic
// linear solves) and independent of the code paths they check.

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "longres/gram.hpp"
#include "longres/io.hpp"
#include "longres/matrix_form.hpp"

namespace fixtures {

using namespace longres;

inline Form form(const std::string& text, int d) { return parse_form(text, d); }

inline MatrixForm scalar(const std::string& text, int d) {
  return MatrixForm::scalar(parse_form(text, d));
}

inline RatFn ratfn(const std::string& num, const std::string& den, int d) {
  return RatFn(scalar(num, d), form(den, d));
}

inline MatrixForm matrix(const std::vector<std::vector<std::string>>& rows,
                         int d) {
  const int m = static_cast<int>(rows.size());
  int degree = 0;
  std::vector<std::vector<Form>> entries;
  for (const auto& row : rows) {
    entries.emplace_back();
    for (const auto& cell : row) {
      entries.back().push_back(parse_form(cell, d));
      if (!entries.back().back().is_zero())
        degree = entries.back().back().degree();
    }
  }
  FormMatrix mat(m, m, d, degree);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      mat.set(i, j, entries[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return MatrixForm::from_matrix(mat);
}

inline RatFn matrix_ratfn(const std::vector<std::vector<std::string>>& rows,
                          const std::string& den, int d) {
  return RatFn(matrix(rows, d), form(den, d));
}

// ---------------------------------------------------------------------------
// Corpus: the acceptance fixtures.

// f = (3/2) z1
inline RatFn corpus_scalar_multiple() { return ratfn("3/2*z1", "1", 1); }
// f = z1 + z2
inline RatFn corpus_sum() { return ratfn("z1 + z2", "1", 2); }
// f = z1 z2 / (z1 + z2)
inline RatFn corpus_parallel2() { return ratfn("z1*z2", "z1+z2", 2); }
// f = 2 z1 z2 z3 / (z1 z2 + z2 z3 + z1 z3)
inline RatFn corpus_parallel3() {
  return ratfn("2*z1*z2*z3", "z1*z2 + z2*z3 + z1*z3", 3);
}
// 2x2 Schur complement of a hand-written PSD pencil:
// f = z1 z2/(z1+z2) * [[1,-1],[-1,1]]
inline RatFn corpus_matrix2x2() {
  return matrix_ratfn({{"z1*z2", "-z1*z2"}, {"-z1*z2", "z1*z2"}}, "z1+z2", 2);
}
// extraction fixture: f = (z1^2 + 2 z1 z2)/(z1+z2) = z1 + z1 z2/(z1+z2)
inline RatFn corpus_extraction() {
  return ratfn("z1^2 + 2*z1*z2", "z1+z2", 2);
}

inline std::vector<RatFn> corpus() {
  return {corpus_scalar_multiple(), corpus_sum(),      corpus_parallel2(),
          corpus_parallel3(),       corpus_matrix2x2(), corpus_extraction()};
}

// Multiaffine corpus members (the positivity criterion applies directly).
inline std::vector<RatFn> corpus_multiaffine() {
  return {corpus_sum(), corpus_parallel2(), corpus_parallel3(),
          corpus_matrix2x2()};
}

// Multiaffine fixture with one indefinite Wronskian:
// W_{z1} = z2^2 - z2 z3 - z3^2 is negative at (z2,z3) = (0,1).
inline RatFn indefinite_fixture() {
  return ratfn("z1*z2 - z1*z3 + z2*z3", "z1+z2+z3", 3);
}

// The Choi biquadratic form, PSD but not SOS.  Variables
// (x1,x2,x3,y1,y2,y3) = (z1,...,z6).
inline MatrixForm choi_form() {
  return scalar(
      "z1^2*z4^2 + z2^2*z5^2 + z3^2*z6^2"
      " - 2*z1*z4*z2*z5 - 2*z2*z5*z3*z6 - 2*z1*z4*z3*z6"
      " + 2*z1^2*z5^2 + 2*z2^2*z6^2 + 2*z3^2*z4^2",
      6);
}

// s = (x1-x2)(x1+x2), a product of indefinite irreducible linear forms.
inline Form choi_artin_square_root() { return form("z1^2 - z2^2", 6); }

// ---------------------------------------------------------------------------
// Oracles.

// Union-find connectivity oracle for spanning trees.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<size_t>(x)] != x) {
      parent_[static_cast<size_t>(x)] =
          parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
      x = parent_[static_cast<size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<size_t>(a)] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Nullity of the Gram coefficient-matching system by a generic exact rank
// computation: variables s_ij (i<=j), one equation per product monomial.
inline int annihilator_nullity_oracle(const MonomialBasis& basis) {
  const int N = basis.size();
  std::vector<std::pair<int, int>> vars;
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) vars.emplace_back(i, j);
  std::map<Monomial, int> eq_of;
  for (const auto& [i, j] : vars) {
    Monomial beta = basis.at(i).times(basis.at(j));
    eq_of.emplace(beta, static_cast<int>(eq_of.size()));
  }
  RatMat A(static_cast<int>(eq_of.size()), static_cast<int>(vars.size()));
  for (size_t v = 0; v < vars.size(); ++v) {
    Monomial beta = basis.at(vars[v].first).times(basis.at(vars[v].second));
    A(eq_of.at(beta), static_cast<int>(v)) += Rational(1);
  }
  return static_cast<int>(vars.size()) - rank(A);
}

// Span dimension of a list of symmetric matrices, as the rank of their
// flattened coordinate matrix.
inline int span_dimension(const std::vector<RatMat>& mats) {
  if (mats.empty()) return 0;
  const int n = mats.front().rows();
  RatMat flat(static_cast<int>(mats.size()), n * n);
  for (size_t r = 0; r < mats.size(); ++r)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        flat(static_cast<int>(r), i * n + j) = mats[r](i, j);
  return rank(flat);
}

// ---------------------------------------------------------------------------
// Random generators (seeded, deterministic).

inline Rational random_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  long n = num(rng);
  if (n == 0) n = 1;
  return Rational(n, den(rng));
}

inline Form random_form(std::mt19937_64& rng, int d, int degree,
                        int max_var_degree, int terms) {
  MonomialBasis all = MonomialBasis::all_of_degree(
      d, degree, std::vector<int>(static_cast<size_t>(d), max_var_degree));
  Form out(d, degree);
  if (all.size() == 0) return out;
  std::uniform_int_distribution<int> pick(0, all.size() - 1);
  for (int t = 0; t < terms; ++t) {
    Monomial m = all.at(pick(rng));
    out.set_coefficient(m, out.coefficient(m) + random_coeff(rng));
  }
  return out;
}

inline Form random_nonzero_form(std::mt19937_64& rng, int d, int degree,
                                int max_var_degree, int terms) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Form f = random_form(rng, d, degree, max_var_degree, terms);
    if (!f.is_zero()) return f;
  }
  throw std::logic_error("random form generator starved");
}

inline MatrixForm random_matrix_form(std::mt19937_64& rng, int m, int d,
                                     int degree, int max_var_degree,
                                     int terms) {
  MatrixForm out(m, d, degree);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      out.set_entry(i, j, random_form(rng, d, degree, max_var_degree, terms));
  return out;
}


// Annihilator basis patterns of the deg_k-restricted block whose elementary
// transformation avoids the distinguished variable; these are exactly the
// components the defect construction covers.  Emitted over full-basis
// indices.  Independent of the library's spanning-tree machinery.
inline std::vector<RatMat> avoiding_patterns(const MonomialBasis& basis,
                                             int dist_var) {
  const int d = basis.vars();
  int cap = basis.caps()[static_cast<size_t>(dist_var)];
  if (cap < 0 || cap > basis.degree()) cap = basis.degree();
  MonomialBasis sub = basis.restricted(dist_var, cap - 1);
  std::vector<RatMat> out;
  auto add_sym = [](RatMat& s, int i, int j, const Rational& v) {
    s(i, j) += v;
    if (i != j) s(j, i) += v;
  };
  for (int i = 0; i < sub.size(); ++i)
    for (int j = i; j < sub.size(); ++j) {
      Monomial x = sub.at(i);
      Monomial px = sub.at(j);
      Monomial beta = x.times(px);
      for (int r = 0; r < d; ++r) {
        if (r == dist_var) continue;
        for (int l = 0; l < d; ++l) {
          if (l == r || l == dist_var || x.exponent(l) < 1) continue;
          int rcap = sub.caps()[static_cast<size_t>(r)];
          if (rcap >= 0 && x.exponent(r) + 1 > rcap) continue;
          Monomial t = x.times_var(r).with_exponent(l, x.exponent(l) - 1);
          auto pt = beta.divided_by(t);
          if (!pt || !sub.index_of(t) || !sub.index_of(*pt)) continue;
          if ((t == x && *pt == px) || (t == px && *pt == x)) continue;
          int ix = *basis.index_of(x), ipx = *basis.index_of(px);
          int it = *basis.index_of(t), ipt = *basis.index_of(*pt);
          RatMat s(basis.size(), basis.size());
          if (x == px) {
            add_sym(s, ix, ix, Rational(2));
            add_sym(s, it, ipt, Rational(-1));
          } else if (t == *pt) {
            add_sym(s, it, it, Rational(2));
            add_sym(s, ix, ipx, Rational(-1));
          } else {
            add_sym(s, it, ipt, Rational(1));
            add_sym(s, ix, ipx, Rational(-1));
          }
          out.push_back(std::move(s));
        }
      }
    }
  return out;
}

}  // namespace fixtures
