#include "longres/ratmat.hpp"

#include <algorithm>

#include "longres/errors.hpp"

namespace longres {

void RatMat::require_same_shape(const RatMat& x, const RatMat& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
    throw SizeMismatch("matrix shapes differ");
}

RatMat operator*(const RatMat& x, const RatMat& y) {
  if (x.cols_ != y.rows_) throw SizeMismatch("inner dimensions differ");
  RatMat out(x.rows_, y.cols_);
  for (int i = 0; i < x.rows_; ++i)
    for (int k = 0; k < x.cols_; ++k) {
      const Rational& v = x(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < y.cols_; ++j) {
        const Rational& w = y(k, j);
        if (!w.is_zero()) out(i, j) += v * w;
      }
    }
  return out;
}

namespace {

// Row echelon reduction in place; returns pivot columns.
std::vector<int> eliminate(RatMat& m) {
  std::vector<int> pivot_cols;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!m(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = Rational(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Rational f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

}  // namespace

int rank(RatMat a) { return static_cast<int>(eliminate(a).size()); }

std::optional<RatMat> solve_linear(RatMat a, RatMat b) {
  if (a.rows() != b.rows()) throw SizeMismatch("rhs row count differs");
  const int n = a.cols(), k = b.cols();
  RatMat aug(a.rows(), n + k);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (int j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  std::vector<int> pivots = eliminate(aug);
  // Inconsistent if any pivot lands in the rhs block.
  for (int col : pivots)
    if (col >= n) return std::nullopt;
  RatMat x(n, k);
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < k; ++j)
      x(pivots[r], j) = aug(static_cast<int>(r), n + j);
  return x;
}

std::optional<RatMat> inverse(const RatMat& a) {
  if (a.rows() != a.cols()) throw SizeMismatch("inverse of non-square matrix");
  auto x = solve_linear(a, RatMat::identity(a.rows()));
  if (!x) return std::nullopt;
  // solve_linear zero-fills free variables, so a rank-deficient input would
  // silently produce garbage; re-check.
  if (rank(a) != a.rows()) return std::nullopt;
  return x;
}

LdlResult ldl_psd(const RatMat& a) {
  if (!a.is_symmetric()) throw SizeMismatch("ldl_psd needs a symmetric matrix");
  const int n = a.rows();
  LdlResult res;
  res.perm.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) res.perm[static_cast<size_t>(i)] = i;
  res.unit_lower = RatMat::identity(n);
  res.pivots.assign(static_cast<size_t>(n), Rational(0));

  RatMat w = a;
  for (int step = 0; step < n; ++step) {
    int p = step;
    for (int i = step + 1; i < n; ++i)
      if (w(i, i) > w(p, p)) p = i;
    if (w(p, p).sign() < 0) return res;  // negative diagonal: not PSD
    if (w(p, p).is_zero()) {
      // All remaining diagonals are <= 0; PSD forces the trailing block to
      // vanish entirely.
      for (int i = step; i < n; ++i)
        for (int j = step; j < n; ++j)
          if (!w(i, j).is_zero()) return res;
      res.rank = step;
      res.psd = true;
      return res;
    }
    if (p != step) {
      std::swap(res.perm[static_cast<size_t>(step)],
                res.perm[static_cast<size_t>(p)]);
      for (int j = 0; j < n; ++j) std::swap(w(step, j), w(p, j));
      for (int i = 0; i < n; ++i) std::swap(w(i, step), w(i, p));
      for (int j = 0; j < step; ++j)
        std::swap(res.unit_lower(step, j), res.unit_lower(p, j));
    }
    Rational d = w(step, step);
    res.pivots[static_cast<size_t>(step)] = d;
    for (int i = step + 1; i < n; ++i)
      res.unit_lower(i, step) = w(i, step) / d;
    for (int i = step + 1; i < n; ++i) {
      if (w(i, step).is_zero()) continue;
      for (int j = step + 1; j <= i; ++j) {
        if (w(j, step).is_zero()) continue;
        Rational upd = res.unit_lower(i, step) * w(j, step);
        w(i, j) -= upd;
        if (i != j) w(j, i) -= upd;
      }
    }
    for (int i = step + 1; i < n; ++i) {
      w(i, step) = Rational(0);
      w(step, i) = Rational(0);
    }
  }
  res.rank = n;
  res.psd = true;
  return res;
}

bool exactly_psd(const RatMat& a) { return ldl_psd(a).psd; }

}  // namespace longres
