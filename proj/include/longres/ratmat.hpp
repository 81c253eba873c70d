#pragma once

#include <optional>
#include <vector>

#include "longres/rational.hpp"

namespace longres {

// Dense matrix of exact rationals.  All the linear algebra in the library
// that carries proof obligations (ranks, PSD verification, defect solves)
// runs on this type; floating point is quarantined in the numeric SOS loop.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {}

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) {
    return a_[static_cast<size_t>(i) * static_cast<size_t>(cols_) +
              static_cast<size_t>(j)];
  }
  const Rational& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * static_cast<size_t>(cols_) +
              static_cast<size_t>(j)];
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }
  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  RatMat transpose() const {
    RatMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RatMat scaled(const Rational& c) const {
    RatMat out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * c;
    return out;
  }

  friend RatMat operator+(const RatMat& x, const RatMat& y) {
    require_same_shape(x, y);
    RatMat out(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] + y.a_[i];
    return out;
  }
  friend RatMat operator-(const RatMat& x, const RatMat& y) {
    require_same_shape(x, y);
    RatMat out(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] - y.a_[i];
    return out;
  }
  friend RatMat operator*(const RatMat& x, const RatMat& y);

  friend bool operator==(const RatMat& x, const RatMat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const RatMat& x, const RatMat& y) {
    return !(x == y);
  }

 private:
  static void require_same_shape(const RatMat& x, const RatMat& y);
  int rows_, cols_;
  std::vector<Rational> a_;
};

int rank(RatMat a);

// One solution of A x = b (free variables set to zero), empty if the
// system is inconsistent.  b may have several columns.
std::optional<RatMat> solve_linear(RatMat a, RatMat b);

std::optional<RatMat> inverse(const RatMat& a);

// Symmetric LDL^T factorization with diagonal pivoting.  For a PSD input
// produces perm, unit lower-triangular L and nonnegative pivots with
// a[perm[i]][perm[j]] == (L diag(pivots) L^T)[i][j]; for an input that is
// not PSD, psd == false and the factors are meaningless.
struct LdlResult {
  bool psd = false;
  std::vector<int> perm;
  RatMat unit_lower;
  std::vector<Rational> pivots;
  int rank = 0;
};
LdlResult ldl_psd(const RatMat& a);

bool exactly_psd(const RatMat& a);

}  // namespace longres
