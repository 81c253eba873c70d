#pragma once

#include <optional>
#include <vector>

#include "longres/form.hpp"
#include "longres/ratmat.hpp"

namespace longres {

// Rectangular matrix of forms of one common degree (e.g. the factor H of an
// SOS certificate).  Zero entries are re-tagged to the common degree.
class FormMatrix {
 public:
  FormMatrix(int rows, int cols, int vars, int degree)
      : rows_(rows), cols_(cols), d_(vars), degree_(degree),
        e_(static_cast<size_t>(rows) * static_cast<size_t>(cols),
           Form(vars, degree)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int vars() const { return d_; }
  int degree() const { return degree_; }

  const Form& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * static_cast<size_t>(cols_) +
              static_cast<size_t>(j)];
  }
  void set(int i, int j, const Form& f);

  bool is_zero() const {
    for (const auto& f : e_)
      if (!f.is_zero()) return false;
    return true;
  }

  FormMatrix transpose() const;
  FormMatrix scaled(const Form& f) const;
  FormMatrix scaled(const Rational& c) const;
  friend FormMatrix operator+(const FormMatrix& a, const FormMatrix& b);
  friend FormMatrix operator-(const FormMatrix& a, const FormMatrix& b);
  friend FormMatrix operator*(const FormMatrix& a, const FormMatrix& b);
  friend bool operator==(const FormMatrix& a, const FormMatrix& b);
  friend bool operator!=(const FormMatrix& a, const FormMatrix& b) {
    return !(a == b);
  }

  static FormMatrix from_constant(const RatMat& c, int vars);
  // c * f for a constant matrix c and scalar form f.
  static FormMatrix constant_times(const RatMat& c, const Form& f);

 private:
  int rows_, cols_, d_, degree_;
  std::vector<Form> e_;
};

// Symmetric m x m matrix of forms of one common degree.
class MatrixForm {
 public:
  MatrixForm(int m, int vars, int degree) : mat_(m, m, vars, degree) {}
  static MatrixForm scalar(const Form& f);
  // Validates symmetry; throws InvariantError otherwise.
  static MatrixForm from_matrix(const FormMatrix& mat);
  static MatrixForm constant(const RatMat& c, int vars);

  int size() const { return mat_.rows(); }
  int vars() const { return mat_.vars(); }
  int degree() const { return mat_.degree(); }
  bool is_zero() const { return mat_.is_zero(); }

  const Form& entry(int i, int j) const { return mat_.at(i, j); }
  // Writes both (i,j) and (j,i).
  void set_entry(int i, int j, const Form& f) {
    mat_.set(i, j, f);
    if (i != j) mat_.set(j, i, f);
  }

  const FormMatrix& matrix() const { return mat_; }

  int degree_in(int k) const;
  bool multiaffine() const;

  MatrixForm partial_derivative(int k) const;
  MatrixForm scaled(const Form& f) const {
    return MatrixForm(mat_.scaled(f));
  }
  MatrixForm scaled(const Rational& c) const {
    return MatrixForm(mat_.scaled(c));
  }
  friend MatrixForm operator+(const MatrixForm& a, const MatrixForm& b) {
    return MatrixForm(a.mat_ + b.mat_);
  }
  friend MatrixForm operator-(const MatrixForm& a, const MatrixForm& b) {
    return MatrixForm(a.mat_ - b.mat_);
  }
  friend bool operator==(const MatrixForm& a, const MatrixForm& b) {
    return a.mat_ == b.mat_;
  }
  friend bool operator!=(const MatrixForm& a, const MatrixForm& b) {
    return !(a == b);
  }

  std::vector<std::vector<GaussianRational>> evaluate(
      const std::vector<GaussianRational>& point) const;
  RatMat evaluate_real(const std::vector<Rational>& point) const;

 private:
  explicit MatrixForm(FormMatrix mat) : mat_(std::move(mat)) {}
  FormMatrix mat_;
};

// Rational matrix-valued function f(z) = P(z)/q(z), homogeneous of degree 1.
class RatFn {
 public:
  RatFn(MatrixForm P, Form q);

  const MatrixForm& num() const { return P_; }
  const Form& den() const { return q_; }
  int size() const { return P_.size(); }
  int vars() const { return q_.vars(); }

  bool multiaffine() const { return P_.multiaffine() && q_.multiaffine(); }

  // Exact value at a point with q(point) != 0.
  std::vector<std::vector<GaussianRational>> evaluate(
      const std::vector<GaussianRational>& point) const;
  std::optional<RatMat> evaluate_real(const std::vector<Rational>& point) const;

 private:
  MatrixForm P_;
  Form q_;
};

// Partial Wronskian q dP/dz_k - P dq/dz_k, a symmetric matrix form of
// degree 2 deg q.
MatrixForm wronskian(const Form& q, const MatrixForm& P, int k);
MatrixForm wronskian(const RatFn& f, int k);

struct SampleCheckResult {
  bool no_violation = true;
  std::vector<Rational> point;   // set when a violation was found
  double min_eigenvalue = 0.0;   // at the violating point
};

// Evaluates F exactly at pseudo-random rational points of [-10,10]^d and
// reports the first point whose value has an eigenvalue below -1e-9.  A
// necessary-condition check only.
SampleCheckResult psd_sample_check(const MatrixForm& F, int trials,
                                   std::uint64_t seed);

// Numeric PSD check of a rational symmetric matrix: min eigenvalue >= -tol.
bool numerically_psd(const RatMat& a, double tol = 1e-9);
double min_eigenvalue(const RatMat& a);

}  // namespace longres
