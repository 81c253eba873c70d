#include "longres/matrix_form.hpp"

#include <Eigen/Dense>

#include <random>

namespace longres {

void FormMatrix::set(int i, int j, const Form& f) {
  if (f.vars() != d_)
    throw SizeMismatch("entry variable count does not match matrix");
  e_[static_cast<size_t>(i) * static_cast<size_t>(cols_) +
     static_cast<size_t>(j)] = f.is_zero() ? Form(d_, degree_)
                                           : f.with_degree(degree_);
}

FormMatrix FormMatrix::transpose() const {
  FormMatrix t(cols_, rows_, d_, degree_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

FormMatrix FormMatrix::scaled(const Form& f) const {
  FormMatrix out(rows_, cols_, d_, degree_ + f.degree());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j) * f);
  return out;
}

FormMatrix FormMatrix::scaled(const Rational& c) const {
  FormMatrix out(rows_, cols_, d_, degree_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j).scaled(c));
  return out;
}

FormMatrix operator+(const FormMatrix& a, const FormMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw SizeMismatch("form matrix shapes differ");
  int degree = a.is_zero() ? b.degree_ : a.degree_;
  FormMatrix out(a.rows_, a.cols_, a.d_, degree);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) out.set(i, j, a.at(i, j) + b.at(i, j));
  return out;
}

FormMatrix operator-(const FormMatrix& a, const FormMatrix& b) {
  return a + b.scaled(Rational(-1));
}

FormMatrix operator*(const FormMatrix& a, const FormMatrix& b) {
  if (a.cols_ != b.rows_) throw SizeMismatch("inner dimensions differ");
  FormMatrix out(a.rows_, b.cols_, a.d_, a.degree_ + b.degree_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) {
      Form acc(a.d_, a.degree_ + b.degree_);
      for (int k = 0; k < a.cols_; ++k) acc += a.at(i, k) * b.at(k, j);
      out.set(i, j, acc);
    }
  return out;
}

bool operator==(const FormMatrix& a, const FormMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.d_ != b.d_) return false;
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

FormMatrix FormMatrix::from_constant(const RatMat& c, int vars) {
  FormMatrix out(c.rows(), c.cols(), vars, 0);
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j)
      out.set(i, j, Form::constant(vars, c(i, j)));
  return out;
}

FormMatrix FormMatrix::constant_times(const RatMat& c, const Form& f) {
  FormMatrix out(c.rows(), c.cols(), f.vars(), f.degree());
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) out.set(i, j, f.scaled(c(i, j)));
  return out;
}

MatrixForm MatrixForm::scalar(const Form& f) {
  MatrixForm out(1, f.vars(), f.degree());
  out.set_entry(0, 0, f);
  return out;
}

MatrixForm MatrixForm::from_matrix(const FormMatrix& mat) {
  if (mat.rows() != mat.cols())
    throw InvariantError("matrix form must be square");
  for (int i = 0; i < mat.rows(); ++i)
    for (int j = i + 1; j < mat.cols(); ++j)
      if (mat.at(i, j) != mat.at(j, i))
        throw InvariantError("matrix form must be symmetric (entries " +
                             std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + " differ)");
  return MatrixForm(mat);
}

MatrixForm MatrixForm::constant(const RatMat& c, int vars) {
  if (!c.is_symmetric())
    throw InvariantError("constant matrix form must be symmetric");
  return MatrixForm(FormMatrix::from_constant(c, vars));
}

int MatrixForm::degree_in(int k) const {
  int best = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i; j < size(); ++j)
      best = std::max(best, entry(i, j).degree_in(k));
  return best;
}

bool MatrixForm::multiaffine() const {
  for (int i = 0; i < size(); ++i)
    for (int j = i; j < size(); ++j)
      if (!entry(i, j).multiaffine()) return false;
  return true;
}

MatrixForm MatrixForm::partial_derivative(int k) const {
  MatrixForm out(size(), vars(), degree() > 0 ? degree() - 1 : 0);
  for (int i = 0; i < size(); ++i)
    for (int j = i; j < size(); ++j)
      out.set_entry(i, j, entry(i, j).partial_derivative(k));
  return out;
}

std::vector<std::vector<GaussianRational>> MatrixForm::evaluate(
    const std::vector<GaussianRational>& point) const {
  std::vector<std::vector<GaussianRational>> out(
      static_cast<size_t>(size()),
      std::vector<GaussianRational>(static_cast<size_t>(size())));
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          entry(i, j).evaluate(point);
  return out;
}

RatMat MatrixForm::evaluate_real(const std::vector<Rational>& point) const {
  RatMat out(size(), size());
  for (int i = 0; i < size(); ++i)
    for (int j = i; j < size(); ++j) {
      out(i, j) = entry(i, j).evaluate_real(point);
      out(j, i) = out(i, j);
    }
  return out;
}

RatFn::RatFn(MatrixForm P, Form q) : P_(std::move(P)), q_(std::move(q)) {
  if (q_.is_zero()) throw InvariantError("denominator is the zero form");
  if (P_.vars() != q_.vars())
    throw InvariantError("numerator and denominator variable counts differ");
  if (P_.degree() != q_.degree() + 1)
    throw InvariantError(
        "homogeneity degree 1 requires deg P = deg q + 1 (got " +
        std::to_string(P_.degree()) + " and " + std::to_string(q_.degree()) +
        ")");
}

std::vector<std::vector<GaussianRational>> RatFn::evaluate(
    const std::vector<GaussianRational>& point) const {
  GaussianRational qv = q_.evaluate(point);
  if (qv.is_zero()) throw BadInput("denominator vanishes at the point");
  auto pv = P_.evaluate(point);
  for (auto& row : pv)
    for (auto& v : row) v = v / qv;
  return pv;
}

std::optional<RatMat> RatFn::evaluate_real(
    const std::vector<Rational>& point) const {
  Rational qv = q_.evaluate_real(point);
  if (qv.is_zero()) return std::nullopt;
  RatMat pv = P_.evaluate_real(point);
  return pv.scaled(Rational(1) / qv);
}

MatrixForm wronskian(const Form& q, const MatrixForm& P, int k) {
  if (q.vars() != P.vars())
    throw SizeMismatch("wronskian operands live in different spaces");
  if (k < 0 || k >= q.vars()) throw BadInput("variable index out of range");
  if (P.degree() != q.degree() + 1)
    throw DegreeMismatch("wronskian requires deg P = deg q + 1");
  MatrixForm out(P.size(), P.vars(), 2 * q.degree());
  Form dq = q.partial_derivative(k);
  for (int i = 0; i < P.size(); ++i)
    for (int j = i; j < P.size(); ++j) {
      Form w = q * P.entry(i, j).partial_derivative(k) - P.entry(i, j) * dq;
      out.set_entry(i, j, w);
    }
  return out;
}

MatrixForm wronskian(const RatFn& f, int k) {
  return wronskian(f.den(), f.num(), k);
}

namespace {

Eigen::MatrixXd to_eigen(const RatMat& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_double();
  return m;
}

}  // namespace

double min_eigenvalue(const RatMat& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool numerically_psd(const RatMat& a, double tol) {
  return min_eigenvalue(a) >= -tol;
}

SampleCheckResult psd_sample_check(const MatrixForm& F, int trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw BadInput("trial count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den_dist(1, 64);
  SampleCheckResult res;
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> point;
    point.reserve(static_cast<size_t>(F.vars()));
    for (int k = 0; k < F.vars(); ++k) {
      int den = den_dist(rng);
      std::uniform_int_distribution<long> num_dist(-10L * den, 10L * den);
      point.emplace_back(num_dist(rng), den);
    }
    RatMat value = F.evaluate_real(point);
    double scale = 1.0;
    for (int i = 0; i < value.rows(); ++i)
      for (int j = 0; j < value.cols(); ++j)
        scale = std::max(scale, std::abs(value(i, j).to_double()));
    double lo = min_eigenvalue(value);
    // The numeric eigencheck triggers relative to the data scale and every
    // candidate is confirmed exactly, so a reported violation is a proof.
    if (lo < -1e-9 * scale && !exactly_psd(value)) {
      res.no_violation = false;
      res.point = std::move(point);
      res.min_eigenvalue = lo;
      return res;
    }
  }
  return res;
}

}  // namespace longres
