#include "longres/pencil.hpp"

namespace longres {

RatMat Pencil::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != d_)
    throw SizeMismatch("evaluation point has wrong dimension");
  RatMat out(size_, size_);
  for (int k = 0; k < d_; ++k) {
    const Rational& zk = point[static_cast<size_t>(k)];
    if (zk.is_zero()) continue;
    out = out + coeff(k).scaled(zk);
  }
  return out;
}

MatrixForm Pencil::as_matrix_form() const {
  MatrixForm out(size_, d_, 1);
  for (int i = 0; i < size_; ++i)
    for (int j = i; j < size_; ++j) {
      Form f(d_, 1);
      for (int k = 0; k < d_; ++k) {
        const Rational& c = coeff(k)(i, j);
        if (!c.is_zero())
          f += Form::monomial(Monomial(d_).times_var(k), c);
      }
      out.set_entry(i, j, f);
    }
  return out;
}

FormMatrix pencil_times_psi(const Pencil& pencil, const MonomialBasis& basis,
                            int m) {
  const int N = basis.size();
  if (pencil.size() != N * m)
    throw SizeMismatch("pencil size does not match block basis");
  const int d = basis.vars();
  FormMatrix out(N * m, m, d, basis.degree() + 1);
  for (int k = 0; k < d; ++k) {
    const RatMat& A = pencil.coeff(k);
    for (int row = 0; row < N * m; ++row)
      for (int j = 0; j < N; ++j) {
        Monomial mono = basis.at(j).times_var(k);
        for (int b = 0; b < m; ++b) {
          const Rational& c = A(row, j * m + b);
          if (c.is_zero()) continue;
          Form f = out.at(row, b);
          f += Form::monomial(mono, c);
          out.set(row, b, f);
        }
      }
  }
  return out;
}

MatrixForm psi_quadratic(const RatMat& c, const MonomialBasis& basis, int m) {
  const int N = basis.size();
  if (c.rows() != N * m || c.cols() != N * m)
    throw SizeMismatch("matrix does not match block basis");
  MatrixForm out(m, basis.vars(), 2 * basis.degree());
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      Form f(basis.vars(), 2 * basis.degree());
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          const Rational& v = c(i * m + a, j * m + b);
          if (v.is_zero()) continue;
          f += Form::monomial(basis.at(i).times(basis.at(j)), v);
        }
      out.set_entry(a, b, f);
    }
  return out;
}

Form doubled(const Form& f, int block) {
  const int d = f.vars();
  std::vector<int> position(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    position[static_cast<size_t>(i)] = block == 0 ? i : d + i;
  return f.embedded(2 * d, position);
}

FormMatrix psi_pencil_psi_doubled(const Pencil& pencil,
                                  const MonomialBasis& basis, int m) {
  const int N = basis.size();
  if (pencil.size() != N * m)
    throw SizeMismatch("pencil size does not match block basis");
  const int d = basis.vars();
  FormMatrix out(m, m, 2 * d, 2 * basis.degree() + 1);
  for (int k = 0; k < d; ++k) {
    const RatMat& A = pencil.coeff(k);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        // zeta^{a_i} * z_k * z^{a_j} in the doubled space
        Monomial mono(2 * d);
        for (int v = 0; v < d; ++v) {
          if (basis.at(i).exponent(v) > 0)
            mono = mono.times_var(v, basis.at(i).exponent(v));
          if (basis.at(j).exponent(v) > 0)
            mono = mono.times_var(d + v, basis.at(j).exponent(v));
        }
        mono = mono.times_var(d + k);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            const Rational& c = A(i * m + a, j * m + b);
            if (c.is_zero()) continue;
            Form f = out.at(a, b);
            f += Form::monomial(mono, c);
            out.set(a, b, f);
          }
      }
  }
  return out;
}

}  // namespace longres
