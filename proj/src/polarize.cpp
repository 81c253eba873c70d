#include "longres/polarize.hpp"

#include <algorithm>
#include <map>

#include "longres/reduce.hpp"

namespace longres {

namespace {

struct SparseEntry {
  int var;
  int row;
  int col;  // row <= col; symmetric partner implied
  Rational value;
};

// Chain construction of the transfer pencil, as sparse symmetric entries.
std::vector<SparseEntry> transfer_entries(const MonomialBasis& basis,
                                          const Monomial& beta, int slot,
                                          ChainOrder order) {
  const int d = basis.vars();
  const int n = basis.degree();
  if (beta.vars() != d)
    throw SizeMismatch("target monomial variable count differs from basis");
  if (!beta.multiaffine())
    throw BadInput("target monomial must be multiaffine");
  if (beta.degree() != n + 1)
    throw BadInput("target monomial degree must be one above the basis");
  if (!basis.all_multiaffine())
    throw BadInput("transfer pencils need a multiaffine basis");
  if (slot < 0 || slot >= basis.size()) throw BadInput("slot out of range");

  const Monomial alpha = basis.at(slot);
  std::vector<int> in_beta, in_alpha;
  for (int v = 0; v < d; ++v) {
    if (beta.exponent(v) > alpha.exponent(v)) in_beta.push_back(v);
    else if (alpha.exponent(v) > beta.exponent(v)) in_alpha.push_back(v);
  }
  if (order == ChainOrder::descending) {
    std::reverse(in_beta.begin(), in_beta.end());
    std::reverse(in_alpha.begin(), in_alpha.end());
  }
  const int k = static_cast<int>(in_beta.size());
  if (k != static_cast<int>(in_alpha.size()) + 1)
    throw InternalError("degree bookkeeping failed in transfer chain");

  std::vector<SparseEntry> out;
  if (k == 1) {
    out.push_back({in_beta[0], slot, slot, Rational(1)});
    return out;
  }

  // Local labels w_1..w_{2k-1}: odd positions are the beta-only variables,
  // even positions the alpha-only ones.
  std::vector<int> w(static_cast<size_t>(2 * k), -1);
  for (int i = 0; i < k; ++i) w[static_cast<size_t>(2 * i + 1)] = in_beta[static_cast<size_t>(i)];
  for (int i = 0; i + 1 < k; ++i) w[static_cast<size_t>(2 * i + 2)] = in_alpha[static_cast<size_t>(i)];

  // Chain monomials a_1..a_{2k-1}.
  std::vector<Monomial> a(static_cast<size_t>(2 * k), Monomial(d));
  a[1] = alpha;
  Monomial gamma = alpha.gcd(beta);
  Monomial a2 = gamma;
  for (int i = 1; i < k; ++i) a2 = a2.times_var(in_beta[static_cast<size_t>(i)]);
  a[2] = a2;
  for (int j = 3; j <= 2 * k - 1; ++j) {
    auto div = a[static_cast<size_t>(j - 2)]
                   .times_var(w[static_cast<size_t>(j - 2)])
                   .divided_by(Monomial(d).times_var(w[static_cast<size_t>(j - 1)]));
    if (!div) throw InternalError("transfer chain monomial is not divisible");
    a[static_cast<size_t>(j)] = *div;
  }

  std::vector<int> pos(static_cast<size_t>(2 * k), -1);
  for (int j = 1; j <= 2 * k - 1; ++j) {
    auto idx = basis.index_of(a[static_cast<size_t>(j)]);
    if (!idx)
      throw BadInput("basis does not contain a transfer-chain monomial " +
                     a[static_cast<size_t>(j)].str());
    pos[static_cast<size_t>(j)] = *idx;
  }

  const Rational half(1, 2);
  for (int i = 1; i <= 2 * k - 2; ++i) {
    Rational v = (i % 2 == 1) ? half : -half;
    int r = pos[static_cast<size_t>(i)], c = pos[static_cast<size_t>(i + 1)];
    out.push_back({w[static_cast<size_t>(i)], std::min(r, c), std::max(r, c), v});
  }
  {
    int r = pos[1], c = pos[static_cast<size_t>(2 * k - 1)];
    out.push_back({w[static_cast<size_t>(2 * k - 1)], std::min(r, c),
                   std::max(r, c), half});
  }
  return out;
}

Pencil entries_to_pencil(const std::vector<SparseEntry>& entries, int d,
                         int size) {
  Pencil C(d, size);
  for (const auto& e : entries) {
    C.coeff(e.var)(e.row, e.col) += e.value;
    if (e.row != e.col) C.coeff(e.var)(e.col, e.row) += e.value;
  }
  return C;
}

// Matrix coefficients of P(z) = sum_k B_k z^{beta_k}.
std::map<Monomial, RatMat> matrix_coefficients(const MatrixForm& P) {
  std::map<Monomial, RatMat> out;
  for (int i = 0; i < P.size(); ++i)
    for (int j = i; j < P.size(); ++j)
      for (const auto& [mono, c] : P.entry(i, j).terms()) {
        auto it = out.find(mono);
        if (it == out.end())
          it = out.emplace(mono, RatMat(P.size(), P.size())).first;
        it->second(i, j) = c;
        it->second(j, i) = c;
      }
  return out;
}

Pencil polarize_multiaffine(const Form& q, const MatrixForm& P,
                            const MonomialBasis& basis, ChainOrder order) {
  const int d = q.vars();
  const int m = P.size();
  Pencil A(d, basis.size() * m);
  auto pcoeffs = matrix_coefficients(P);
  for (const auto& [alpha, aj] : q.terms()) {
    auto slot = basis.index_of(alpha);
    if (!slot)
      throw InternalError("monomial of q missing from the polarization basis");
    for (const auto& [beta, B] : pcoeffs) {
      auto entries = transfer_entries(basis, beta, *slot, order);
      for (const auto& e : entries) {
        RatMat& Av = A.coeff(e.var);
        Rational scale = aj * e.value;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            const Rational& w = B(a, b);
            if (w.is_zero()) continue;
            Av(e.row * m + a, e.col * m + b) += scale * w;
            if (e.row != e.col) Av(e.col * m + a, e.row * m + b) += scale * w;
          }
      }
    }
  }
  return A;
}

}  // namespace

Pencil transfer_pencil(const MonomialBasis& basis, const Monomial& beta,
                       int slot, ChainOrder order) {
  auto entries = transfer_entries(basis, beta, slot, order);
  Pencil C = entries_to_pencil(entries, basis.vars(), basis.size());
  // The chain relations make this exact; verify before handing it out.
  FormMatrix col = pencil_times_psi(C, basis, 1);
  for (int i = 0; i < basis.size(); ++i) {
    const Form& f = col.at(i, 0);
    if (i == slot) {
      if (f != Form::monomial(beta))
        throw InternalError("transfer pencil failed verification at the slot");
    } else if (!f.is_zero()) {
      throw InternalError("transfer pencil produced a nonzero off-slot row");
    }
  }
  return C;
}

ProductPolarization polarize_product(const Form& q, const MatrixForm& P,
                                     ChainOrder order) {
  if (q.vars() != P.vars())
    throw SizeMismatch("q and P live in different variable spaces");
  if (q.is_zero()) throw BadInput("q must be a nonzero form");
  if (P.degree() != q.degree() + 1)
    throw DegreeMismatch("polarization requires deg P = deg q + 1");

  const int d = q.vars();
  const int m = P.size();
  std::vector<int> caps(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k)
    caps[static_cast<size_t>(k)] =
        std::max(q.degree_in(k), P.degree_in(k));

  if (q.multiaffine() && P.multiaffine()) {
    MonomialBasis basis = MonomialBasis::all_of_degree(d, q.degree(), caps);
    Pencil A = polarize_multiaffine(q, P, basis, order);
    return {basis, std::move(A), m, d, basis.size()};
  }

  auto [fhat, map] = multiaffinize(RatFn(P, q));
  const int nf = fhat.vars();
  MonomialBasis fresh_basis = MonomialBasis::multiaffine(nf, fhat.den().degree());
  Pencil Ahat = polarize_multiaffine(fhat.den(), fhat.num(), fresh_basis, order);

  // Identify the groups back to the original variables and compress the
  // duplicated monomial rows onto the capped basis.
  MonomialBasis basis = MonomialBasis::all_of_degree(d, q.degree(), caps);
  std::vector<int> target = map.collapse_map();
  std::vector<int> row_of(static_cast<size_t>(fresh_basis.size()));
  for (int i = 0; i < fresh_basis.size(); ++i) {
    Monomial cm(d);
    for (int v = 0; v < nf; ++v)
      if (fresh_basis.at(i).exponent(v) > 0)
        cm = cm.times_var(target[static_cast<size_t>(v)],
                          fresh_basis.at(i).exponent(v));
    auto idx = basis.index_of(cm);
    if (!idx) throw InternalError("identified monomial missing from basis");
    row_of[static_cast<size_t>(i)] = *idx;
  }

  Pencil A(d, basis.size() * m);
  for (int v = 0; v < nf; ++v) {
    const RatMat& src = Ahat.coeff(v);
    if (src.is_zero()) continue;
    RatMat& dst = A.coeff(target[static_cast<size_t>(v)]);
    for (int i = 0; i < fresh_basis.size(); ++i)
      for (int j = 0; j < fresh_basis.size(); ++j)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            const Rational& val = src(i * m + a, j * m + b);
            if (val.is_zero()) continue;
            dst(row_of[static_cast<size_t>(i)] * m + a,
                row_of[static_cast<size_t>(j)] * m + b) += val;
          }
  }
  return {std::move(basis), std::move(A), m, nf, fresh_basis.size()};
}

bool gauge_difference_check(const Pencil& p1, const Pencil& p2,
                            const MonomialBasis& basis) {
  if (p1.size() != p2.size() || p1.vars() != p2.vars())
    throw SizeMismatch("pencil shapes differ");
  if (p1.vars() != basis.vars())
    throw SizeMismatch("basis variable count differs from pencils");
  if (basis.size() == 0 || p1.size() % basis.size() != 0)
    throw SizeMismatch("pencil size is not a multiple of the basis size");
  const int m = p1.size() / basis.size();
  Pencil diff = p1 - p2;
  if (!pencil_times_psi(diff, basis, m).is_zero()) return false;
  for (int k = 0; k < diff.vars(); ++k)
    if (!psi_quadratic(diff.coeff(k), basis, m).is_zero()) return false;
  return true;
}

}  // namespace longres
