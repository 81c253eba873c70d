#include <map>
#include <tuple>

#include "longres/polarize.hpp"
#include "longres/sos.hpp"

namespace longres {

namespace {

// Skew completion: finds skew matrices V_v (v != dist_var) with
// (sum_v z_v V_v + z_k W) Psi^T == 0.  Returns false when infeasible.
bool complete_skew(const RatMat& w, const MonomialBasis& basis, int dist_var,
                   std::vector<RatMat>& out) {
  const int d = basis.vars();
  const int N = basis.size();
  std::map<std::tuple<int, int, int>, int> id;
  int nu = 0;
  for (int v = 0; v < d; ++v) {
    if (v == dist_var) continue;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) id.emplace(std::make_tuple(v, i, j), nu++);
  }
  std::map<std::pair<int, std::vector<int>>,
           std::pair<std::vector<std::pair<int, int>>, Rational>>
      eqs;  // (row, mu) -> (list of (unknown, sign), rhs)
  for (int u = 0; u < N; ++u)
    for (int j = 0; j < N; ++j) {
      for (int v = 0; v < d; ++v) {
        if (v == dist_var || u == j) continue;
        Monomial mu = basis.at(j).times_var(v);
        auto& eq = eqs[{u, mu.exponents()}];
        int sign = u < j ? 1 : -1;
        eq.first.emplace_back(
            id.at(std::make_tuple(v, std::min(u, j), std::max(u, j))), sign);
      }
      if (!w(u, j).is_zero()) {
        Monomial mu = basis.at(j).times_var(dist_var);
        eqs[{u, mu.exponents()}].second += w(u, j);
      }
    }
  std::vector<std::pair<std::vector<std::pair<int, int>>, Rational>> rows;
  for (auto& [key, eq] : eqs)
    if (!eq.first.empty() || !eq.second.is_zero()) rows.push_back(eq);
  RatMat A(static_cast<int>(rows.size()), nu);
  RatMat b(static_cast<int>(rows.size()), 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [uid, sign] : rows[r].first)
      A(static_cast<int>(r), uid) += Rational(sign);
    b(static_cast<int>(r), 0) = -rows[r].second;
  }
  auto x = solve_linear(std::move(A), std::move(b));
  if (!x) return false;
  int uid = 0;
  for (int v = 0; v < d; ++v) {
    if (v == dist_var) continue;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        const Rational& val = (*x)(uid++, 0);
        if (!val.is_zero()) {
          out[static_cast<size_t>(v)](i, j) += val;
          out[static_cast<size_t>(v)](j, i) -= val;
        }
      }
  }
  return true;
}

}  // namespace

PsdSlotPolarization polarize_with_psd_slot(const Form& q, const MatrixForm& P,
                                           int k, const Form& s) {
  if (q.vars() != P.vars() || s.vars() != q.vars())
    throw SizeMismatch("operands live in different variable spaces");
  if (k < 0 || k >= q.vars()) throw BadInput("variable index out of range");
  if (P.degree() != q.degree() + 1)
    throw DegreeMismatch("psd-slot polarization requires deg P = deg q + 1");
  if (P.degree_in(k) > q.degree_in(k) + 1)
    throw DegreeMismatch(
        "degrees in the slot variable differ by more than one; extract the "
        "linear term first");
  if (s.is_zero()) throw BadInput("the denominator form s must be nonzero");

  Form qs = q * s;
  MatrixForm Ps = P.scaled(s);
  ProductPolarization pol = polarize_product(qs, Ps);
  const int d = q.vars();
  const int m = pol.m;
  const int N = pol.basis.size();

  MatrixForm W = wronskian(qs, Ps, k);
  GramSpace space = build_gram_space(W, pol.basis.caps());
  FeasibilityReport rep = find_psd_gram(space);
  if (rep.status != FeasibilityReport::Status::sos_exact)
    throw NotSOS(
        std::string("no exact PSD Gram matrix for the slot Wronskian "
                    "(status ") +
        to_string(rep.status) +
        "); the supplied form is not an Artin denominator or the input is "
        "not positive real");

  // Embed the PSD Gram over the pruned sub-basis into full-basis
  // coordinates.
  RatMat G(N * m, N * m);
  auto full_index = [&](const Monomial& mono) {
    auto idx = pol.basis.index_of(mono);
    if (!idx)
      throw InternalError("Gram basis escaped the polarization basis");
    return *idx;
  };
  for (int i = 0; i < space.basis.size(); ++i) {
    int fi = full_index(space.basis.at(i));
    for (int j = 0; j < space.basis.size(); ++j) {
      int fj = full_index(space.basis.at(j));
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          G(fi * m + a, fj * m + b) =
              (*rep.exact_gram)(i * m + a, j * m + b);
    }
  }

  RatMat S = G - pol.pencil.coeff(k);
  std::vector<RatMat> completion(static_cast<size_t>(d), RatMat(N * m, N * m));
  if (m == 1) {
    auto sols = defect_solve(S, pol.basis, k);
    for (int v = 0; v < d; ++v)
      if (v != k) completion[static_cast<size_t>(v)] = sols[static_cast<size_t>(v)];
  } else {
    // Split the block defect into symmetric-coefficient components (solved
    // by the scalar defect lemma) and skew (x) skew components (solved
    // exactly as a linear system).
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        RatMat M(N, N);
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            M(i, j) = (S(i * m + a, j * m + b) + S(i * m + b, j * m + a)) /
                      Rational(2);
        if (M.is_zero()) continue;
        auto sols = defect_solve(M, pol.basis, k);
        for (int v = 0; v < d; ++v) {
          if (v == k) continue;
          const RatMat& C = sols[static_cast<size_t>(v)];
          if (C.is_zero()) continue;
          RatMat& dst = completion[static_cast<size_t>(v)];
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
              if (C(i, j).is_zero()) continue;
              dst(i * m + a, j * m + b) += C(i, j);
              if (a != b) dst(i * m + b, j * m + a) += C(i, j);
            }
        }
      }
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        RatMat Wskew(N, N);
        bool any = false;
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) {
            Wskew(i, j) = (S(i * m + a, j * m + b) - S(i * m + b, j * m + a)) /
                          Rational(2);
            if (!Wskew(i, j).is_zero()) any = true;
          }
        if (!any) continue;
        std::vector<RatMat> skew(static_cast<size_t>(d), RatMat(N, N));
        if (!complete_skew(Wskew, pol.basis, k, skew))
          throw DefectUncompletable(
              "no skew completion exists for the block defect");
        for (int v = 0; v < d; ++v) {
          if (v == k) continue;
          const RatMat& V = skew[static_cast<size_t>(v)];
          if (V.is_zero()) continue;
          RatMat& dst = completion[static_cast<size_t>(v)];
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
              if (V(i, j).is_zero()) continue;
              dst(i * m + a, j * m + b) += V(i, j);
              dst(i * m + b, j * m + a) -= V(i, j);
            }
        }
      }
  }

  Pencil out(d, N * m);
  for (int v = 0; v < d; ++v)
    out.coeff(v) = v == k ? G
                          : pol.pencil.coeff(v) +
                                completion[static_cast<size_t>(v)];
  out.validate_symmetric();
  // The repaired pencil must reproduce the original action on Psi exactly.
  if (!(pencil_times_psi(out, pol.basis, m) ==
        pencil_times_psi(pol.pencil, pol.basis, m)))
    throw InternalError("psd-slot repair failed its exact verification");
  if (!exactly_psd(G))
    throw InternalError("slot coefficient lost positive semidefiniteness");
  return {pol.basis, std::move(out), m, k, true};
}

}  // namespace longres
