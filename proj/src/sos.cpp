#include "longres/sos.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <set>

#include "longres/pencil.hpp"

namespace longres {

namespace {

std::map<Monomial, RatMat> matrix_support(const MatrixForm& F) {
  std::map<Monomial, RatMat> out;
  for (int i = 0; i < F.size(); ++i)
    for (int j = i; j < F.size(); ++j)
      for (const auto& [mono, c] : F.entry(i, j).terms()) {
        auto it = out.find(mono);
        if (it == out.end())
          it = out.emplace(mono, RatMat(F.size(), F.size())).first;
        it->second(i, j) = c;
        it->second(j, i) = c;
      }
  return out;
}

// Pairs (i <= j) of basis monomials whose product is beta.
std::vector<std::pair<int, int>> pairs_for(const std::vector<Monomial>& basis,
                                           const Monomial& beta) {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < basis.size(); ++i) {
    auto rest = beta.divided_by(basis[i]);
    if (!rest) continue;
    auto it = std::lower_bound(basis.begin() + static_cast<long>(i),
                               basis.end(), *rest);
    if (it != basis.end() && *it == *rest)
      out.emplace_back(static_cast<int>(i),
                       static_cast<int>(it - basis.begin()));
  }
  return out;
}

}  // namespace

GramSpace build_gram_space(const MatrixForm& F,
                           const std::vector<int>& caps_limit) {
  if (F.degree() % 2 != 0)
    throw OddDegree("Gram spaces exist for even-degree forms only");
  const int d = F.vars();
  const int m = F.size();
  const int n = F.degree() / 2;
  std::vector<int> caps(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    caps[static_cast<size_t>(k)] = (F.degree_in(k) + 1) / 2;
    if (!caps_limit.empty() && caps_limit[static_cast<size_t>(k)] >= 0)
      caps[static_cast<size_t>(k)] = std::min(
          caps[static_cast<size_t>(k)], caps_limit[static_cast<size_t>(k)]);
  }

  auto support_map = matrix_support(F);
  std::set<Monomial> support;
  for (const auto& [mono, mat] : support_map) support.insert(mono);

  std::vector<Monomial> monos =
      MonomialBasis::all_of_degree(d, n, caps).monomials();

  // Half-support pruning: any real factorization of F has its column
  // supports inside half the Newton polytope, so a basis monomial alpha
  // with 2*alpha outside the rational affine hull of supp(F) has a zero
  // row in every PSD Gram matrix.  Pruning it loses nothing, provided the
  // remaining basis still represents F.
  if (!support.empty()) {
    std::vector<Monomial> supp_list(support.begin(), support.end());
    const Monomial& s0 = supp_list.front();
    RatMat span(d, static_cast<int>(supp_list.size()) - 1);
    for (size_t c = 1; c < supp_list.size(); ++c)
      for (int k = 0; k < d; ++k)
        span(k, static_cast<int>(c) - 1) =
            Rational(supp_list[c].exponent(k) - s0.exponent(k));
    auto in_affine_hull = [&](const Monomial& alpha) {
      RatMat rhs(d, 1);
      for (int k = 0; k < d; ++k)
        rhs(k, 0) = Rational(2 * alpha.exponent(k) - s0.exponent(k));
      return solve_linear(span, rhs).has_value();
    };
    for (size_t idx = 0; idx < monos.size();) {
      if (in_affine_hull(monos[idx])) {
        ++idx;
        continue;
      }
      std::vector<Monomial> rest;
      rest.reserve(monos.size() - 1);
      for (size_t t = 0; t < monos.size(); ++t)
        if (t != idx) rest.push_back(monos[t]);
      bool covered = true;
      for (const auto& beta : support)
        if (pairs_for(rest, beta).empty()) {
          covered = false;
          break;
        }
      if (!covered) {
        ++idx;
        continue;
      }
      monos = std::move(rest);
    }
  }

  MonomialBasis basis = monos.empty()
                            ? MonomialBasis::empty(d, n)
                            : MonomialBasis::from_monomials(monos, caps);

  const int N = basis.size();
  RatMat particular(N * m, N * m);
  for (const auto& [beta, B] : support_map) {
    auto prs = pairs_for(basis.monomials(), beta);
    if (prs.empty())
      throw InvariantError("form is not representable over the Gram basis "
                           "(monomial " + beta.str() + " has no pair)");
    Rational t(static_cast<long>(prs.size()));
    for (const auto& [i, j] : prs) {
      if (i == j) {
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            particular(i * m + a, i * m + b) += B(a, b) / t;
      } else {
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            Rational v = B(a, b) / (Rational(2) * t);
            particular(i * m + a, j * m + b) += v;
            particular(j * m + a, i * m + b) += v;
          }
      }
    }
  }

  GramSpace space{basis, m, std::move(particular), {}};
  if (N == 0) return space;

  std::vector<RatMat> scalar = annihilator_span(basis);
  if (m == 1) {
    space.annihilators = std::move(scalar);
    return space;
  }
  // Block lift: scalar annihilators tensored with a symmetric basis, plus
  // skew (x) skew directions for every off-diagonal block position.
  for (const auto& S : scalar)
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        RatMat G(N * m, N * m);
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) {
            const Rational& v = S(i, j);
            if (v.is_zero()) continue;
            G(i * m + a, j * m + b) += v;
            if (a != b) G(i * m + b, j * m + a) += v;
          }
        space.annihilators.push_back(std::move(G));
      }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
          RatMat G(N * m, N * m);
          G(i * m + a, j * m + b) = Rational(1);
          G(j * m + b, i * m + a) = Rational(1);
          G(i * m + b, j * m + a) = Rational(-1);
          G(j * m + a, i * m + b) = Rational(-1);
          space.annihilators.push_back(std::move(G));
        }
  return space;
}

namespace {

Eigen::MatrixXd to_eigen(const RatMat& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).to_double();
  return out;
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

const char* to_string(FeasibilityReport::Status s) {
  switch (s) {
    case FeasibilityReport::Status::sos_exact: return "sos_exact";
    case FeasibilityReport::Status::sos_numeric: return "sos_numeric";
    case FeasibilityReport::Status::not_sos_evidence: return "not_sos_evidence";
    case FeasibilityReport::Status::inconclusive: return "inconclusive";
  }
  return "unknown";
}

FeasibilityReport find_psd_gram(const GramSpace& space,
                                const FindPsdOptions& options) {
  FeasibilityReport report;
  const int n = space.gram_size();
  if (n == 0) {
    report.status = FeasibilityReport::Status::sos_exact;
    report.exact_gram = RatMat(0, 0);
    return report;
  }

  const auto& dirs = space.annihilators;
  const int nd = static_cast<int>(dirs.size());
  std::vector<Eigen::MatrixXd> dir_num;
  dir_num.reserve(static_cast<size_t>(nd));
  for (const auto& s : dirs) dir_num.push_back(to_eigen(s));

  // The tolerances are meaningful for O(1) data; run the numeric loop on
  // the exactly-rescaled problem G/sigma and undo the scale exactly when
  // rationalizing.
  Rational sigma(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sigma = std::max(sigma, abs(space.particular(i, j)));
  Eigen::MatrixXd g0 = to_eigen(space.particular) / sigma.to_double();

  // Normal-equation factorization for the affine projection.
  Eigen::MatrixXd gramian(nd, nd);
  for (int i = 0; i < nd; ++i)
    for (int j = i; j < nd; ++j) {
      double v = (dir_num[static_cast<size_t>(i)].array() *
                  dir_num[static_cast<size_t>(j)].array())
                     .sum();
      gramian(i, j) = v;
      gramian(j, i) = v;
    }
  Eigen::LDLT<Eigen::MatrixXd> gram_ldlt;
  if (nd > 0) gram_ldlt.compute(gramian);

  auto affine_coords = [&](const Eigen::MatrixXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd rhs(nd);
    for (int i = 0; i < nd; ++i)
      rhs(i) = (dir_num[static_cast<size_t>(i)].array() * (y - g0).array()).sum();
    return gram_ldlt.solve(rhs);
  };
  auto from_coords = [&](const Eigen::VectorXd& c) -> Eigen::MatrixXd {
    Eigen::MatrixXd x = g0;
    for (int i = 0; i < nd; ++i) x += c(i) * dir_num[static_cast<size_t>(i)];
    return x;
  };

  // Exact early exit: rationalize the affine coordinates with bounded
  // denominators and verify PSD-ness by exact LDL^T.  The numeric loop is
  // never trusted; a probe success is a proof.
  // Rationalization happens in the original scale: the coordinates of the
  // scaled problem live on a sigma-times finer lattice, which would defeat
  // continued-fraction recovery.  A cheap numeric eigencheck filters out
  // hopeless candidates before the exact factorization runs.
  auto exact_probe = [&](const Eigen::VectorXd& c,
                         std::uint64_t bound) -> std::optional<RatMat> {
    const double sig = sigma.to_double();
    RatMat g = space.particular;
    for (int i = 0; i < nd; ++i) {
      Rational ci = rationalize(sig * c(i), bound);
      if (!ci.is_zero()) g = g + dirs[static_cast<size_t>(i)].scaled(ci);
    }
    double scale = 1.0;
    Eigen::MatrixXd gn(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        gn(i, j) = g(i, j).to_double();
        scale = std::max(scale, std::abs(gn(i, j)));
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gn,
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9 * scale) return std::nullopt;
    if (exactly_psd(g)) return g;
    return std::nullopt;
  };

  Eigen::MatrixXd x = g0;
  Eigen::VectorXd coords = Eigen::VectorXd::Zero(nd);
  Eigen::MatrixXd y = psd_project(x);
  double gap = (x - y).cwiseAbs().maxCoeff();
  bool converged = false;
  int iter = 0;
  int next_probe = 50;  // exponential probe cadence
  double plateau_gap = gap;
  int plateau_start = 0;
  // Coordinate snapshots at probe times; tangentially touching feasible
  // sets make the projections converge geometrically with ratio close to
  // 1, and a componentwise Aitken extrapolation of the snapshots lands the
  // limit much earlier.
  Eigen::VectorXd snap1 = Eigen::VectorXd::Zero(nd);
  Eigen::VectorXd snap2 = Eigen::VectorXd::Zero(nd);
  int snapshots = 0;
  auto probe_candidates = [&](const Eigen::VectorXd& c) {
    std::vector<Eigen::VectorXd> cands{c};
    if (snapshots >= 1) {
      // Richardson step for 1/k error decay; the doubling cadence puts the
      // previous snapshot at half the current iteration count.
      cands.push_back(2.0 * c - snap2);
    }
    if (snapshots >= 2) {
      Eigen::VectorXd ex(nd);
      for (int i = 0; i < nd; ++i) {
        double d1 = snap2(i) - snap1(i);
        double d2 = c(i) - snap2(i);
        double den = d2 - d1;
        ex(i) = std::abs(den) > 1e-14 ? c(i) - d2 * d2 / den : c(i);
      }
      cands.push_back(std::move(ex));
    }
    return cands;
  };

  auto finish_exact = [&](RatMat g) -> FeasibilityReport& {
    report.status = FeasibilityReport::Status::sos_exact;
    report.exact_gram = std::move(g);
    report.iterations = iter;
    report.final_distance = gap;
    report.numeric_gram.assign(
        static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        report.numeric_gram[static_cast<size_t>(i) * static_cast<size_t>(n) +
                            static_cast<size_t>(j)] =
            (*report.exact_gram)(i, j).to_double();
    return report;
  };

  while (iter < options.max_iterations) {
    ++iter;
    Eigen::VectorXd c = nd > 0 ? affine_coords(y) : Eigen::VectorXd();
    Eigen::MatrixXd xn = nd > 0 ? from_coords(c) : g0;
    double step = (xn - x).cwiseAbs().maxCoeff();
    x = xn;
    coords = c;
    y = psd_project(x);
    gap = (x - y).cwiseAbs().maxCoeff();
    if (step < options.converge_tol && gap <= options.set_tol) {
      converged = true;
      break;
    }
    // Projections that reached their limit with a clearly positive gap can
    // stop early; the classification below reports the evidence.
    if (gap < 0.995 * plateau_gap) {
      plateau_gap = gap;
      plateau_start = iter;
    } else if (iter - plateau_start >= 2000 && gap > options.stall_distance) {
      break;
    }
    if (iter >= next_probe) {
      next_probe *= 2;
      auto cands = probe_candidates(coords);
      snap1 = snap2;
      snap2 = coords;
      ++snapshots;
      for (const auto& cand : cands)
        for (std::uint64_t bound : {std::uint64_t{16}, std::uint64_t{1024},
                                    options.max_denominator}) {
          auto g = exact_probe(cand, bound);
          if (g) return finish_exact(std::move(*g));
        }
    }
  }
  report.iterations = iter;
  report.final_distance = gap;  // relative to the data scale
  report.numeric_gram.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
  const double sig = sigma.to_double();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      report.numeric_gram[static_cast<size_t>(i) * static_cast<size_t>(n) +
                          static_cast<size_t>(j)] = sig * y(i, j);

  if (converged && gap <= options.set_tol) {
    // Numeric feasibility; try to land on an exact rational PSD Gram.
    for (std::uint64_t bound :
         {std::uint64_t{16}, std::uint64_t{1024}, options.max_denominator}) {
      auto g = exact_probe(coords, bound);
      if (g) {
        report.status = FeasibilityReport::Status::sos_exact;
        report.exact_gram = std::move(*g);
        return report;
      }
    }
    report.status = FeasibilityReport::Status::sos_numeric;
    return report;
  }
  // A last exact probe before reporting failure: slow (sublinear)
  // convergence happens when the feasible set touches the cone
  // tangentially, and the rationalized iterate often certifies anyway.
  for (std::uint64_t bound :
       {std::uint64_t{16}, std::uint64_t{1024}, options.max_denominator}) {
    auto g = exact_probe(coords, bound);
    if (g) {
      report.status = FeasibilityReport::Status::sos_exact;
      report.exact_gram = std::move(*g);
      return report;
    }
  }
  report.status = gap > options.stall_distance
                      ? FeasibilityReport::Status::not_sos_evidence
                      : FeasibilityReport::Status::inconclusive;
  return report;
}

SosCertificate factor_certificate(const GramSpace& space,
                                  const FeasibilityReport& report,
                                  const MatrixForm& F) {
  if (!report.feasible())
    throw NotCertified("feasibility status is " +
                       std::string(to_string(report.status)));
  const int N = space.basis.size();
  const int m = space.m;
  const int n = N * m;
  SosCertificate cert{FormMatrix(m, 0, F.vars(), space.basis.degree()),
                      {}, RatMat(n, n), 0.0, false};

  if (report.status == FeasibilityReport::Status::sos_exact) {
    const RatMat& g = *report.exact_gram;
    cert.gram = g;
    cert.exact = true;
    if (n == 0) return cert;
    LdlResult ldl = ldl_psd(g);
    if (!ldl.psd)
      throw InternalError("exact Gram matrix failed its PSD factorization");
    std::vector<int> pinv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pinv[static_cast<size_t>(ldl.perm[static_cast<size_t>(i)])] = i;
    FormMatrix H(m, ldl.rank, F.vars(), space.basis.degree());
    for (int col = 0; col < ldl.rank; ++col) {
      cert.weights.push_back(ldl.pivots[static_cast<size_t>(col)]);
      for (int a = 0; a < m; ++a) {
        Form h(F.vars(), space.basis.degree());
        for (int i = 0; i < N; ++i) {
          const Rational& v = ldl.unit_lower(pinv[static_cast<size_t>(i * m + a)], col);
          if (!v.is_zero()) h += Form::monomial(space.basis.at(i), v);
        }
        H.set(a, col, h);
      }
    }
    cert.H = H;
    // Exact verification: F - H diag(w) H^T == 0.
    MatrixForm rebuilt(m, F.vars(), 2 * space.basis.degree());
    {
      FormMatrix acc(m, m, F.vars(), 2 * space.basis.degree());
      for (int col = 0; col < ldl.rank; ++col)
        for (int a = 0; a < m; ++a)
          for (int b = a; b < m; ++b) {
            Form f = acc.at(a, b);
            f += (H.at(a, col) * H.at(b, col))
                     .scaled(cert.weights[static_cast<size_t>(col)]);
            acc.set(a, b, f);
            if (a != b) acc.set(b, a, f);
          }
      rebuilt = MatrixForm::from_matrix(acc);
    }
    if (rebuilt != F)
      throw InternalError("exact certificate failed reconstruction");
    cert.residual = 0.0;
    return cert;
  }

  // Numeric path: eigendecomposition with clipped eigenvalues; the factor's
  // double coefficients are kept as exact rationals so the residual can be
  // computed exactly.
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = report.numeric_gram[static_cast<size_t>(i) * static_cast<size_t>(n) +
                                    static_cast<size_t>(j)];
  cert.exact = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cert.gram(i, j) = Rational::from_double(g(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1e-9) keep.push_back(i);
  FormMatrix H(m, static_cast<int>(keep.size()), F.vars(),
               space.basis.degree());
  for (size_t c = 0; c < keep.size(); ++c) {
    double lam = std::sqrt(es.eigenvalues()(keep[c]));
    cert.weights.push_back(Rational(1));
    for (int a = 0; a < m; ++a) {
      Form h(F.vars(), space.basis.degree());
      for (int i = 0; i < N; ++i) {
        double v = lam * es.eigenvectors()(i * m + a, keep[c]);
        if (v != 0.0) h += Form::monomial(space.basis.at(i),
                                          Rational::from_double(v));
      }
      H.set(a, static_cast<int>(c), h);
    }
  }
  cert.H = H;
  // Exact residual of the (inexact) factorization, scaled by the largest
  // coefficient of F.
  Rational scale(1);
  for (int i = 0; i < F.size(); ++i)
    for (int j = i; j < F.size(); ++j)
      for (const auto& [mono, cc] : F.entry(i, j).terms())
        scale = std::max(scale, abs(cc));
  Rational worst(0);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      Form delta = F.entry(a, b);
      for (size_t c = 0; c < keep.size(); ++c)
        delta -= H.at(a, static_cast<int>(c)) * H.at(b, static_cast<int>(c));
      for (const auto& [mono, cc] : delta.terms())
        worst = std::max(worst, abs(cc));
    }
  cert.residual = (worst / scale).to_double();
  return cert;
}

CertifyResult certify_sos(const MatrixForm& F, const FindPsdOptions& options) {
  CertifyResult out{build_gram_space(F), FeasibilityReport{}, std::nullopt};
  out.report = find_psd_gram(out.space, options);
  if (out.report.feasible())
    out.certificate = factor_certificate(out.space, out.report, F);
  return out;
}

}  // namespace longres
