#include "longres/synth.hpp"

#include <algorithm>
#include <random>

namespace longres {

namespace {

// Leading z_k-coefficient of a form, with z_k^deg struck out.
Form leading_coeff(const Form& f, int k, int deg) {
  Form out(f.vars(), f.degree() - deg);
  for (const auto& [m, c] : f.terms())
    if (m.exponent(k) == deg) out.set_coefficient(m.with_exponent(k, 0), c);
  return out;
}

// num[i][j] == C[i][j] * anchor for a constant matrix C, exactly.
std::optional<RatMat> proportional_constant(const MatrixForm& num,
                                            const Form& anchor) {
  if (anchor.is_zero()) return std::nullopt;
  const auto& [m0, v0] = *anchor.terms().begin();
  RatMat C(num.size(), num.size());
  for (int i = 0; i < num.size(); ++i)
    for (int j = i; j < num.size(); ++j) {
      const Form& e = num.entry(i, j);
      if (e.is_zero()) continue;
      Rational c = e.coefficient(m0) / v0;
      if (!(e == anchor.scaled(c))) return std::nullopt;
      C(i, j) = c;
      C(j, i) = c;
    }
  return C;
}

std::mt19937_64 seeded(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace

std::pair<std::vector<ExtractionTerm>, RatFn> extract_linear_terms(
    const RatFn& f) {
  const int d = f.vars();
  MatrixForm P = f.num();
  const Form& q = f.den();
  std::vector<ExtractionTerm> terms;
  for (int k = 0; k < d; ++k) {
    int a = P.degree_in(k);
    int b = q.degree_in(k);
    if (a <= b) continue;
    if (a != b + 1)
      throw NotConstantResidue(
          "numerator and denominator degrees in z" + std::to_string(k + 1) +
          " differ by more than one; the function is not positive real");
    MatrixForm P_top(P.size(), d, P.degree() - a);
    for (int i = 0; i < P.size(); ++i)
      for (int j = i; j < P.size(); ++j)
        P_top.set_entry(i, j, leading_coeff(P.entry(i, j), k, a));
    Form q_top = leading_coeff(q, k, b);
    auto C = proportional_constant(P_top, q_top);
    if (!C)
      throw NotConstantResidue(
          "the leading coefficient ratio in z" + std::to_string(k + 1) +
          " is not a constant matrix; the function is not positive real");
    if (!numerically_psd(*C))
      throw NotPSD("the extracted coefficient of z" + std::to_string(k + 1) +
                   " is not positive semidefinite");
    Form zkq = Form::variable(d, k) * q;
    P = MatrixForm::from_matrix(P.matrix() -
                                FormMatrix::constant_times(*C, zkq));
    terms.push_back({k, std::move(*C)});
  }
  return {std::move(terms), RatFn(std::move(P), q)};
}

PositivityResult positivity_criterion(const RatFn& f, std::uint64_t seed,
                                      const FindPsdOptions& options) {
  if (!f.multiaffine())
    throw InvariantError(
        "the Wronskian positivity criterion applies to multiaffine "
        "functions only; reduce the degrees first");
  const int d = f.vars();
  PositivityResult res;
  res.wronskian_status.assign(static_cast<size_t>(d),
                              FeasibilityReport::Status::inconclusive);
  std::vector<MatrixForm> wronskians;
  wronskians.reserve(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    wronskians.push_back(wronskian(f, k));
    auto quick = psd_sample_check(wronskians.back(), 256, seed + static_cast<std::uint64_t>(k));
    if (!quick.no_violation) {
      res.verdict = PositivityVerdict::violation;
      res.violation_point = quick.point;
      return res;
    }
  }
  bool all = true;
  for (int k = 0; k < d; ++k) {
    auto cert = certify_sos(wronskians[static_cast<size_t>(k)], options);
    res.wronskian_status[static_cast<size_t>(k)] = cert.report.status;
    if (!cert.report.feasible()) all = false;
  }
  if (all) {
    res.verdict = PositivityVerdict::certified_positive;
    return res;
  }
  for (int k = 0; k < d; ++k) {
    if (res.wronskian_status[static_cast<size_t>(k)] ==
            FeasibilityReport::Status::sos_exact ||
        res.wronskian_status[static_cast<size_t>(k)] ==
            FeasibilityReport::Status::sos_numeric)
      continue;
    auto deep = psd_sample_check(wronskians[static_cast<size_t>(k)], 1000,
                                 seed + 1000 + static_cast<std::uint64_t>(k));
    if (!deep.no_violation) {
      res.verdict = PositivityVerdict::violation;
      res.violation_point = deep.point;
      return res;
    }
  }
  res.verdict = PositivityVerdict::unknown;
  return res;
}

DarlingtonStep darlington_step(const RatFn& g, int j,
                               const FindPsdOptions& options) {
  if (!g.multiaffine())
    throw InvariantError("Darlington steps need a multiaffine function");
  const int d = g.vars();
  if (j < 0 || j >= d) throw BadInput("variable index out of range");
  const Form& q = g.den();
  const MatrixForm& P = g.num();
  const int m = P.size();
  Form zj = Form::variable(d, j);

  Form q1 = q.partial_derivative(j);
  if (q1.is_zero())
    throw DenominatorDegenerate("denominator does not depend on z" +
                                std::to_string(j + 1));
  Form q2 = q - zj * q1;
  MatrixForm P1 = P.partial_derivative(j);
  MatrixForm P2 = P - P1.scaled(zj);

  MatrixForm W = wronskian(q, P, j);
  if (W != P1.scaled(q2) - P2.scaled(q1))
    throw InternalError("multiaffine Wronskian split failed");

  auto quick = psd_sample_check(W, 64, 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(j));
  if (!quick.no_violation)
    throw NotSOS("the Wronskian of z" + std::to_string(j + 1) +
                 " is indefinite (sampled sign violation); the function is "
                 "not positive real");
  CertifyResult cert = certify_sos(W, options);
  if (!cert.report.feasible())
    throw NotSOS(std::string("no SOS certificate for the Wronskian of z") +
                 std::to_string(j + 1) + " (status " +
                 to_string(cert.report.status) + ")");
  const SosCertificate& c = *cert.certificate;
  const int r = c.H.cols();

  FormMatrix num(m + r, m + r, d, q.degree());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) num.set(a, b, P1.entry(a, b));
  for (int a = 0; a < m; ++a)
    for (int col = 0; col < r; ++col) {
      Form e = c.H.at(a, col).scaled(c.weights[static_cast<size_t>(col)]);
      num.set(a, m + col, e);
      num.set(m + col, a, e);
    }
  for (int col = 0; col < r; ++col)
    num.set(m + col, m + col,
            q2.scaled(c.weights[static_cast<size_t>(col)]));

  DarlingtonStep step{j,
                      r,
                      c.weights,
                      c.H,
                      RatFn(MatrixForm::from_matrix(num), q1),
                      c.exact};

  if (c.exact) {
    // The identity that makes the next Wronskians PSD is asserted exactly
    // for every remaining variable.
    for (int t = 0; t < d; ++t) {
      if (t == j) continue;
      Form zt = Form::variable(d, t);
      Form qh1 = q1.partial_derivative(t);
      Form qh2 = q1 - zt * qh1;
      Form qh3 = q2.partial_derivative(t);
      Form qh4 = q2 - zt * qh3;
      MatrixForm Ph1 = P1.partial_derivative(t);
      MatrixForm Ph2 = P1 - Ph1.scaled(zt);
      Form factor = qh2 * qh3 - qh1 * qh4;
      MatrixForm lhs = (Ph1.scaled(qh2) - Ph2.scaled(qh1)).scaled(factor);

      FormMatrix dphi(m, r, d, c.H.degree() > 0 ? c.H.degree() - 1 : 0);
      for (int a = 0; a < m; ++a)
        for (int col = 0; col < r; ++col)
          dphi.set(a, col, c.H.at(a, col).partial_derivative(t));
      FormMatrix phit = dphi.scaled(q1) - c.H.scaled(qh1);
      MatrixForm rhs(m, d, lhs.degree());
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
          Form acc(d, lhs.degree());
          for (int col = 0; col < r; ++col)
            acc += (phit.at(a, col) * phit.at(b, col))
                       .scaled(c.weights[static_cast<size_t>(col)]);
          rhs.set_entry(a, b, acc);
        }
      if (lhs != rhs)
        throw InternalError(
            "the factorization identity for the next Wronskians failed");
    }
  }
  return step;
}

RatMat terminal_matrix(const RatFn& g, int var) {
  Form anchor = Form::variable(g.vars(), var) * g.den();
  auto C = proportional_constant(g.num(), anchor);
  if (!C)
    throw BaseNotConstant(
        "the terminal function is not of the form z" + std::to_string(var + 1) +
        " times a constant matrix");
  return std::move(*C);
}

Realization assemble_pencil(const std::vector<DarlingtonStep>& steps,
                            const RatMat& base, int terminal_var, int m,
                            const MultiaffinizationMap& map,
                            const std::vector<ExtractionTerm>& extraction,
                            const std::vector<FreshExtraction>& fresh) {
  const int n_fresh = map.fresh_vars();
  const int d = map.original_vars();
  int M = m;
  for (const auto& s : steps) M += s.rank;
  if (base.rows() != M || base.cols() != M)
    throw SizeMismatch("terminal matrix size does not match the step ranks");
  if (!base.is_symmetric())
    throw InvariantError("terminal matrix must be symmetric");
  if (!numerically_psd(base))
    throw BaseNotPSD("the terminal coefficient matrix is not PSD");
  if (terminal_var < 0 || terminal_var >= n_fresh)
    throw BadInput("terminal variable out of range");

  Pencil hat(n_fresh, M);
  int off = m;
  for (const auto& s : steps) {
    for (int c = 0; c < s.rank; ++c)
      hat.coeff(s.variable)(off + c, off + c) =
          s.weights[static_cast<size_t>(c)];
    off += s.rank;
  }
  hat.coeff(terminal_var) = hat.coeff(terminal_var) + base;
  for (const auto& fx : fresh) {
    if (fx.matrix.rows() > M)
      throw SizeMismatch("fresh extraction block exceeds the pencil size");
    for (int i = 0; i < fx.matrix.rows(); ++i)
      for (int j = 0; j < fx.matrix.cols(); ++j)
        hat.coeff(fx.var)(i, j) += fx.matrix(i, j);
  }

  Pencil pencil(d, M);
  std::vector<int> target = map.collapse_map();
  for (int v = 0; v < n_fresh; ++v)
    pencil.coeff(target[static_cast<size_t>(v)]) =
        pencil.coeff(target[static_cast<size_t>(v)]) + hat.coeff(v);
  for (const auto& e : extraction)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        pencil.coeff(e.var)(i, j) += e.matrix(i, j);

  pencil.validate_symmetric();
  for (int k = 0; k < d; ++k)
    if (!numerically_psd(pencil.coeff(k)))
      throw NotPSD("pencil coefficient of z" + std::to_string(k + 1) +
                   " failed its eigencheck");

  Realization out;
  out.pencil = std::move(pencil);
  out.m = m;
  out.schur_size = M - m;
  out.map = map;
  out.extraction = extraction;
  out.fresh_extraction = fresh;
  out.steps = steps;
  return out;
}

std::optional<RatMat> schur_complement_at(const Pencil& pencil, int m,
                                          const std::vector<Rational>& point) {
  RatMat A = pencil.evaluate(point);
  const int M = pencil.size();
  const int l = M - m;
  RatMat A11(m, m), A12(m, l), A22(l, l);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A11(i, j) = A(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < l; ++j) A12(i, j) = A(i, m + j);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) A22(i, j) = A(m + i, m + j);
  if (l == 0) return A11;
  auto inv = inverse(A22);
  if (!inv) return std::nullopt;
  return A11 - A12 * (*inv) * A12.transpose();
}

void verify_realization(Realization& realization, const RatFn& f, int points,
                        std::uint64_t seed) {
  auto rng = seeded(seed);
  std::uniform_int_distribution<long> num_dist(1, 200);
  std::uniform_int_distribution<long> den_dist(1, 50);
  int found = 0;
  double worst = 0.0;
  int guard = 0;
  while (found < points) {
    if (++guard > 1000 * points)
      throw InternalError("could not sample enough nonsingular points");
    std::vector<Rational> point;
    point.reserve(static_cast<size_t>(f.vars()));
    for (int k = 0; k < f.vars(); ++k)
      point.emplace_back(num_dist(rng), den_dist(rng));
    auto fv = f.evaluate_real(point);
    if (!fv) continue;
    auto sc = schur_complement_at(realization.pencil, realization.m, point);
    if (!sc) continue;
    if (realization.numeric) {
      double rel = 0.0;
      for (int i = 0; i < realization.m; ++i)
        for (int j = 0; j < realization.m; ++j) {
          double ref = std::max(1.0, std::abs((*fv)(i, j).to_double()));
          rel = std::max(rel,
                         std::abs(((*sc)(i, j) - (*fv)(i, j)).to_double()) / ref);
        }
      worst = std::max(worst, rel);
      if (rel > 1e-8)
        throw InternalError(
            "numeric realization missed the reconstruction tolerance");
    } else if (!(*sc == *fv)) {
      throw InternalError("realization failed exact reconstruction");
    }
    ++found;
  }
  realization.verified_points = found;
  realization.max_rel_error = worst;
}

Realization synthesize(const RatFn& f, const SynthesisOptions& options) {
  const int d = f.vars();
  const int m = f.size();
  // Once a numeric certificate has entered the pipeline, later failures no
  // longer certify anything about the input; the verdict message says so.
  bool exact_so_far = true;
  auto verdict = [&](const char* what) {
    std::string msg = std::string("synthesis failed: ") + what;
    if (!exact_so_far)
      msg = "inconclusive (a numeric certificate entered the pipeline "
            "before this failure): " + msg;
    return NotPositiveReal(msg);
  };
  try {
    auto [extraction, f1] = extract_linear_terms(f);
    Realization real;
    if (f1.num().is_zero()) {
      Pencil pencil(d, m);
      for (const auto& e : extraction)
        pencil.coeff(e.var) = pencil.coeff(e.var) + e.matrix;
      real.pencil = std::move(pencil);
      real.m = m;
      real.schur_size = 0;
      real.map.groups.assign(static_cast<size_t>(d), {});
      real.extraction = extraction;
    } else {
      auto [ghat, map] = multiaffinize(f1);
      const int n = ghat.vars();
      std::vector<int> order = options.fresh_order;
      if (order.empty()) {
        order.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
      }
      if (static_cast<int>(order.size()) != n)
        throw BadInput("fresh variable order must be a permutation");
      {
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
          if (sorted[static_cast<size_t>(i)] != i)
            throw BadInput("fresh variable order must be a permutation");
      }

      RatFn g = ghat;
      std::vector<DarlingtonStep> steps;
      std::vector<FreshExtraction> fresh;
      bool numeric = false;
      for (int idx = 0; idx + 1 < n; ++idx) {
        int j = order[static_cast<size_t>(idx)];
        int dq = g.den().degree_in(j);
        int dp = g.num().degree_in(j);
        if (dq == 0 && dp == 0) continue;
        if (dq == 0) {
          // Numerator-only variable: constant extraction inside the
          // recursion.
          MatrixForm P1 = g.num().partial_derivative(j);
          auto C = proportional_constant(P1, g.den());
          if (!C)
            throw NotConstantResidue(
                "a numerator-only variable has a non-constant coefficient");
          if (!numerically_psd(*C))
            throw NotPSD("a numerator-only variable has an indefinite "
                         "coefficient");
          Form zjq = Form::variable(n, j) * g.den();
          g = RatFn(MatrixForm::from_matrix(
                        g.num().matrix() - FormMatrix::constant_times(*C, zjq)),
                    g.den());
          fresh.push_back({j, std::move(*C)});
          continue;
        }
        FindPsdOptions sos_opts = options.sos;
        if (!exact_so_far) {
          // A numeric certificate perturbed the recursion at roughly its
          // residual scale; later feasibility gaps inherit it.  The final
          // reconstruction check stays the binding gate.
          sos_opts.set_tol = std::max(sos_opts.set_tol, 1e-7);
        }
        DarlingtonStep st = darlington_step(g, j, sos_opts);
        numeric = numeric || !st.exact_certificate;
        exact_so_far = exact_so_far && st.exact_certificate;
        g = st.g_next;
        steps.push_back(std::move(st));
      }
      int last = order[static_cast<size_t>(n - 1)];
      RatMat base = terminal_matrix(g, last);
      real = assemble_pencil(steps, base, last, m, map, extraction, fresh);
      real.numeric = numeric;
    }
    if (!real.numeric) {
      bool exact = true;
      for (int k = 0; k < d; ++k)
        if (!exactly_psd(real.pencil.coeff(k))) {
          exact = false;
          // The numeric eigencheck passed but the matrix is exactly
          // indefinite; for exact certificates this certifies the input.
          throw NotPSD("pencil coefficient of z" + std::to_string(k + 1) +
                       " is exactly indefinite");
        }
      real.exact_psd = exact;
    }
    verify_realization(real, f, options.verification_points, options.seed);
    return real;
  } catch (const NotSOS& e) {
    throw verdict(e.what());
  } catch (const NotPSD& e) {
    throw verdict(e.what());
  } catch (const NotConstantResidue& e) {
    throw verdict(e.what());
  } catch (const BaseNotConstant& e) {
    throw verdict(e.what());
  } catch (const BaseNotPSD& e) {
    throw verdict(e.what());
  }
}

}  // namespace longres
