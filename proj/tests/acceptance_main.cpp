// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances and counts are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "longres/io.hpp"
#include "longres/polarize.hpp"
#include "longres/synth.hpp"
#include "support/fixtures.hpp"

using namespace longres;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number,
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run(int number, const std::string& what,
         const std::function<void()>& body) {
  try {
    body();
    report(number, what, true);
  } catch (const std::exception& e) {
    report(number, what, false, e.what());
  }
}

struct Failure : std::runtime_error {
  explicit Failure(const std::string& what) : std::runtime_error(what) {}
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

// --------------------------------------------------------------------------

void criterion1_end_to_end() {
  auto t0 = std::chrono::steady_clock::now();
  auto corpus = fixtures::corpus();
  require(corpus.size() >= 6, "corpus must have at least 6 fixtures");
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> num(1, 200), den(1, 50);
  for (size_t i = 0; i < corpus.size(); ++i) {
    const RatFn& f = corpus[i];
    Realization real = synthesize(f);
    for (int k = 0; k < f.vars(); ++k)
      require(min_eigenvalue(real.pencil.coeff(k)) >= -1e-9,
              "pencil coefficient failed the eigenvalue bound (fixture " +
                  std::to_string(i + 1) + ")");
    int checked = 0;
    int guard = 0;
    while (checked < 20) {
      require(++guard < 20000, "could not sample verification points");
      std::vector<Rational> pt;
      for (int k = 0; k < f.vars(); ++k) pt.emplace_back(num(rng), den(rng));
      auto fv = f.evaluate_real(pt);
      if (!fv) continue;
      auto sc = schur_complement_at(real.pencil, real.m, pt);
      if (!sc) continue;
      if (real.numeric) {
        for (int a = 0; a < real.m; ++a)
          for (int b = 0; b < real.m; ++b) {
            double ref = std::max(1.0, std::abs((*fv)(a, b).to_double()));
            require(std::abs(((*sc)(a, b) - (*fv)(a, b)).to_double()) / ref <=
                        1e-8,
                    "numeric reconstruction tolerance exceeded");
          }
      } else {
        require(*sc == *fv, "exact reconstruction failed (fixture " +
                                std::to_string(i + 1) + ")");
      }
      ++checked;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  require(secs <= 60.0,
          "runtime " + std::to_string(secs) + "s exceeds the 60s budget");
}

void criterion2_degree_reduction() {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    int d = 1 + static_cast<int>(rng() % 3);
    int bound = 1 + static_cast<int>(rng() % 3);
    int degree = 1 + static_cast<int>(rng() % 4);
    Form p = fixtures::random_form(rng, d, degree, bound, 4);
    int k = static_cast<int>(rng() % static_cast<std::uint64_t>(d));
    ReductionPlan plan{k, bound, {}};
    plan.new_vars.push_back(k);
    for (int i = 1; i < bound; ++i) plan.new_vars.push_back(d + i - 1);
    Form reduced = reduce_degree(p, plan);
    for (int v : plan.new_vars)
      require(reduced.degree_in(v) <= 1, "reduced form is not affine");

    MultiaffinizationMap inverse;
    int out_vars = plan.output_vars(d);
    inverse.groups.resize(static_cast<size_t>(d));
    std::vector<bool> fresh(static_cast<size_t>(out_vars), false);
    for (int v : plan.new_vars) {
      inverse.groups[static_cast<size_t>(k)].push_back(v);
      fresh[static_cast<size_t>(v)] = true;
    }
    for (int v = 0; v < out_vars; ++v)
      if (!fresh[static_cast<size_t>(v)] && v < d && v != k)
        inverse.groups[static_cast<size_t>(v)].push_back(v);
    require(identify_variables(reduced, inverse) == p,
            "identify o reduce is not the identity");

    if (bound >= 2) {
      std::vector<int> perm(static_cast<size_t>(out_vars));
      for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
      std::swap(perm[static_cast<size_t>(plan.new_vars[0])],
                perm[static_cast<size_t>(plan.new_vars[1])]);
      require(reduced.embedded(out_vars, perm) == reduced,
              "reduced form is not symmetric under a fresh swap");
    }
  }
}

void criterion3_polarization() {
  std::mt19937_64 rng(42);
  int done = 0;
  while (done < 50) {
    int d = 1 + static_cast<int>(rng() % 3);
    int n = static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 2);
    Form q = fixtures::random_nonzero_form(rng, d, n, 2, 2);
    MatrixForm P = fixtures::random_matrix_form(rng, m, d, n + 1, 3, 2);
    ProductPolarization a = polarize_product(q, P, ChainOrder::ascending);
    // Product identity, exactly, in the doubled variable space.
    FormMatrix rhs = psi_pencil_psi_doubled(a.pencil, a.basis, a.m);
    Form qz = doubled(q, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        require(qz * doubled(P.entry(i, j), 1) == rhs.at(i, j),
                "product identity failed");
    // Wronskian representation, exactly, against the independent path.
    for (int k = 0; k < d; ++k)
      require(psi_quadratic(a.pencil.coeff(k), a.basis, a.m) ==
                  wronskian(q, P, k),
              "wronskian representation failed");
    // Gauge property between two differently-chained polarizations.
    ProductPolarization b = polarize_product(q, P, ChainOrder::descending);
    require(gauge_difference_check(a.pencil, b.pencil, a.basis),
            "gauge difference check failed");
    ++done;
  }
  // Rank bound on transfer pencils.
  done = 0;
  while (done < 50) {
    int d = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d - 1));
    MonomialBasis basis = MonomialBasis::multiaffine(d, n);
    MonomialBasis targets = MonomialBasis::multiaffine(d, n + 1);
    if (targets.size() == 0) continue;
    Monomial beta = targets.at(
        static_cast<int>(rng() % static_cast<std::uint64_t>(targets.size())));
    int slot =
        static_cast<int>(rng() % static_cast<std::uint64_t>(basis.size()));
    Pencil C = transfer_pencil(basis, beta, slot);
    for (int k = 0; k < d; ++k)
      require(rank(C.coeff(k)) <= 2, "transfer coefficient rank exceeds 2");
    ++done;
  }
}

void criterion4_gram_space() {
  std::mt19937_64 rng(42);
  int done = 0;
  while (done < 30) {
    int d = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 3);
    std::vector<int> caps(static_cast<size_t>(d));
    for (auto& c : caps) c = 1 + static_cast<int>(rng() % 3);
    MonomialBasis basis = MonomialBasis::all_of_degree(d, n, caps);
    if (basis.size() == 0) continue;
    auto anns = annihilator_basis(basis);
    for (const auto& s : anns) {
      require(psi_quadratic(s, basis, 1).is_zero(),
              "annihilator does not annihilate Psi");
      std::map<Monomial, Rational> sums;
      for (int i = 0; i < basis.size(); ++i)
        for (int j = 0; j < basis.size(); ++j)
          sums[basis.at(i).times(basis.at(j))] += s(i, j);
      for (const auto& [beta, v] : sums)
        require(v.is_zero(), "pair-sum condition failed");
    }
    require(fixtures::span_dimension(anns) ==
                fixtures::annihilator_nullity_oracle(basis),
            "annihilator span dimension disagrees with the oracle");
    ++done;
  }
}

void criterion5_defect() {
  std::mt19937_64 rng(42);
  int done = 0;
  while (done < 20) {
    int d = 2 + static_cast<int>(rng() % 3);
    int n = 2 + static_cast<int>(rng() % 2);
    std::vector<int> caps(static_cast<size_t>(d));
    for (auto& c : caps) c = 1 + static_cast<int>(rng() % 3);
    int k = static_cast<int>(rng() % static_cast<std::uint64_t>(d));
    MonomialBasis basis = MonomialBasis::all_of_degree(d, n, caps);
    if (basis.size() == 0) continue;
    // Annihilator basis matrices of the restricted block whose transformation
    // avoids the distinguished variable (the completable class; see the
    // defect_solve docs for the boundary).
    auto patterns = fixtures::avoiding_patterns(basis, k);
    if (patterns.empty()) continue;
    RatMat S(basis.size(), basis.size());
    for (const auto& p : patterns)
      if (rng() % 2) S = S + p.scaled(fixtures::random_coeff(rng));
    if (S.is_zero()) S = patterns.front();
    auto sols = defect_solve(S, basis, k);
    require(sols[static_cast<size_t>(k)] == S, "distinguished slot mutated");
    Pencil pencil(d, basis.size());
    for (int v = 0; v < d; ++v) pencil.coeff(v) = sols[static_cast<size_t>(v)];
    require(pencil_times_psi(pencil, basis, 1).is_zero(),
            "defect pencil annihilation failed");
    for (int v = 0; v < d; ++v)
      require(sols[static_cast<size_t>(v)].is_symmetric(),
              "defect completion is not symmetric");
    ++done;
  }
}

void criterion6_sos_engine() {
  std::vector<MatrixForm> exact_cases{
      fixtures::scalar("z2^2", 2),
      fixtures::scalar("z1^2 + z2^2", 2),
      fixtures::scalar("2*z1^2 + 2*z1*z2 + z2^2", 2),
  };
  for (const auto& f : fixtures::corpus())
    for (int k = 0; k < f.vars(); ++k) exact_cases.push_back(wronskian(f, k));
  for (const auto& F : exact_cases) {
    auto res = certify_sos(F);
    require(res.report.status == FeasibilityReport::Status::sos_exact,
            "expected sos_exact, got " +
                std::string(to_string(res.report.status)));
    require(res.certificate && res.certificate->residual == 0.0,
            "exact certificate must have residual exactly 0");
  }

  auto choi = find_psd_gram(build_gram_space(fixtures::choi_form()));
  require(choi.status == FeasibilityReport::Status::not_sos_evidence,
          "Choi form must yield not_sos_evidence");
  require(choi.final_distance > 1e-4, "Choi stall distance too small");
  require(choi.iterations <= 10000, "Choi exceeded the iteration budget");

  Form s = fixtures::choi_artin_square_root();
  MatrixForm s2F = fixtures::choi_form().scaled(s * s);
  auto evidence = find_psd_gram(build_gram_space(s2F));
  require(evidence.status == FeasibilityReport::Status::not_sos_evidence,
          "s^2 * Choi must stay not-SOS");
  require(evidence.final_distance > 1e-4, "s^2 * Choi stall distance too small");
  require(evidence.iterations <= 10000, "s^2 * Choi exceeded iterations");
}

void criterion7_wronskians_are_sos() {
  for (const auto& f : fixtures::corpus())
    for (int k = 0; k < f.vars(); ++k) {
      auto res = certify_sos(wronskian(f, k));
      require(res.report.feasible(),
              "a corpus Wronskian failed SOS certification");
    }
}

void criterion8_positivity() {
  for (const auto& f : fixtures::corpus_multiaffine()) {
    auto res = positivity_criterion(f);
    require(res.verdict == PositivityVerdict::certified_positive,
            "multiaffine corpus member not certified positive");
  }
  auto neg = positivity_criterion(fixtures::ratfn("-z1", "1", 1));
  require(neg.verdict == PositivityVerdict::violation,
          "-z1 must be a violation");
  auto indef = positivity_criterion(fixtures::indefinite_fixture());
  require(indef.verdict == PositivityVerdict::violation,
          "indefinite-Wronskian fixture must be a violation");
  require(indef.violation_point.has_value(), "violation must carry a point");
}

void criterion9_wronskian_sampling() {
  for (const auto& f : fixtures::corpus())
    for (int k = 0; k < f.vars(); ++k)
      require(psd_sample_check(wronskian(f, k), 1000, 42).no_violation,
              "sampled violation on a corpus Wronskian");
}

}  // namespace

int main() {
  run(1, "end-to-end synthesis corpus (PSD pencil + exact reconstruction)",
      criterion1_end_to_end);
  run(2, "degree reduction round-trip and symmetry", criterion2_degree_reduction);
  run(3, "product polarization identities, ranks and gauge",
      criterion3_polarization);
  run(4, "annihilator bases against the exact nullity oracle",
      criterion4_gram_space);
  run(5, "representation defect completions", criterion5_defect);
  run(6, "SOS engine exact certificates and infeasibility evidence",
      criterion6_sos_engine);
  run(7, "all corpus Wronskians receive SOS certificates",
      criterion7_wronskians_are_sos);
  run(8, "positivity criterion verdicts", criterion8_positivity);
  run(9, "sampled PSD property of corpus Wronskians",
      criterion9_wronskian_sampling);
  return failures == 0 ? 0 : 1;
}
