#pragma once

#include <optional>

#include "longres/gram.hpp"
#include "longres/matrix_form.hpp"

namespace longres {

// Gram space of an even-degree symmetric matrix form: monomial basis with
// caps ceil(deg_k F / 2) intersected with the supplied limits, pruned by the
// diagonal-consistency rule (a basis monomial whose square is unreachable
// must have a zero row in every PSD Gram matrix), one particular Gram
// matrix (coefficients split equally over the matching pairs), and
// directions spanning the annihilator space (block-lifted for m > 1).
GramSpace build_gram_space(const MatrixForm& F,
                           const std::vector<int>& caps_limit = {});

struct FindPsdOptions {
  int max_iterations = 10000;
  double converge_tol = 1e-12;   // successive-iterate max-entry norm
  double set_tol = 1e-9;         // accepted gap between the two sets
  double stall_distance = 1e-4;  // evidence threshold for infeasibility
  std::uint64_t max_denominator = 1000000;  // rationalization bound
};

struct FeasibilityReport {
  enum class Status { sos_exact, sos_numeric, not_sos_evidence, inconclusive };
  Status status = Status::inconclusive;
  int iterations = 0;
  double final_distance = 0.0;
  std::optional<RatMat> exact_gram;
  std::vector<double> numeric_gram;  // row-major, PSD side of the last iterate

  bool feasible() const {
    return status == Status::sos_exact || status == Status::sos_numeric;
  }
};

const char* to_string(FeasibilityReport::Status s);

// Alternating projections between the PSD cone and the affine Gram space,
// started from the particular matrix.  On numeric convergence the affine
// coordinates are rationalized (continued fractions, bounded denominator)
// and the result is PSD-verified by exact LDL^T.
FeasibilityReport find_psd_gram(const GramSpace& space,
                                const FindPsdOptions& options = {});

// Weighted SOS certificate F = H diag(weights) H^T; the weights are the
// LDL^T pivots of the Gram matrix, which keeps every coefficient rational.
// residual == 0 for exact certificates.
struct SosCertificate {
  FormMatrix H;
  std::vector<Rational> weights;
  RatMat gram;
  double residual = 0.0;
  bool exact = false;
};

SosCertificate factor_certificate(const GramSpace& space,
                                  const FeasibilityReport& report,
                                  const MatrixForm& F);

struct CertifyResult {
  GramSpace space;
  FeasibilityReport report;
  std::optional<SosCertificate> certificate;
};

// build_gram_space + find_psd_gram + factor_certificate in one call.
CertifyResult certify_sos(const MatrixForm& F, const FindPsdOptions& options = {});

}  // namespace longres
