#pragma once

#include <optional>

#include "longres/pencil.hpp"
#include "longres/reduce.hpp"
#include "longres/sos.hpp"

namespace longres {

// Constant PSD coefficient split off by the leading-term extraction:
// f = z_var * matrix + rest.
struct ExtractionTerm {
  int var;
  RatMat matrix;
};

// Splits off z_k A_k for every variable with deg_k P > deg_k q.  The
// leading coefficient ratio must be a constant PSD matrix; a non-constant
// ratio or an indefinite limit certifies that the input is not positive
// real (NotConstantResidue / NotPSD).
std::pair<std::vector<ExtractionTerm>, RatFn> extract_linear_terms(
    const RatFn& f);

enum class PositivityVerdict { certified_positive, violation, unknown };

struct PositivityResult {
  PositivityVerdict verdict = PositivityVerdict::unknown;
  std::optional<std::vector<Rational>> violation_point;
  std::vector<FeasibilityReport::Status> wronskian_status;
};

// Multiaffine positivity criterion: certified_positive iff every partial
// Wronskian admits an SOS certificate; sampled sign violations are
// returned as counterexamples.  Refuses non-multiaffine input.
PositivityResult positivity_criterion(const RatFn& f, std::uint64_t seed = 42,
                                      const FindPsdOptions& options = {});

// One Darlington elimination stage: g = (z_j P1 + P2)/(z_j q1 + q2) becomes
// the (m+r)-sized multiaffine function
//   g_next = [[P1, Phi D], [D Phi^T, q2 D]] / q1,
// where W_{z_j}[q, P] = Phi D Phi^T is the weighted SOS certificate.
struct DarlingtonStep {
  int variable = 0;
  int rank = 0;
  std::vector<Rational> weights;
  FormMatrix phi;
  RatFn g_next;
  bool exact_certificate = true;
};

DarlingtonStep darlington_step(const RatFn& g, int j,
                               const FindPsdOptions& options = {});

// Constant extraction that happens inside the recursion when a fresh
// variable appears in the numerator only.
struct FreshExtraction {
  int var;
  RatMat matrix;  // acts on the leading block of its step's size
};

struct Realization {
  Pencil pencil;  // over the original variables
  int m = 0;
  int schur_size = 0;
  MultiaffinizationMap map;
  std::vector<ExtractionTerm> extraction;
  std::vector<FreshExtraction> fresh_extraction;  // recursion-internal
  std::vector<DarlingtonStep> steps;
  bool numeric = false;    // some certificate was numeric
  bool exact_psd = false;  // coefficients PSD-verified by exact LDL^T
  int verified_points = 0;
  double max_rel_error = 0.0;
};

// Terminal stage: g(z) == z_var * A with A constant symmetric
// (BaseNotConstant otherwise).
RatMat terminal_matrix(const RatFn& g, int var);

// Stacks diag(0_m, z_{j_1} D_1, ..., z_{j_s} D_s) + z_terminal * base,
// identifies fresh variables through the map and re-adds the extraction
// terms on the leading block.  Throws BaseNotPSD if base fails its
// eigencheck.
Realization assemble_pencil(const std::vector<DarlingtonStep>& steps,
                            const RatMat& base, int terminal_var, int m,
                            const MultiaffinizationMap& map,
                            const std::vector<ExtractionTerm>& extraction,
                            const std::vector<FreshExtraction>& fresh = {});

struct SynthesisOptions {
  std::uint64_t seed = 42;
  int verification_points = 20;
  // Processing order of the fresh variables (a permutation); empty means
  // ascending.  The reconstruction contract is order-invariant, pencil
  // sizes are not.
  std::vector<int> fresh_order;
  FindPsdOptions sos;
};

// Exact Schur complement A11(pt) - A12 A22^{-1} A21 of the pencil at a
// rational point; empty when A22(pt) is singular.
std::optional<RatMat> schur_complement_at(const Pencil& pencil, int m,
                                          const std::vector<Rational>& point);

// Evaluates the realization against f at pseudo-random rational points of
// the open positive orthant; exact equality is required for exact
// realizations, relative 1e-8 for numeric ones.  Throws InternalError on
// mismatch and fills the verification summary.
void verify_realization(Realization& realization, const RatFn& f, int points,
                        std::uint64_t seed);

// Full pipeline: extraction, multiaffinization, Darlington recursion,
// terminal base, assembly, verification.  Sub-step certification failures
// are rethrown as NotPositiveReal.
Realization synthesize(const RatFn& f, const SynthesisOptions& options = {});

}  // namespace longres
