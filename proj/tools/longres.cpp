// Command-line front end: synthesize long-resolvent realizations, run the
// positivity check, the SOS engine, product polarization or a single degree
// reduction on JSON-described inputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "longres/io.hpp"
#include "longres/polarize.hpp"
#include "longres/synth.hpp"

namespace {

using nlohmann::json;
using namespace longres;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotPositiveReal = 2;

struct CommonOpts {
  std::string input;
  std::string output;
  double tol = 1e-9;
  int max_iters = 10000;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_solver_opts = true) {
  cmd->add_option("input", o.input, "input JSON file")->required();
  cmd->add_option("-o,--output", o.output, "report file (default: stdout)");
  if (with_solver_opts) {
    cmd->add_option("--tol", o.tol, "numeric tolerance, in (0, 1e-3]")
        ->check(CLI::Range(1e-300, 1e-3));
    cmd->add_option("--max-iters", o.max_iters, "projection iteration cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "sampling seed");
  }
}

void emit(const CommonOpts& o, const json& report) {
  std::string text = report.dump(2);
  if (o.output.empty()) {
    std::cout << text << std::endl;
  } else {
    std::ofstream out(o.output);
    if (!out) throw BadInput("cannot open output file: " + o.output);
    out << text << std::endl;
  }
}

FindPsdOptions solver_options(const CommonOpts& o) {
  FindPsdOptions opts;
  opts.max_iterations = o.max_iters;
  opts.set_tol = o.tol;
  return opts;
}

json rat_matrix_to_json(const RatMat& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

json pencil_to_json(const Pencil& p) {
  json out = json::object();
  for (int k = 0; k < p.vars(); ++k)
    out["A" + std::to_string(k + 1)] = rat_matrix_to_json(p.coeff(k));
  return out;
}

json form_matrix_to_json(const FormMatrix& h) {
  json rows = json::array();
  for (int i = 0; i < h.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < h.cols(); ++j) row.push_back(form_to_string(h.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

RatFn require_ratfn(ParsedInput in) {
  if (!std::holds_alternative<RatFn>(in))
    throw BadInput("this command needs a rational function input "
                   "('num' + 'den')");
  return std::get<RatFn>(std::move(in));
}

MatrixForm require_matrix_form(ParsedInput in) {
  if (std::holds_alternative<MatrixForm>(in))
    return std::get<MatrixForm>(std::move(in));
  throw BadInput("this command needs a matrix form input ('F')");
}

int run_synthesize(const CommonOpts& o) {
  RatFn f = require_ratfn(parse_input_file(o.input));
  json report;
  report["command"] = "synthesize";
  report["input"] = o.input;
  report["seed"] = o.seed;
  try {
    SynthesisOptions opts;
    opts.seed = o.seed;
    opts.sos = solver_options(o);
    Realization real = synthesize(f, opts);
    report["status"] = "ok";
    report["block_split"] = {real.m, real.schur_size};
    report["pencil"] = pencil_to_json(real.pencil);
    report["numeric"] = real.numeric;
    report["exact_psd"] = real.exact_psd;
    json groups = json::array();
    for (const auto& g : real.map.groups) groups.push_back(g);
    report["variable_groups"] = groups;
    json extr = json::array();
    for (const auto& e : real.extraction)
      extr.push_back({{"variable", e.var + 1},
                      {"matrix", rat_matrix_to_json(e.matrix)}});
    report["extraction_terms"] = extr;
    json fresh = json::array();
    for (const auto& e : real.fresh_extraction)
      fresh.push_back({{"fresh_variable", e.var + 1},
                       {"matrix", rat_matrix_to_json(e.matrix)}});
    report["recursion_extraction_terms"] = fresh;
    json steps = json::array();
    for (const auto& s : real.steps) {
      json weights = json::array();
      for (const auto& w : s.weights) weights.push_back(w.str());
      steps.push_back({{"variable", s.variable + 1},
                       {"rank", s.rank},
                       {"weights", weights},
                       {"certificate", s.exact_certificate ? "exact" : "numeric"}});
    }
    report["steps"] = steps;
    report["verification"] = {
        {"points", real.verified_points},
        {"max_relative_error", format_double(real.max_rel_error)}};
    emit(o, report);
    return kExitOk;
  } catch (const NotPositiveReal& e) {
    report["status"] = "not_positive_real";
    report["error"] = e.what();
    emit(o, report);
    return kExitNotPositiveReal;
  }
}

int run_check(const CommonOpts& o) {
  RatFn f = require_ratfn(parse_input_file(o.input));
  json report;
  report["command"] = "check";
  report["input"] = o.input;
  bool reduced = false;
  if (!f.multiaffine()) {
    // The Wronskian criterion is multiaffine-only; the degree reduction
    // preserves positive reality in both directions, so reduce first.
    auto [fhat, map] = multiaffinize(f);
    f = fhat;
    reduced = true;
  }
  report["multiaffinized"] = reduced;
  PositivityResult res = positivity_criterion(f, o.seed, solver_options(o));
  json statuses = json::array();
  for (auto s : res.wronskian_status) statuses.push_back(to_string(s));
  report["wronskian_status"] = statuses;
  switch (res.verdict) {
    case PositivityVerdict::certified_positive:
      report["status"] = "certified_positive";
      emit(o, report);
      return kExitOk;
    case PositivityVerdict::violation: {
      report["status"] = "violation";
      json pt = json::array();
      for (const auto& v : *res.violation_point) pt.push_back(v.str());
      report["violation_point"] = pt;
      emit(o, report);
      return kExitNotPositiveReal;
    }
    case PositivityVerdict::unknown:
      report["status"] = "unknown";
      emit(o, report);
      return kExitOk;
  }
  return kExitUsage;
}

int run_sos(const CommonOpts& o) {
  MatrixForm F = require_matrix_form(parse_input_file(o.input));
  json report;
  report["command"] = "sos";
  report["input"] = o.input;
  CertifyResult res = certify_sos(F, solver_options(o));
  report["status"] = to_string(res.report.status);
  report["iterations"] = res.report.iterations;
  report["final_distance"] = format_double(res.report.final_distance);
  json basis = json::array();
  for (const auto& m : res.space.basis.monomials()) basis.push_back(m.str());
  report["basis"] = basis;
  if (res.certificate) {
    const auto& c = *res.certificate;
    report["certificate"] = {
        {"exact", c.exact},
        {"residual", format_double(c.residual)},
        {"H", form_matrix_to_json(c.H)},
    };
    json weights = json::array();
    for (const auto& w : c.weights) weights.push_back(w.str());
    report["certificate"]["weights"] = weights;
    if (c.exact) report["certificate"]["gram"] = rat_matrix_to_json(c.gram);
  }
  emit(o, report);
  return kExitOk;
}

int run_polarize(const CommonOpts& o) {
  RatFn f = require_ratfn(parse_input_file(o.input));
  json report;
  report["command"] = "polarize";
  report["input"] = o.input;
  ProductPolarization pol = polarize_product(f.den(), f.num());
  json basis = json::array();
  for (const auto& m : pol.basis.monomials()) basis.push_back(m.str());
  report["basis"] = basis;
  report["m"] = pol.m;
  report["pencil_size"] = pol.pencil.size();
  report["multiaffine_vars"] = pol.multiaffine_vars;
  report["multiaffine_basis_size"] = pol.multiaffine_basis_size;
  report["pencil"] = pencil_to_json(pol.pencil);
  emit(o, report);
  return kExitOk;
}

int run_reduce(const CommonOpts& o, int var, int bound) {
  RatFn f = require_ratfn(parse_input_file(o.input));
  if (var < 1 || var > f.vars())
    throw BadInput("--var must name an input variable (1-based)");
  const int d = f.vars();
  ReductionPlan plan;
  plan.source_var = var - 1;
  plan.bound = bound;
  for (int i = 0; i < bound; ++i) plan.new_vars.push_back(d + i);
  MatrixForm P = reduce_degree(f.num(), plan);
  Form q = reduce_degree(f.den(), plan);
  json report;
  report["command"] = "reduce";
  report["input"] = o.input;
  report["variable"] = var;
  report["bound"] = bound;
  json fresh = json::array();
  for (int v : plan.new_vars) fresh.push_back(v + 1);
  report["fresh_variables"] = fresh;
  json result;
  result["d"] = P.vars();
  result["m"] = P.size();
  json rows = json::array();
  for (int i = 0; i < P.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < P.size(); ++j)
      row.push_back(form_to_string(P.entry(i, j)));
    rows.push_back(row);
  }
  result["num"] = rows;
  result["den"] = form_to_string(q);
  report["reduced"] = result;
  emit(o, report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-resolvent synthesis of positive real functions"};
  app.require_subcommand(1);

  CommonOpts synth_o, check_o, sos_o, pol_o, red_o;
  int red_var = 1, red_bound = 1;

  add_common(app.add_subcommand("synthesize",
                                "synthesize a PSD long-resolvent pencil"),
             synth_o);
  add_common(app.add_subcommand("check", "multiaffine positivity criterion"),
             check_o);
  add_common(app.add_subcommand("sos", "SOS certification of a matrix form"),
             sos_o);
  add_common(app.add_subcommand("polarize", "product polarization"), pol_o,
             false);
  auto* red = app.add_subcommand("reduce", "single-variable degree reduction");
  add_common(red, red_o, false);
  red->add_option("--var", red_var, "1-based variable to reduce")->required();
  red->add_option("--bound", red_bound, "degree bound n0")
      ->required()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand("synthesize")) return run_synthesize(synth_o);
    if (app.got_subcommand("check")) return run_check(check_o);
    if (app.got_subcommand("sos")) return run_sos(sos_o);
    if (app.got_subcommand("polarize")) return run_polarize(pol_o);
    if (app.got_subcommand("reduce")) return run_reduce(red_o, red_var, red_bound);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const longres::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }
}
