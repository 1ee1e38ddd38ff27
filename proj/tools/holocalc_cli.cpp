// Batch front end: every operation takes JSON operators/calibrations and
// emits a JSON report (or CSV for resolvent norm grids). Inputs and seeds
// fully determine the output bytes.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "holocalc/eig.hpp"
#include "holocalc/funcalc.hpp"
#include "holocalc/json_io.hpp"
#include "holocalc/perturb.hpp"
#include "holocalc/projections.hpp"
#include "holocalc/renorm.hpp"
#include "holocalc/spectral.hpp"
#include "holocalc/verify.hpp"

namespace hc = holocalc;
using hc::Json;

namespace {

struct CommonArgs {
  std::string t_path, s_path, calib_path, domain_path, out_path;
  std::string fun_spec = "exp";
  std::string set_spec, lambdas_path, lambda_spec, grid_spec, suite = "all";
  std::string mode = "gi2";
  double tol = 1e-10;
  double gap = 0.05;
  double mu = 0.0;
  std::size_t n_max = 60;
  std::size_t nodes = 128;
  std::uint64_t seed = 0;
  std::optional<std::size_t> p0;
};

hc::Complex parse_complex_arg(const std::string& text) {
  std::stringstream ss(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  ss >> re;
  if (ss >> comma && comma == ',') ss >> im;
  return {re, im};
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoul(tok));
  return out;
}

hc::Matrix load_operator(const std::string& path) {
  if (path.empty()) throw hc::PreconditionError("missing required --T operator file");
  return hc::matrix_from_json(hc::load_json_file(path));
}

hc::Calibration load_calibration(const CommonArgs& args, std::size_t dim) {
  if (args.calib_path.empty()) return hc::Calibration::max_norm(dim);
  hc::Calibration p = hc::calibration_from_json(hc::load_json_file(args.calib_path));
  if (p.dim() != dim)
    throw hc::DimensionError("calibration dimension does not match the operator");
  return p;
}

void emit(const CommonArgs& args, const Json& out) {
  const std::string text = out.dump(2) + "\n";
  if (args.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(args.out_path);
    if (!f) throw hc::Error("cannot open output file " + args.out_path);
    f << text;
  }
}

void emit_text(const CommonArgs& args, const std::string& text) {
  if (args.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(args.out_path);
    if (!f) throw hc::Error("cannot open output file " + args.out_path);
    f << text;
  }
}

Json config_json(const CommonArgs& args) {
  return Json{{"tol", args.tol}, {"gap", args.gap}, {"n_max", args.n_max},
              {"nodes", args.nodes}, {"seed", args.seed}};
}

// ---------------------------------------------------------------------------

int cmd_radius(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  const hc::Calibration p = load_calibration(args, t.rows());
  const hc::SpectralRadiusEstimate est = hc::spectral_radius(p, t, args.n_max);
  Json radius{{"inf_form", est.by_formula.at("inf_over_n")},
              {"limsup", est.by_formula.at("limsup_sup")},
              {"eigen_oracle", est.by_formula.at("eigen_oracle")},
              {"n_max", est.n_max},
              {"converged", est.converged}};
  emit(args, Json{{"command", "radius"},
                  {"config", config_json(args)},
                  {"radius", std::move(radius)},
                  {"provenance",
                   Json{{"inf_form", "max over members of min_n phat(T^n)^(1/n); "
                                     "certified upper bound"},
                        {"limsup", "log-slope of phat(T^n) over the last quarter; "
                                   "advisory"},
                        {"eigen_oracle", "max |lambda| from the eigensolver, residual "
                                         "tol 1e-9"}}}});
  return 0;
}

int cmd_spectrum(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  const hc::Spectrum s = hc::eigenvalues(t);
  Json eigs = Json::array();
  double max_residual = 0.0;
  for (const auto& ev : s.eigenvalues) {
    const hc::EigenPair pair = hc::recover_pair(t, ev);
    max_residual = std::max(max_residual, pair.residual);
    eigs.push_back(hc::complex_to_json(ev));
  }
  emit(args, Json{{"command", "spectrum"},
                  {"config", config_json(args)},
                  {"eigenvalues", std::move(eigs)},
                  {"radius", s.radius},
                  {"residuals", Json{{"max_eigenpair_residual", max_residual},
                                     {"contract", 1e-9}}}});
  return 0;
}

int cmd_resolvent(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  const hc::Calibration p = load_calibration(args, t.rows());

  if (!args.grid_spec.empty()) {
    // CSV landscape: re,im,opnorm(R(lambda,T)) over a rectangular grid;
    // grid spec re0:re1:n,im0:im1:m
    const auto comma = args.grid_spec.find(',');
    if (comma == std::string::npos)
      throw hc::PreconditionError("grid spec must be re0:re1:n,im0:im1:m");
    auto parse_axis = [](const std::string& s) {
      double a, b;
      std::size_t n;
      char c1, c2;
      std::stringstream ss(s);
      if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw hc::PreconditionError("bad grid axis '" + s + "'");
      return std::tuple<double, double, std::size_t>{a, b, n};
    };
    const auto [re0, re1, nre] = parse_axis(args.grid_spec.substr(0, comma));
    const auto [im0, im1, nim] = parse_axis(args.grid_spec.substr(comma + 1));
    std::ostringstream csv;
    csv << "re,im,resolvent_norm\n";
    for (std::size_t i = 0; i < nre; ++i) {
      for (std::size_t j = 0; j < nim; ++j) {
        const double re = nre == 1 ? re0 : re0 + (re1 - re0) * double(i) / double(nre - 1);
        const double im = nim == 1 ? im0 : im0 + (im1 - im0) * double(j) / double(nim - 1);
        csv << re << ',' << im << ',';
        try {
          const hc::Matrix r = hc::resolvent_direct(t, {re, im});
          const hc::MixedValue norm = hc::opnorm(p, r);
          if (norm.is_finite())
            csv << norm.value();
          else
            csv << "inf";
        } catch (const hc::SingularError&) {
          csv << "inf";
        }
        csv << '\n';
      }
    }
    emit_text(args, csv.str());
    return 0;
  }

  if (args.lambda_spec.empty())
    throw hc::PreconditionError("resolvent needs --lambda (or --grid)");
  const hc::Complex lambda = parse_complex_arg(args.lambda_spec);
  Json out{{"command", "resolvent"}, {"config", config_json(args)},
           {"lambda", hc::complex_to_json(lambda)}};
  if (args.mode == "neumann") {
    const hc::NeumannResult nr = hc::neumann_resolvent(p, t, lambda, args.tol);
    out["resolvent"] = hc::matrix_to_json(nr.resolvent);
    out["terms_used"] = nr.terms_used;
    out["tail_bound"] = nr.tail_bound;
    out["provenance"] = Json{{"resolvent", "Neumann partial sums of T^n/lambda^(n+1) "
                                           "until max_p phat(term) < tol"}};
  } else {
    const hc::Matrix r = hc::resolvent_direct(t, lambda);
    const std::size_t n = t.rows();
    const hc::Matrix residual =
        (hc::Matrix::identity(n) * lambda - t) * r - hc::Matrix::identity(n);
    out["resolvent"] = hc::matrix_to_json(r);
    out["residual_inf_norm"] = residual.inf_norm();
    out["provenance"] = Json{{"resolvent", "LU with partial pivoting, one "
                                           "refinement pass, singularity tol 1e-12 "
                                           "relative"}};
  }
  emit(args, out);
  return 0;
}

int cmd_funcalc(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  const hc::Calibration p = load_calibration(args, t.rows());
  const hc::HoloFun f = hc::parse_function(args.fun_spec);
  hc::FuncalcOptions opts;
  opts.gap = args.gap;
  opts.initial_nodes = args.nodes;
  const hc::Contour gamma = hc::default_contour(t, f, opts);
  const hc::FuncalcReport rep = hc::apply_funcalc_report(p, t, f, gamma, args.tol, opts);
  emit(args, Json{{"command", "funcalc"},
                  {"config", config_json(args)},
                  {"f", f.describe()},
                  {"contour", hc::contour_to_json(gamma)},
                  {"result", hc::matrix_to_json(rep.value)},
                  {"nodes_used", rep.nodes_used},
                  {"last_delta", rep.last_delta},
                  {"commutation_defect", rep.commutation_defect},
                  {"provenance",
                   Json{{"result", "trapezoidal contour quadrature of f(lambda) "
                                   "R(lambda,T); nodes doubled until the change "
                                   "fell below tol"}}}});
  return 0;
}

int cmd_project(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  const hc::Calibration p = load_calibration(args, t.rows());
  if (args.set_spec.empty()) throw hc::PreconditionError("project needs --set i,j,...");
  hc::SpectralSet h{parse_index_list(args.set_spec)};
  hc::ProjectionOptions opts;
  opts.gap = args.gap;
  opts.initial_nodes = args.nodes;
  const hc::ProjectionReport rep = hc::spectral_projection(p, t, h, args.tol, opts);
  emit(args, Json{{"command", "project"},
                  {"config", config_json(args)},
                  {"set", h.cluster_indices},
                  {"projector", hc::matrix_to_json(rep.projector)},
                  {"defects", Json{{"idempotency", rep.idempotency_defect},
                                   {"commutation", rep.commutation_defect},
                                   {"trace_vs_multiplicity", rep.trace_defect}}},
                  {"multiplicity", rep.multiplicity},
                  {"nodes_used", rep.nodes_used},
                  {"provenance",
                   Json{{"projector", "contour quadrature of R(lambda,T) around "
                                      "the selected clusters at tol"}}}});
  return 0;
}

int cmd_perturb(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  if (args.s_path.empty()) throw hc::PreconditionError("perturb needs --S");
  const hc::Matrix s = hc::matrix_from_json(hc::load_json_file(args.s_path));
  const hc::Calibration p = load_calibration(args, t.rows());
  const hc::HoloFun f = hc::parse_function(args.fun_spec);
  hc::Domain d = args.domain_path.empty()
                     ? hc::default_domain(hc::eigenvalues(t).eigenvalues, f, args.gap)
                     : hc::domain_from_json(hc::load_json_file(args.domain_path));
  hc::PerturbOptions opts;
  opts.gap = args.gap;
  opts.initial_nodes = args.nodes;
  const hc::PerturbationResult rep = hc::perturbation_series(p, t, s, f, d, args.tol, opts);
  emit(args, Json{{"command", "perturb"},
                  {"config", config_json(args)},
                  {"f", f.describe()},
                  {"domain", hc::domain_to_json(d)},
                  {"result", hc::matrix_to_json(rep.value)},
                  {"terms_used", rep.terms_used},
                  {"tail_estimate", rep.tail_estimate},
                  {"direct_deviation", rep.direct_deviation},
                  {"provenance",
                   Json{{"result", "sum of f^(n)(T) S^n / n! with f^(n)(T) by "
                                   "shared-contour quadrature; truncated when "
                                   "max_p phat(term) < tol"}}}});
  return 0;
}

int cmd_renorm(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  const hc::Calibration p = load_calibration(args, t.rows());
  if (args.mode == "lb1") {
    const hc::RenormedCalibration rn = hc::renorm_bounded(p, t, args.p0);
    emit(args, Json{{"command", "renorm"},
                    {"config", config_json(args)},
                    {"mode", "lb1"},
                    {"renormed", hc::renormed_to_json(rn)}});
    return 0;
  }
  if (args.mode == "gi2") {
    if (!(args.mu > 0.0)) throw hc::PreconditionError("renorm --mode gi2 needs --mu > 0");
    const hc::RenormedCalibration rn = hc::renorm_spectral(p, t, args.mu);
    emit(args, Json{{"command", "renorm"},
                    {"config", config_json(args)},
                    {"mode", "gi2"},
                    {"renormed", hc::renormed_to_json(rn)}});
    return 0;
  }
  throw hc::PreconditionError("renorm mode must be lb1 or gi2");
}

int cmd_classify(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  const hc::Calibration p = load_calibration(args, t.rows());
  const hc::SpectrumClassification cls = hc::classify_spectrum(p, t, args.tol);
  Json point = Json::array();
  for (const auto& pe : cls.point)
    point.push_back(Json{{"value", hc::complex_to_json(pe.value)},
                         {"algebraic_multiplicity", pe.algebraic_multiplicity},
                         {"geometric_multiplicity", pe.geometric_multiplicity},
                         {"witness", hc::cvector_to_json(pe.witness)},
                         {"residual", pe.residual}});
  Json approx = Json::array();
  for (const auto& w : cls.approximate)
    approx.push_back(Json{{"lambda", hc::complex_to_json(w.lambda)},
                          {"member", w.member},
                          {"ratio", w.ratio},
                          {"witness", hc::cvector_to_json(w.x)}});
  emit(args, Json{{"command", "classify"},
                  {"config", config_json(args)},
                  {"point", std::move(point)},
                  {"approximate", std::move(approx)},
                  {"continuous", Json::array()},
                  {"residual", Json::array()},
                  {"note", cls.finite_dimension_note},
                  {"probe_ladder", cls.probe_ladder}});
  return 0;
}

int cmd_intersect(const CommonArgs& args) {
  const hc::Matrix t = load_operator(args.t_path);
  const hc::Calibration p = load_calibration(args, t.rows());
  if (args.lambdas_path.empty())
    throw hc::PreconditionError("intersect needs --lambdas FILE");
  const hc::Vector lambdas = hc::cvector_from_json(hc::load_json_file(args.lambdas_path));
  const hc::IntersectionReport rep = hc::spectrum_intersection_check(p, t, lambdas);
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back(Json{{"lambda", hc::complex_to_json(e.lambda)},
                           {"witness_found", e.witness_found},
                           {"norm_T", e.norm_t},
                           {"norm_R", e.norm_r},
                           {"detail", e.detail}});
  emit(args, Json{{"command", "intersect"},
                  {"config", config_json(args)},
                  {"entries", std::move(entries)},
                  {"all_succeeded", rep.all_succeeded},
                  {"provenance",
                   Json{{"norms", "sampled operator bounds under the joint "
                                  "renormed calibration for (T, R(lambda,T))"}}}});
  return 0;
}

int cmd_verify(const CommonArgs& args) {
  std::vector<std::string> names = args.suite == "all"
                                       ? hc::suite_names()
                                       : std::vector<std::string>{args.suite};
  Json suites = Json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    const hc::SuiteReport rep = hc::run_suite(name, args.seed);
    Json checks = Json::array();
    for (const auto& c : rep.checks)
      checks.push_back(Json{{"name", c.name},
                            {"defect", c.defect},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass}});
    suites.push_back(Json{{"suite", rep.suite}, {"checks", std::move(checks)},
                          {"all_pass", rep.all_pass}});
    all_pass = all_pass && rep.all_pass;
  }
  emit(args, Json{{"command", "verify"},
                  {"config", config_json(args)},
                  {"suites", std::move(suites)},
                  {"all_pass", all_pass}});
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holocalc: seminorm-calibrated operator analysis and holomorphic "
               "functional calculus on dense complex matrices"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--T", args.t_path, "operator JSON file");
    cmd->add_option("--S", args.s_path, "second operator JSON file");
    cmd->add_option("--calib", args.calib_path,
                    "calibration JSON file (default: max norm)");
    cmd->add_option("--f", args.fun_spec,
                    "function spec: poly:c0,c1,... | exp[:s] | rat:NUM/DEN | "
                    "series:r=R:c0,... | compose:OUTER|INNER");
    cmd->add_option("--domain", args.domain_path, "domain JSON file");
    cmd->add_option("--set", args.set_spec, "cluster indices, e.g. 0,2");
    cmd->add_option("--mu", args.mu, "renorming scale");
    cmd->add_option("--nmax", args.n_max, "power depth for radius estimates");
    cmd->add_option("--tol", args.tol, "numeric tolerance");
    cmd->add_option("--gap", args.gap, "cluster gap for spectral sets");
    cmd->add_option("--nodes", args.nodes, "initial quadrature nodes per circle");
    cmd->add_option("--seed", args.seed, "deterministic seed");
    cmd->add_option("--out", args.out_path, "output path (default stdout)");
  };

  auto* radius = app.add_subcommand("radius", "spectral radius estimates");
  add_common(radius);
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues with residual contract");
  add_common(spectrum);
  auto* resolvent = app.add_subcommand("resolvent", "direct or Neumann resolvent");
  add_common(resolvent);
  resolvent->add_option("--lambda", args.lambda_spec, "shift, 're[,im]'");
  resolvent->add_option("--grid", args.grid_spec,
                        "CSV norm landscape over re0:re1:n,im0:im1:m");
  resolvent->add_option("--via", args.mode, "direct (default) or neumann")
      ->check(CLI::IsMember({"direct", "neumann"}));
  auto* funcalc = app.add_subcommand("funcalc", "f(T) by contour quadrature");
  add_common(funcalc);
  auto* project = app.add_subcommand("project", "Riesz spectral projection");
  add_common(project);
  auto* perturb = app.add_subcommand("perturb", "commuting perturbation series");
  add_common(perturb);
  auto* renorm = app.add_subcommand("renorm", "calibration renorming constructions");
  add_common(renorm);
  renorm->add_option("--mode", args.mode, "lb1 or gi2")
      ->check(CLI::IsMember({"lb1", "gi2"}));
  std::size_t p0_arg = 0;
  auto* p0_opt = renorm->add_option("--p0", p0_arg, "witness member index (lb1)");
  auto* classify = app.add_subcommand("classify", "spectrum classification");
  add_common(classify);
  auto* intersect = app.add_subcommand("intersect", "resolvent witnesses per lambda");
  add_common(intersect);
  intersect->add_option("--lambdas", args.lambdas_path, "JSON array of probe shifts");
  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  add_common(verify);
  verify->add_option("--suite", args.suite,
                     "calib|spectral|contour|funcalc|projections|perturb|renorm|all");

  // resolvent defaults to the direct route; renorm reuses --mode
  args.mode = "";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (radius->parsed()) return cmd_radius(args);
    if (spectrum->parsed()) return cmd_spectrum(args);
    if (resolvent->parsed()) {
      if (args.mode.empty()) args.mode = "direct";
      return cmd_resolvent(args);
    }
    if (funcalc->parsed()) return cmd_funcalc(args);
    if (project->parsed()) return cmd_project(args);
    if (perturb->parsed()) return cmd_perturb(args);
    if (renorm->parsed()) {
      if (args.mode.empty()) args.mode = "gi2";
      if (p0_opt->count() > 0) args.p0 = p0_arg;
      return cmd_renorm(args);
    }
    if (classify->parsed()) return cmd_classify(args);
    if (intersect->parsed()) return cmd_intersect(args);
    if (verify->parsed()) return cmd_verify(args);
  } catch (const hc::JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const hc::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const hc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
