#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>

#include "conekit/rng.hpp"
#include "conekit/serialization.hpp"

namespace ck = conekit;
using ck::json;

namespace {

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output path " + out_path);
    os << j.dump(2) << "\n";
  }
}

struct Common {
  std::string spec, out;
  std::uint64_t seed = 0;
  std::int64_t samples = 10000;
  double tol = 1e-10;
};

void add_common(CLI::App* cmd, Common& c, bool needs_spec) {
  auto* opt = cmd->add_option("--spec", c.spec, "input problem spec (JSON)");
  if (needs_spec) opt->required();
  cmd->add_option("--out", c.out, "output path (default: stdout)");
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--samples", c.samples, "sample count");
  cmd->add_option("--tol", c.tol, "tolerance override");
}

int run_cone_info(int k, int n, double tol, const Common& c) {
  const auto cone = ck::Cone::garding(k, n, tol);
  json j = ck::cone_to_json(cone);
  j["kappa"] = ck::kappa(cone);
  j["varrho"] = ck::varrho(cone);
  j["varrho_bisect"] = ck::varrho_bisect(cone);
  j["type"] = ck::cone_type(cone) == ck::ConeType::Type2 ? "Type2" : "Type1";
  emit(j, c.out);
  return 0;
}

int run_cone_transform(int k, int n, double rho, const Common& c) {
  const auto base = ck::Cone::garding(k, n, c.tol);
  const auto tc = ck::transform_cone(base, rho);
  json j = ck::cone_to_json(tc);
  j["kappa"] = ck::kappa(tc);
  j["varrho"] = ck::varrho(tc);
  j["type"] = ck::cone_type(tc) == ck::ConeType::Type2 ? "Type2" : "Type1";
  // orthant samples must stay inside the transformed cone
  std::int64_t inside = 0;
  const std::int64_t total = std::min<std::int64_t>(c.samples, 1000);
  for (std::int64_t s = 0; s < total; ++s) {
    ck::CounterRng rng(c.seed, static_cast<std::uint64_t>(s));
    std::vector<double> lam(static_cast<std::size_t>(n));
    for (auto& x : lam) x = std::exp(rng.uniform(-2.0, 2.0));
    if (ck::contains(tc, ck::map1_forward(lam, rho))) ++inside;
  }
  j["orthant_samples_inside"] = inside;
  j["orthant_samples_total"] = total;
  emit(j, c.out);
  return inside == total ? 0 : 2;
}

int run_op_audit(const ck::OperatorSpec& f, const Common& c) {
  const auto audit = ck::structural_audit(f, c.samples, c.seed);
  json j = ck::audit_to_json(audit);
  j["operator"] = ck::operator_to_json(f);
  emit(j, c.out);
  return audit.total_violations() == 0 ? 0 : 2;
}

int run_op_theta(int k, int n, const Common& c) {
  const auto cone = ck::Cone::garding(k, n, c.tol);
  const auto f = ck::OperatorSpec::sigma_k_root(k, n, c.tol);
  const double theta = ck::theta_lower_bound(cone, f);
  double min_ratio = 1.0;
  for (std::int64_t s = 0; s < c.samples; ++s) {
    const auto lam = ck::sample_cone_point(cone, c.seed, static_cast<std::uint64_t>(s));
    min_ratio = std::min(min_ratio, ck::pue_ratio(f, ck::Spectrum(lam)));
  }
  json j = {{"kappa", ck::kappa(cone)},
            {"theta_hat", theta},
            {"min_sampled_ratio", min_ratio},
            {"samples", c.samples}};
  emit(j, c.out);
  return min_ratio + 1e-12 >= theta && theta > 0.0 ? 0 : 2;
}

int run_eig_localize(double eps, bool refined, const Common& c) {
  const auto m = ck::bordered_from_json(ck::load_json_file(c.spec));
  const auto res = refined ? ck::localize_refined(m, eps) : ck::localize(m, eps);
  json j = ck::localization_to_json(res);
  j["eigenvalues"] = ck::bordered_eigenvalues(m);
  emit(j, c.out);
  return 0;
}

int run_eig_verify(int n, double eps, double margin, bool refined,
                   const Common& c) {
  const bool keep = !c.out.empty();
  const auto rep = ck::verify_against_eigensolver(n, eps, c.samples, c.seed,
                                                  margin, refined, keep);
  if (keep) {
    std::ofstream os(c.out);
    if (!os) throw std::runtime_error("cannot open output path " + c.out);
    os << "threshold,corner,worst_margin,violation\n";
    os.precision(17);
    for (const auto& r : rep.records)
      os << r.threshold << "," << r.corner << "," << r.worst_margin << ","
         << (r.violation ? 1 : 0) << "\n";
  }
  std::cout << ck::verify_report_to_json(rep).dump(2) << "\n";
  return rep.violations == 0 ? 0 : 2;
}

int run_curvature_reduce(const Common& c) {
  const json spec = ck::load_json_file(c.spec);
  json j;
  if (spec.contains("mixed")) {
    const auto& m = spec.at("mixed");
    ck::MixedRicciParams p{m.at("alpha").get<double>(), m.at("beta").get<double>(),
                           m.at("gamma").get<double>(), m.at("n").get<int>()};
    const auto cone = ck::cone_from_json(spec.at("cone"));
    j = ck::reduced_to_json(
        ck::reduce_mixed(p, cone, spec.value("varsigma", 1.0)));
  } else if (spec.contains("first_chern")) {
    const auto& m = spec.at("first_chern");
    j = ck::reduced_to_json(ck::reduce_first_chern(
        std::nullopt, m.at("n").get<int>(), m.value("varsigma", 1.0)));
  } else {
    throw std::runtime_error("curvature spec: expected 'mixed' or 'first_chern'");
  }
  emit(j, c.out);
  return 0;
}

int run_solve_radial(const Common& c) {
  const auto job = ck::radial_job_from_json(ck::load_json_file(c.spec));
  const std::string prefix = c.out.empty() ? "radial" : c.out;
  json report;
  if (job.exhaustion) {
    const auto res = ck::solve_radial_exhaustion(job.problem, job.k_list);
    std::ofstream os(prefix + ".csv");
    os.precision(17);
    os << "t";
    for (int k : res.k_list) os << ",phi_k" << k;
    os << "\n";
    for (int i = 0; i < job.problem.points; ++i) {
      os << job.problem.t_at(i);
      for (const auto& sol : res.solutions)
        os << "," << sol[static_cast<std::size_t>(i)];
      os << "\n";
    }
    report = {{"k_list", res.k_list},
              {"min_monotonicity", res.min_monotonicity},
              {"band_width", res.band_width},
              {"c0_estimate", res.c0_estimate},
              {"cauchy_sup", res.cauchy_sup}};
    json reps = json::array();
    for (const auto& r : res.reports) reps.push_back(ck::solve_report_to_json(r));
    report["reports"] = reps;
    const auto comp = ck::completeness_integral(job.problem, res.solutions.back(),
                                                res.collar_begin);
    report["completeness"] = {
        {"slope", comp.slope}, {"slope_ref", comp.slope_ref}, {"ratio", comp.ratio}};
  } else {
    const auto sol =
        ck::solve_radial_dirichlet(job.problem, job.phi_inner, job.phi_outer);
    std::ofstream os(prefix + ".csv");
    os.precision(17);
    os << "t,phi\n";
    for (int i = 0; i < job.problem.points; ++i)
      os << job.problem.t_at(i) << "," << sol.phi[static_cast<std::size_t>(i)] << "\n";
    report = ck::solve_report_to_json(sol.report);
  }
  std::ofstream rs(prefix + "_report.json");
  rs << report.dump(2) << "\n";
  std::cout << report.dump(2) << "\n";
  return 0;
}

int run_solve_torus(const Common& c) {
  const auto p = ck::torus_problem_from_json(ck::load_json_file(c.spec));
  const std::string prefix = c.out.empty() ? "torus" : c.out;
  const auto sol = ck::solve_torus(p);
  ck::write_field(prefix, p.grid, sol.u);
  const json report = ck::solve_report_to_json(sol.report);
  std::ofstream rs(prefix + "_report.json");
  rs << report.dump(2) << "\n";
  std::cout << report.dump(2) << "\n";
  return 0;
}

int run_report_convergence(const Common& c) {
  const json spec = ck::load_json_file(c.spec);
  const int n = spec.value("n", 2);
  const double lambda0 = spec.value("lambda0", 1.0);
  const double chi_c = spec.value("chi_const", 10.0);
  const auto grids = spec.value("grids", std::vector<int>{65, 129, 257});

  // manufactured profile phi*(t) = sin(pi t) + 2 with psi back-computed
  const double pi = 3.141592653589793;
  auto phi_star = [&](double t) { return std::sin(pi * t) + 2.0; };
  auto psi_of = [&](const ck::RadialProblem& p) {
    return [&, c1 = p.chi_const, nn = p.n, l0 = p.lambda0](double t) {
      const double d1 = pi * std::cos(pi * t);
      const double d2 = -pi * pi * std::sin(pi * t);
      const auto lam = ck::radial_eigenvalues(d1, d2, t, c1, nn);
      return ck::op_value(ck::OperatorSpec::sigma_k_root(nn, nn), lam) *
             std::exp(-l0 * phi_star(t));
    };
  };

  std::vector<double> errors;
  for (int m : grids) {
    ck::RadialProblem p;
    p.n = n;
    p.points = m;
    p.chi_const = chi_c;
    p.lambda0 = lambda0;
    p.op = ck::OperatorSpec::sigma_k_root(n, n);
    p.psi = psi_of(p);
    const auto sol = ck::solve_radial_dirichlet(p, phi_star(p.t0), phi_star(1.0));
    double err = 0.0;
    for (int i = 0; i < m; ++i)
      err = std::max(err, std::abs(sol.phi[static_cast<std::size_t>(i)] -
                                   phi_star(p.t_at(i))));
    errors.push_back(err);
  }
  json ratios = json::array();
  for (std::size_t i = 1; i < errors.size(); ++i)
    ratios.push_back(errors[i - 1] / errors[i]);
  json j = {{"grids", grids}, {"max_errors", errors}, {"ratios", ratios}};
  emit(j, c.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conekit: Garding-cone calculus, concave operator audits,\n"
               "bordered-Hermitian eigenvalue localization, and cone-admissible\n"
               "Newton solvers for curvature-type equations"};
  app.require_subcommand(1);

  Common c_info, c_tr, c_audit, c_theta, c_loc, c_ver, c_red, c_rad, c_tor, c_conv;
  double rho = 1.0, eps = 0.5, margin = 0.0;
  bool refined = false, refined_v = false;
  std::vector<int> sigma_args;

  auto* cone = app.add_subcommand("cone", "cone invariants and transforms");
  auto* cone_info = cone->add_subcommand("info", "kappa, varrho and type of a cone");
  cone_info->add_option("--garding", sigma_args, "degree k and dimension n")
      ->expected(2)->required();
  add_common(cone_info, c_info, false);

  auto* cone_tr = cone->add_subcommand("transform", "linear-image cone for a given rho");
  std::vector<int> tr_args;
  cone_tr->add_option("--garding", tr_args, "degree k and dimension n")
      ->expected(2)->required();
  cone_tr->add_option("--rho", rho, "transform parameter")->required();
  add_common(cone_tr, c_tr, false);

  auto* op = app.add_subcommand("op", "symmetric concave operator tools");
  auto* op_audit = op->add_subcommand("audit", "randomized structural audit");
  std::vector<int> audit_sigma, audit_quot;
  op_audit->add_option("--sigma-k", audit_sigma, "k n for sigma_k^{1/k}")->expected(2);
  op_audit->add_option("--quotient", audit_quot, "k l n for a Hessian quotient")->expected(3);
  add_common(op_audit, c_audit, false);

  auto* op_theta = op->add_subcommand("theta", "partial-uniform-ellipticity bound");
  std::vector<int> theta_args;
  op_theta->add_option("--garding", theta_args, "degree k and dimension n")
      ->expected(2)->required();
  add_common(op_theta, c_theta, false);

  auto* eig = app.add_subcommand("eig", "bordered-Hermitian eigenvalue localization");
  auto* eig_loc = eig->add_subcommand("localize", "intervals for one instance");
  eig_loc->add_option("--eps", eps, "localization radius")->required();
  eig_loc->add_flag("--refined", refined, "use the relaxed growth condition");
  add_common(eig_loc, c_loc, true);

  auto* eig_ver = eig->add_subcommand("verify", "randomized eigensolver check");
  int ver_n = 4;
  eig_ver->add_option("--n", ver_n, "matrix size")->required();
  eig_ver->add_option("--eps", eps, "localization radius")->required();
  eig_ver->add_option("--trials", c_ver.samples, "number of random instances");
  eig_ver->add_option("--margin", margin, "corner margin above the threshold");
  eig_ver->add_flag("--refined", refined_v, "use the relaxed growth condition");
  add_common(eig_ver, c_ver, false);

  auto* curv = app.add_subcommand("curvature", "curvature-problem reductions");
  auto* curv_red = curv->add_subcommand("reduce", "standard-form reduction");
  add_common(curv_red, c_red, true);

  auto* solve = app.add_subcommand("solve", "cone-admissible Newton solvers");
  auto* solve_rad = solve->add_subcommand("radial", "annulus problem");
  add_common(solve_rad, c_rad, true);
  auto* solve_tor = solve->add_subcommand("torus", "flat complex 2-torus problem");
  add_common(solve_tor, c_tor, true);

  auto* rep = app.add_subcommand("report", "verification reports");
  auto* rep_conv = rep->add_subcommand("convergence", "manufactured-solution order study");
  add_common(rep_conv, c_conv, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cone_info->parsed())
      return run_cone_info(sigma_args.at(0), sigma_args.at(1), c_info.tol, c_info);
    if (cone_tr->parsed())
      return run_cone_transform(tr_args.at(0), tr_args.at(1), rho, c_tr);
    if (op_audit->parsed()) {
      if (!audit_sigma.empty())
        return run_op_audit(ck::OperatorSpec::sigma_k_root(audit_sigma.at(0),
                                                           audit_sigma.at(1)),
                            c_audit);
      if (!audit_quot.empty())
        return run_op_audit(
            ck::OperatorSpec::hessian_quotient(audit_quot.at(0), audit_quot.at(1),
                                               audit_quot.at(2)),
            c_audit);
      if (!c_audit.spec.empty())
        return run_op_audit(
            ck::operator_from_json(ck::load_json_file(c_audit.spec)), c_audit);
      throw std::runtime_error("op audit: pass --sigma-k, --quotient or --spec");
    }
    if (op_theta->parsed())
      return run_op_theta(theta_args.at(0), theta_args.at(1), c_theta);
    if (eig_loc->parsed()) return run_eig_localize(eps, refined, c_loc);
    if (eig_ver->parsed())
      return run_eig_verify(ver_n, eps, margin, refined_v, c_ver);
    if (curv_red->parsed()) return run_curvature_reduce(c_red);
    if (solve_rad->parsed()) return run_solve_radial(c_rad);
    if (solve_tor->parsed()) return run_solve_torus(c_tor);
    if (rep_conv->parsed()) return run_report_convergence(c_conv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand handled\n";
  return 1;
}
