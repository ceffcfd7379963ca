#include "conekit/serialization.hpp"

#include <cmath>
#include <fstream>

namespace conekit {

json cone_to_json(const Cone& c) {
  json j;
  if (c.is_garding()) {
    j["garding"] = {{"k", c.degree()}, {"n", c.dim()}};
  } else {
    j["linear_image"] = {{"base", cone_to_json(c.base())}, {"rho", c.rho()}};
  }
  j["tol"] = c.tol();
  return j;
}

Cone cone_from_json(const json& j) {
  const double tol = j.value("tol", 1e-10);
  if (j.contains("garding")) {
    const auto& g = j.at("garding");
    return Cone::garding(g.at("k").get<int>(), g.at("n").get<int>(), tol);
  }
  if (j.contains("linear_image")) {
    const auto& li = j.at("linear_image");
    return Cone::linear_image(cone_from_json(li.at("base")),
                              li.at("rho").get<double>());
  }
  throw std::invalid_argument("cone_from_json: expected 'garding' or 'linear_image'");
}

json operator_to_json(const OperatorSpec& f) {
  switch (f.kind()) {
    case OperatorSpec::Kind::SigmaKRoot:
      return {{"sigma_k_root", {{"k", f.k()}, {"n", f.dim()}}}};
    case OperatorSpec::Kind::HessianQuotient:
      return {{"hessian_quotient", {{"k", f.k()}, {"l", f.l()}, {"n", f.dim()}}}};
    case OperatorSpec::Kind::Induced:
      return {{"induced", {{"base", operator_to_json(f.base())}, {"rho", f.rho()}}}};
    case OperatorSpec::Kind::Scaled:
      return {{"scaled",
               {{"base", operator_to_json(f.base())},
                {"varsigma", f.varsigma() / f.base().varsigma()}}}};
  }
  throw std::logic_error("operator_to_json: unreachable");
}

OperatorSpec operator_from_json(const json& j) {
  if (j.contains("sigma_k_root")) {
    const auto& s = j.at("sigma_k_root");
    return OperatorSpec::sigma_k_root(s.at("k").get<int>(), s.at("n").get<int>());
  }
  if (j.contains("hessian_quotient")) {
    const auto& s = j.at("hessian_quotient");
    return OperatorSpec::hessian_quotient(s.at("k").get<int>(), s.at("l").get<int>(),
                                          s.at("n").get<int>());
  }
  if (j.contains("induced")) {
    const auto& s = j.at("induced");
    return OperatorSpec::induced(operator_from_json(s.at("base")),
                                 s.at("rho").get<double>());
  }
  if (j.contains("scaled")) {
    const auto& s = j.at("scaled");
    return OperatorSpec::scaled(operator_from_json(s.at("base")),
                                s.at("varsigma").get<double>());
  }
  throw std::invalid_argument("operator_from_json: unknown operator kind");
}

json audit_to_json(const StructuralAudit& a) {
  return {{"samples", a.samples},
          {"positivity_violations", a.positivity_violations},
          {"homogeneity_violations", a.homogeneity_violations},
          {"gradient_positivity_violations", a.gradient_positivity_violations},
          {"concavity_midpoint_violations", a.concavity_midpoint_violations},
          {"concavity_gradient_violations", a.concavity_gradient_violations},
          {"pairing_positivity_violations", a.pairing_positivity_violations},
          {"euler_violations", a.euler_violations},
          {"trace_bound_violations", a.trace_bound_violations},
          {"total_violations", a.total_violations()},
          {"min_growth_exponent", a.min_growth_exponent},
          {"worst_concavity_slack", a.worst_concavity_slack},
          {"worst_trace_slack", a.worst_trace_slack}};
}

json ellipticity_to_json(const EllipticityReport& r) {
  return {{"theta_hat", r.theta_hat},     {"min_ratio", r.min_ratio},
          {"sum_positive", r.sum_positive}, {"monotone", r.monotone},
          {"uniform", r.uniform},           {"samples", r.samples},
          {"worst_sum_identity", r.worst_sum_identity}};
}

json solve_report_to_json(const SolveReport& r) {
  return {{"converged", r.converged},
          {"iterations", r.iterations},
          {"final_residual", r.final_residual},
          {"min_cone_margin", r.min_cone_margin},
          {"min_trace_slack", r.min_trace_slack},
          {"damping_history", r.damping_history},
          {"note", r.note}};
}

json verify_report_to_json(const VerifyReport& r) {
  return {{"trials", r.trials},
          {"satisfied", r.satisfied},
          {"violations", r.violations},
          {"worst_margin", r.worst_margin}};
}

json localization_to_json(const LocalizationResult& r) {
  json intervals = json::array();
  for (const auto& iv : r.alpha_intervals)
    intervals.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
  return {{"satisfied", r.satisfied},
          {"refined", r.refined},
          {"eps", r.eps},
          {"threshold", r.threshold},
          {"alpha_intervals", intervals},
          {"top_interval", {{"lo", r.top_interval.lo}, {"hi", r.top_interval.hi}}},
          {"permutation", r.permutation}};
}

json reduced_to_json(const ReducedProblem& r) {
  const char* regime = r.regime == Regime::UniformlyElliptic ? "uniformly_elliptic"
                       : r.regime == Regime::Limiting        ? "limiting"
                                                             : "inadmissible";
  return {{"form", r.form == ReducedProblem::Form::Hessian ? "hessian"
                                                           : "laplacian_hessian"},
          {"rho", r.rho},
          {"exponent_shift", r.exponent_shift},
          {"lambda0", r.lambda0},
          {"regime", regime},
          {"has_chi_shift", r.chi_shift.has_value()}};
}

BorderedHermitian bordered_from_json(const json& j) {
  BorderedHermitian m;
  m.d = j.at("d").get<std::vector<double>>();
  for (const auto& z : j.at("a")) {
    if (z.is_array())
      m.a.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    else
      m.a.emplace_back(z.get<double>(), 0.0);
  }
  m.corner = j.at("corner").get<double>();
  if (m.a.size() != m.d.size())
    throw std::invalid_argument("bordered_from_json: d and a lengths differ");
  return m;
}

namespace {

std::function<double(double)> radial_psi_from_json(const json& j, int points,
                                                   double t0) {
  if (j.contains("constant")) {
    const double v = j.at("constant").get<double>();
    return [v](double) { return v; };
  }
  if (j.contains("values")) {
    auto vals = j.at("values").get<std::vector<double>>();
    if (static_cast<int>(vals.size()) != points)
      throw std::invalid_argument("radial psi: values length must equal points");
    const double h = (1.0 - t0) / (points - 1);
    return [vals, t0, h](double t) {
      const double x = (t - t0) / h;
      const int i = std::clamp(static_cast<int>(std::lround(x)), 0,
                               static_cast<int>(vals.size()) - 1);
      return vals[static_cast<std::size_t>(i)];
    };
  }
  throw std::invalid_argument("radial psi: expected 'constant' or 'values'");
}

}  // namespace

RadialJob radial_job_from_json(const json& j) {
  RadialJob job;
  RadialProblem& p = job.problem;
  p.n = j.at("n").get<int>();
  p.t0 = j.value("t0", 0.04);
  p.points = j.at("points").get<int>();
  if (p.points < 3) throw std::invalid_argument("radial job: need at least 3 points");
  p.chi_const = j.value("chi_const", 1.0);
  p.lambda0 = j.value("lambda0", 1.0);
  if (!(p.lambda0 > 0.0))
    throw std::invalid_argument("radial job: lambda0 must be positive");
  p.op = operator_from_json(j.at("operator"));
  if (p.op.dim() != p.n)
    throw std::invalid_argument("radial job: operator dimension mismatch");
  p.psi = radial_psi_from_json(j.at("psi"), p.points, p.t0);

  const auto& b = j.at("boundary");
  if (b.contains("dirichlet")) {
    job.phi_inner = b.at("dirichlet").at("inner").get<double>();
    job.phi_outer = b.at("dirichlet").at("outer").get<double>();
  } else if (b.contains("exhaustion")) {
    job.exhaustion = true;
    job.k_list = b.at("exhaustion").at("k_list").get<std::vector<int>>();
  } else {
    throw std::invalid_argument("radial job: unknown boundary mode");
  }
  return job;
}

TorusProblem torus_problem_from_json(const json& j) {
  const int N = j.at("N").get<int>();
  TorusProblem p{Grid4(N), HermitianField2(), Field(), j.value("lambda0", 1.0),
                 operator_from_json(j.at("operator"))};
  const std::size_t np = p.grid.size();

  const auto& chi = j.at("chi");
  p.chi = HermitianField2(np);
  if (chi.contains("constant")) {
    const auto& c = chi.at("constant");
    const double h11 = c.at("h11").get<double>();
    const double h22 = c.at("h22").get<double>();
    const double re12 = c.value("re12", 0.0);
    const double im12 = c.value("im12", 0.0);
    for (std::size_t q = 0; q < np; ++q) {
      p.chi.h11[q] = h11;
      p.chi.h22[q] = h22;
      p.chi.re12[q] = re12;
      p.chi.im12[q] = im12;
    }
  } else {
    throw std::invalid_argument("torus chi: expected 'constant'");
  }

  const auto& psi = j.at("psi");
  p.psi.assign(np, 0.0);
  if (psi.contains("constant")) {
    const double v = psi.at("constant").get<double>();
    for (auto& x : p.psi) x = v;
  } else if (psi.contains("harmonic")) {
    const double base = psi.at("harmonic").at("base").get<double>();
    const double amp = psi.at("harmonic").at("amp").get<double>();
    const double two_pi = 6.283185307179586;
    std::size_t q = 0;
    for (int i = 0; i < N; ++i)
      for (int jj = 0; jj < N; ++jj)
        for (int k = 0; k < N; ++k)
          for (int l = 0; l < N; ++l, ++q)
            p.psi[q] = base + amp * std::sin(two_pi * i * p.grid.h) *
                                  std::cos(two_pi * l * p.grid.h);
  } else {
    throw std::invalid_argument("torus psi: expected 'constant' or 'harmonic'");
  }
  for (double v : p.psi)
    if (!(v > 0.0)) throw std::invalid_argument("torus psi must be positive");
  return p;
}

void write_field(const std::string& prefix, const Grid4& g, const Field& f) {
  json header = {{"N", g.N},
                 {"h", g.h},
                 {"dtype", "float64"},
                 {"count", f.size()},
                 {"order", "row-major over (x1,y1,x2,y2)"}};
  std::ofstream hs(prefix + ".json");
  hs << header.dump(2) << "\n";
  std::ofstream bs(prefix + ".bin", std::ios::binary);
  bs.write(reinterpret_cast<const char*>(f.data()),
           static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!bs) throw std::runtime_error("write_field: failed to write " + prefix + ".bin");
}

Field read_field(const std::string& prefix, Grid4& g) {
  const json header = load_json_file(prefix + ".json");
  g = Grid4(header.at("N").get<int>());
  Field f(header.at("count").get<std::size_t>());
  std::ifstream bs(prefix + ".bin", std::ios::binary);
  bs.read(reinterpret_cast<char*>(f.data()),
          static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!bs) throw std::runtime_error("read_field: failed to read " + prefix + ".bin");
  return f;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace conekit
