#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qdist/audit.hpp"
#include "qdist/error.hpp"
#include "qdist/families.hpp"
#include "qdist/fisher_rao.hpp"
#include "qdist/geodesy.hpp"
#include "qdist/hilbert_sphere.hpp"
#include "qdist/ho_param_manifold.hpp"
#include "qdist/json_io.hpp"
#include "qdist/qinfo_entropy.hpp"

using namespace qdist;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
  std::string format = "json";
  std::uint64_t seed = 7;
  std::optional<double> hbar, c, k_B, G;
  std::optional<double> abs_tol, rel_tol;
  std::optional<int> max_subdivisions, nodes;

  // gauss-distance
  std::vector<double> theta1, theta2;
  bool audit_flag = false;
  // fr-metric
  std::string family;
  std::vector<double> at;
  std::string form = "gradient";
  double k = 1.0;
  // ho-manifold
  int n_max = 0;
  // sphere-metric
  std::string system;
  std::string state_path;
  double t = 0.0;
  std::string mode = "eq4";
  double mass = 1.0;
  double omega = 1.0;
  // rel-entropy, thermal
  std::string rho_path, sigma_path, H_path, h_path;
  double beta = 1.0;
  double b = 1.0;
  // scalar field
  double volume = 1.0;
  double e1 = 0.0, e2 = 0.0;
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidInput, "cli", msg); }

Constants resolve_constants(const RunConfig& cfg) {
  Constants k = constants_from_env();
  if (cfg.hbar) k.hbar = *cfg.hbar;
  if (cfg.c) k.c = *cfg.c;
  if (cfg.k_B) k.k_B = *cfg.k_B;
  if (cfg.G) k.G = *cfg.G;
  return k;
}

QuadratureSpec resolve_spec(const RunConfig& cfg, QuadratureSpec spec) {
  if (cfg.abs_tol) spec.abs_tol = *cfg.abs_tol;
  if (cfg.rel_tol) spec.rel_tol = *cfg.rel_tol;
  if (cfg.max_subdivisions) spec.max_subdivisions = *cfg.max_subdivisions;
  if (cfg.nodes) spec.node_count = *cfg.nodes;
  spec.validate();
  return spec;
}

Vec to_vec(const std::vector<double>& v, std::size_t n, const std::string& flag) {
  if (v.size() != n) invalid(flag + " needs " + std::to_string(n) + " comma-separated values");
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) invalid(flag + " values must be finite");
    out[i] = v[i];
  }
  return out;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json signature_json(const Signature& s) { return {{"plus", s.n_plus}, {"minus", s.n_minus}, {"zero", s.n_zero}}; }

std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json header(const std::string& command) { return {{"schema", 1}, {"command", command}}; }

// ---- subcommands ----

json cmd_gauss_distance(const RunConfig& cfg) {
  const Vec a = to_vec(cfg.theta1, 2, "--theta1");
  const Vec b = to_vec(cfg.theta2, 2, "--theta2");
  gaussian_family().require_in_domain(a);
  gaussian_family().require_in_domain(b);
  const double quoted = gauss_geodesic_distance_paper(a, b);
  const ShootResult shot = shoot_distance(gaussian_fr_field(), a, b);
  json out = header("gauss-distance");
  out["theta1"] = vec_json(a);
  out["theta2"] = vec_json(b);
  out["paper_formula"] = quoted;
  out["shooting"] = shot.length;
  out["ratio"] = shot.length > 0.0 ? json(quoted / shot.length) : json(nullptr);
  out["exact"] = gauss_geodesic_distance_exact(a, b);
  out["endpoint_error"] = shot.endpoint_error;
  out["iterations"] = shot.iterations;
  if (cfg.audit_flag) {
    const double gap = std::abs(quoted - shot.length);
    const bool ok = gap <= 1e-6 * std::max(1.0, shot.length);
    out["audit"] = {{"check", "gauss-distance-formula"},
                    {"status", ok ? "PASS" : "NOTE"},
                    {"absolute_difference", gap}};
  }
  return out;
}

json cmd_fr_metric(const RunConfig& cfg, const Constants& k) {
  ParametricFamily fam;
  std::optional<MetricTensor> closed;
  int n = -1;
  if (cfg.family == "gauss") {
    fam = gaussian_family();
  } else if (cfg.family.rfind("ho:", 0) == 0) {
    try {
      std::size_t used = 0;
      n = std::stoi(cfg.family.substr(3), &used);
      if (used != cfg.family.size() - 3) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      invalid("--family ho:n needs an integer n");
    }
    if (n < 0) invalid("--family ho:n needs n >= 0");
    fam = ho_eigenstate_family(n, k);
  } else {
    invalid("--family must be gauss or ho:n");
  }
  const Vec at = to_vec(cfg.at, 2, "--at");
  fam.require_in_domain(at);
  if (!(cfg.k > 0.0) || !std::isfinite(cfg.k)) invalid("--k must be positive");
  const FisherForm form = cfg.form == "hessian" ? FisherForm::hessian : FisherForm::gradient;
  const MetricTensor g = fr_metric(fam, at, form, cfg.k, resolve_spec(cfg, QuadratureSpec{}));
  if (n < 0) {
    closed = gaussian_metric_closed(at, cfg.k);
  } else {
    MetricTensor c = ho_metric_closed(n, at[0], at[1]);
    c.components *= cfg.k * cfg.k;
    closed = c;
  }
  json out = header("fr-metric");
  out["family"] = cfg.family;
  out["parameters"] = fam.param_names;
  out["at"] = vec_json(at);
  out["form"] = cfg.form;
  out["k"] = cfg.k;
  out["metric"] = real_matrix_to_json(g.components);
  out["signature"] = signature_json(g.signature);
  out["closed_form"] = real_matrix_to_json(closed->components);
  out["max_abs_difference"] = (g.components - closed->components).cwiseAbs().maxCoeff();
  return out;
}

json cmd_ho_manifold(const RunConfig& cfg) {
  if (cfg.n_max < 0) invalid("--n-max must be >= 0");
  json rows = json::array();
  for (const SignatureRow& r : signature_report(cfg.n_max)) {
    rows.push_back({{"n", r.n},
                    {"a", to_double(r.a)},
                    {"a_exact", rational_string(r.a)},
                    {"eta", to_double(r.eta)},
                    {"eta_exact", rational_string(r.eta)},
                    {"signature", to_string(r.signature)}});
  }
  json out = header("ho-manifold");
  out["rows"] = rows;
  return out;
}

json cmd_sphere_metric(const RunConfig& cfg, const Constants& k) {
  if (!std::isfinite(cfg.t)) invalid("--t must be finite");
  EvolvedBasis basis;
  if (cfg.system == "ho") {
    basis = EvolvedBasis::oscillator(cfg.mass, cfg.omega, cfg.t, k);
  } else if (cfg.system == "free") {
    basis = EvolvedBasis::free_particle(cfg.mass, cfg.t, k);
  } else {
    invalid("--system must be free or ho");
  }
  const AmplitudeState state = state_from_json(read_json_file(cfg.state_path));
  const SphereMode mode = cfg.mode == "paper-diagonal" ? SphereMode::paper_diagonal : SphereMode::full;
  const SphereMetric g = sphere_metric(basis, state, mode, resolve_spec(cfg, basis.default_spec()));
  json out = header("sphere-metric");
  out["system"] = to_string(basis.system);
  out["mode"] = to_string(mode);
  out["t"] = cfg.t;
  out["state"] = state_to_json(state);
  out["g"] = matrix_to_json(g.g);
  if (g.has_g_bar()) out["g_bar"] = matrix_to_json(g.g_bar);
  out["abs_error"] = g.abs_error;
  return out;
}

DensityMatrix density_from_file(const std::string& path) {
  return DensityMatrix::from_matrix(matrix_from_json(read_json_file(path)));
}

json cmd_rel_entropy(const RunConfig& cfg) {
  const DensityMatrix rho = density_from_file(cfg.rho_path);
  const DensityMatrix sigma = density_from_file(cfg.sigma_path);
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "qinfo_entropy", "rho and sigma differ in dimension");
  const double s = relative_entropy(rho, sigma);
  json out = header("rel-entropy");
  out["s_rel"] = std::isinf(s) ? json("+inf") : json(s);
  out["finite"] = !std::isinf(s);
  out["entropy_rho"] = von_neumann_entropy(rho);
  out["entropy_sigma"] = von_neumann_entropy(sigma);
  return out;
}

json cmd_thermal(const RunConfig& cfg) {
  const CMat H = matrix_from_json(read_json_file(cfg.H_path));
  if (!(cfg.beta > 0.0) || !(cfg.b > 0.0)) invalid("--beta and --b must be positive");
  const ThermalModel sigma_model = ThermalModel::from_hamiltonian(H, cfg.beta);
  const GibbsSpectrum sigma = gibbs_spectrum(sigma_model);
  json out = header("thermal");
  out["beta"] = cfg.beta;
  out["b"] = cfg.b;
  out["energy_beta"] = sigma.energy;
  out["entropy_beta"] = sigma.entropy;
  out["log_z_beta"] = sigma.log_z;
  out["free_energy_beta"] = sigma.free_energy;
  if (cfg.h_path.empty()) {
    const ThermalModel rho_model = ThermalModel::from_hamiltonian(H, cfg.b);
    const GibbsSpectrum rho = gibbs_spectrum(rho_model);
    out["energy_b"] = rho.energy;
    out["entropy_b"] = rho.entropy;
    out["s_rel"] = two_thermal_relative_entropy(sigma.energies, cfg.b, cfg.beta);
    out["s_rel_trace"] = relative_entropy(gibbs_state(rho_model), gibbs_state(sigma_model));
    out["s_rel_free_energy"] = thermal_relative_entropy(gibbs_state(rho_model), sigma_model);
  } else {
    const CMat h = matrix_from_json(read_json_file(cfg.h_path));
    if (h.rows() != H.rows()) throw Error(ErrorKind::DimensionMismatch, "qinfo_entropy", "H and h differ in dimension");
    out["s_rel"] = mixed_thermal_relative_entropy_expanded(H, h, cfg.beta, cfg.b);
    out["s_rel_trace"] = mixed_thermal_relative_entropy(H, h, cfg.beta, cfg.b);
  }
  return out;
}

json cmd_scalar_field(const RunConfig& cfg, const Constants& k) {
  const double C = scalar_field_coefficient(cfg.volume, k);
  const double delta = cfg.beta - cfg.b;
  json out = header("scalar-field");
  out["V"] = cfg.volume;
  out["b"] = cfg.b;
  out["beta"] = cfg.beta;
  out["s_rel"] = scalar_field_rel_entropy(cfg.volume, cfg.b, cfg.beta, k);
  out["small_delta"] = 6.0 * C * delta * delta / std::pow(cfg.b, 5);
  out["C"] = C;
  out["A"] = scalar_field_metric_a(cfg.volume, k);
  out["entropy_b"] = scalar_field_entropy(cfg.volume, cfg.b, k);
  out["entropy_beta"] = scalar_field_entropy(cfg.volume, cfg.beta, k);
  out["energy_b"] = scalar_field_energy(cfg.volume, cfg.b, k);
  out["energy_beta"] = scalar_field_energy(cfg.volume, cfg.beta, k);
  return out;
}

json cmd_scalar_field_distance(const RunConfig& cfg, const Constants& k) {
  const double closed = scalar_field_distance(cfg.e1, cfg.e2, cfg.volume, k);
  const QuadResult<double> num = scalar_field_distance_numeric(cfg.e1, cfg.e2, cfg.volume, k,
                                                               resolve_spec(cfg, QuadratureSpec{}));
  json out = header("scalar-field-distance");
  out["e1"] = cfg.e1;
  out["e2"] = cfg.e2;
  out["V"] = cfg.volume;
  out["distance"] = closed;
  out["numeric"] = num.value;
  out["abs_error"] = num.abs_error;
  return out;
}

json cmd_audit(const RunConfig& cfg) {
  const std::vector<AuditEntry> entries = run_audit(cfg.seed);
  json rows = json::array();
  for (const AuditEntry& e : entries) {
    rows.push_back({{"check", e.check},
                    {"kind", to_string(e.kind)},
                    {"status", to_string(e.status)},
                    {"implementation", e.implementation},
                    {"oracle", e.oracle},
                    {"description", e.description},
                    {"detail", e.detail}});
  }
  const AuditSummary s = summarize(entries);
  json out = header("audit");
  out["rows"] = rows;
  out["summary"] = {{"pass", s.pass},
                    {"note", s.note},
                    {"discrepancy", s.discrepancy},
                    {"self_consistency_discrepancy", s.self_consistency_discrepancy}};
  return out;
}

// ---- output ----

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_cell(const json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return s;
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) flatten(child, prefix.empty() ? key : prefix + "." + key, out);
  } else if (v.is_array() && !v.empty() && (v.front().is_array() || v.front().is_object())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, v);
  }
}

std::vector<std::string> row_keys(const json& rows) {
  std::vector<std::string> keys;
  for (const auto& [key, _] : rows.front().items()) keys.push_back(key);
  return keys;
}

void write_csv(const json& report, std::ostream& os) {
  if (report.contains("rows") && !report["rows"].empty()) {
    const json& rows = report["rows"];
    const auto keys = row_keys(rows);
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
    os << "\n";
    for (const json& r : rows) {
      for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << csv_cell(r.at(keys[i]));
      os << "\n";
    }
    return;
  }
  std::vector<std::pair<std::string, json>> flat;
  flatten(report, "", flat);
  os << "key,value\n";
  for (const auto& [k, v] : flat) os << csv_cell(k) << "," << csv_cell(v) << "\n";
}

void write_pretty(const json& report, std::ostream& os) {
  if (report.contains("rows") && !report["rows"].empty()) {
    const json& rows = report["rows"];
    const auto keys = row_keys(rows);
    std::vector<std::size_t> width(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      width[i] = keys[i].size();
      for (const json& r : rows) width[i] = std::max(width[i], scalar_text(r.at(keys[i])).size());
    }
    for (std::size_t i = 0; i < keys.size(); ++i) os << std::left << std::setw(width[i] + 2) << keys[i];
    os << "\n";
    for (const json& r : rows) {
      for (std::size_t i = 0; i < keys.size(); ++i) os << std::left << std::setw(width[i] + 2) << scalar_text(r.at(keys[i]));
      os << "\n";
    }
    json rest = report;
    rest.erase("rows");
    std::vector<std::pair<std::string, json>> flat;
    flatten(rest, "", flat);
    for (const auto& [k, v] : flat) os << k << ": " << scalar_text(v) << "\n";
    return;
  }
  std::vector<std::pair<std::string, json>> flat;
  flatten(report, "", flat);
  for (const auto& [k, v] : flat) os << k << ": " << scalar_text(v) << "\n";
}

void emit(const json& report, const std::string& format) {
  if (format == "csv") {
    write_csv(report, std::cout);
  } else if (format == "pretty") {
    write_pretty(report, std::cout);
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

void emit_error(const json& err) { std::cerr << err.dump() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-geometric distances between probability densities and quantum states"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--seed", cfg.seed, "Seed for the randomized audit checks");
  app.add_option("--hbar", cfg.hbar, "Override hbar")->check(CLI::PositiveNumber);
  app.add_option("--c", cfg.c, "Override the speed of light")->check(CLI::PositiveNumber);
  app.add_option("--k-B", cfg.k_B, "Override Boltzmann's constant")->check(CLI::PositiveNumber);
  app.add_option("--G", cfg.G, "Override Newton's constant")->check(CLI::PositiveNumber);
  app.add_option("--abs-tol", cfg.abs_tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--rel-tol", cfg.rel_tol, "Quadrature relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-subdivisions", cfg.max_subdivisions, "Adaptive quadrature subdivision budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--nodes", cfg.nodes, "Gauss-Hermite node count")->check(CLI::PositiveNumber);

  auto* gd = app.add_subcommand("gauss-distance", "Gaussian geodesic distance: closed form and shooting");
  gd->add_option("--theta1", cfg.theta1, "sigma,mean")->required()->delimiter(',');
  gd->add_option("--theta2", cfg.theta2, "sigma,mean")->required()->delimiter(',');
  gd->add_flag("--audit", cfg.audit_flag, "Classify the closed form against shooting");

  auto* fr = app.add_subcommand("fr-metric", "Fisher-Rao metric by quadrature");
  fr->add_option("--family", cfg.family, "gauss or ho:n")->required();
  fr->add_option("--at", cfg.at, "Parameter point, comma separated")->required()->delimiter(',');
  fr->add_option("--form", cfg.form, "Integral form")->check(CLI::IsMember({"gradient", "hessian"}));
  fr->add_option("--k", cfg.k, "Metric scale");

  auto* ho = app.add_subcommand("ho-manifold", "Oscillator parameter-manifold signature table");
  ho->add_option("--n-max", cfg.n_max, "Largest level")->required()->check(CLI::Range(0, 1000));

  auto* sm = app.add_subcommand("sphere-metric", "Metric on the amplitude sphere");
  sm->add_option("--system", cfg.system, "free or ho")->required()->check(CLI::IsMember({"free", "ho"}));
  sm->add_option("--state", cfg.state_path, "Amplitude state JSON")->required()->check(CLI::ExistingFile);
  sm->add_option("--t", cfg.t, "Time")->required();
  sm->add_option("--mode", cfg.mode, "eq4 (full) or paper-diagonal")
      ->check(CLI::IsMember({"eq4", "paper-diagonal"}));
  sm->add_option("--m", cfg.mass, "Mass")->check(CLI::PositiveNumber);
  sm->add_option("--omega", cfg.omega, "Oscillator frequency")->check(CLI::PositiveNumber);

  auto* re = app.add_subcommand("rel-entropy", "Quantum relative entropy S(rho || sigma)");
  re->add_option("--rho", cfg.rho_path, "Density matrix JSON")->required()->check(CLI::ExistingFile);
  re->add_option("--sigma", cfg.sigma_path, "Density matrix JSON")->required()->check(CLI::ExistingFile);

  auto* th = app.add_subcommand("thermal", "Relative entropy between Gibbs states");
  th->add_option("--H", cfg.H_path, "Hamiltonian JSON")->required()->check(CLI::ExistingFile);
  th->add_option("--rho-H", cfg.h_path, "Hamiltonian JSON for rho when it differs from H")->check(CLI::ExistingFile);
  th->add_option("--beta", cfg.beta, "Inverse temperature of sigma")->required()->check(CLI::PositiveNumber);
  th->add_option("--b", cfg.b, "Inverse temperature of rho")->required()->check(CLI::PositiveNumber);

  auto* sf = app.add_subcommand("scalar-field", "Thermal scalar-field relative entropy");
  sf->add_option("--V", cfg.volume, "Volume")->required()->check(CLI::PositiveNumber);
  sf->add_option("--b", cfg.b, "Inverse temperature of rho")->required()->check(CLI::PositiveNumber);
  sf->add_option("--beta", cfg.beta, "Inverse temperature of sigma")->required()->check(CLI::PositiveNumber);

  auto* sd = app.add_subcommand("scalar-field-distance", "Thermal scalar-field distance between energies");
  sd->add_option("--e1", cfg.e1, "First energy")->required()->check(CLI::PositiveNumber);
  sd->add_option("--e2", cfg.e2, "Second energy")->required()->check(CLI::PositiveNumber);
  sd->add_option("--V", cfg.volume, "Volume")->check(CLI::PositiveNumber);

  auto* au = app.add_subcommand("audit", "Compare closed forms and quoted values against independent oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error({{"error", "InvalidInput"}, {"module", "cli"}, {"message", e.what()}, {"category", "validation"}});
    return kExitValidation;
  }

  try {
    const Constants k = resolve_constants(cfg);
    json report;
    if (*gd) {
      report = cmd_gauss_distance(cfg);
    } else if (*fr) {
      report = cmd_fr_metric(cfg, k);
    } else if (*ho) {
      report = cmd_ho_manifold(cfg);
    } else if (*sm) {
      report = cmd_sphere_metric(cfg, k);
    } else if (*re) {
      report = cmd_rel_entropy(cfg);
    } else if (*th) {
      report = cmd_thermal(cfg);
    } else if (*sf) {
      report = cmd_scalar_field(cfg, k);
    } else if (*sd) {
      report = cmd_scalar_field_distance(cfg, k);
    } else if (*au) {
      report = cmd_audit(cfg);
    }
    emit(report, cfg.format);
    if (*au && report["summary"]["self_consistency_discrepancy"].get<int>() > 0) return kExitAuditFailed;
    return kExitOk;
  } catch (const Error& e) {
    emit_error(error_to_json(e));
    return is_numerical(e.kind()) ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    emit_error({{"error", "Internal"}, {"module", "cli"}, {"message", e.what()}, {"category", "numerical"}});
    return kExitNumerical;
  }
}
