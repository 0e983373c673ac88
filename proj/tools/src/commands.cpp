#include "gramframe_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "gramframe/error.hpp"
#include "gramframe/fields.hpp"
#include "gramframe/frames.hpp"
#include "gramframe/gramian.hpp"
#include "gramframe/random.hpp"
#include "gramframe/rkhs.hpp"
#include "gramframe/spectral.hpp"
#include "gramframe_cli/output.hpp"

namespace gramframe::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Collects verdicts; the command passes iff all of them hold.
struct Verdicts {
  json items = json::object();
  void add(const std::string& name, bool ok) { items[name] = ok; }
  bool all() const {
    return std::all_of(items.begin(), items.end(), [](const json& v) { return v.get<bool>(); });
  }
};

json to_json(const PsdReport& r) {
  return {{"min_eigenvalue", r.min_eigenvalue},
          {"max_eigenvalue", r.max_eigenvalue},
          {"tol", r.tol},
          {"is_psd", r.is_psd},
          {"note", r.note}};
}

json to_json(const std::optional<AttainedBounds>& a) {
  if (!a) return nullptr;
  return {{"min", a->min}, {"max", a->max}};
}

json to_json(const FrameBand& band) {
  return {{"a", band.a},
          {"b", band.b},
          {"dimension", band.dimension()},
          {"eigenvalues", band.eigenvalues},
          {"attained", to_json(band.attained)},
          {"endpoint_slack", band.endpoint_slack},
          {"endpoint_sensitive", band.endpoint_sensitive},
          {"rank_cutoff", band.rank_cutoff},
          {"selected", band.selected}};
}

Vector normal_vector(std::size_t n, std::uint64_t seed) {
  NormalSampler normal(seed);
  Vector v(n);
  for (auto& x : v) x = normal();
  return v;
}

std::vector<Vector> indexed_rows(const Vector& v) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < v.size(); ++i) rows.push_back({static_cast<double>(i), v[i]});
  return rows;
}

Matrix columns_to_rows(const std::vector<Vector>& cols) {
  if (cols.empty()) return Matrix();
  Matrix m(cols.size(), cols.front().size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t i = 0; i < cols[k].size(); ++i) m(k, i) = cols[k][i];
  return m;
}

void cmd_gramian(const RunConfig& c, const fs::path& out, json& res, Verdicts& v) {
  const VectorSystem& sys = *c.system;
  const Gramian g = build_gramian(sys, c.truncation);
  write_csv(out / "gramian.csv", g.matrix.matrix());
  res["truncation"] = g.N;
  res["system_id"] = g.system_id;
  res["row_l2_norms"] = g.row_l2;

  json rows = json::array();
  const std::vector<std::size_t> levels{g.N, 2 * g.N, 4 * g.N};
  for (std::size_t i = 0; i < std::min<std::size_t>(g.N, 8); ++i) {
    const auto d = check_row_l2(sys, i, levels, c.tolerances.cauchy_rel_tol);
    rows.push_back({{"row", d.row},
                    {"truncations", d.truncations},
                    {"partial_sums", d.partial_sums},
                    {"cauchy_flag", d.cauchy_flag}});
  }
  res["row_l2_diagnostics"] = rows;

  const PsdReport psd = check_psd(g, c.tolerances.psd_tol);
  res["psd"] = to_json(psd);
  v.add("psd", psd.is_psd);

  if (g.N >= 3) {
    const auto cr = check_carleman(g);
    res["carleman"] = {{"b_values", cr.b_values},
                       {"partial_sums", cr.partial_sums},
                       {"excluded_rows", cr.excluded_rows},
                       {"tail_growth", cr.tail_growth},
                       {"threshold", cr.threshold},
                       {"verdict", to_string(cr.verdict)},
                       {"is_proof", cr.is_proof}};
  } else {
    res["carleman"] = nullptr;
  }
}

void cmd_spectrum(const RunConfig& c, const fs::path& out, json& res, Verdicts& v) {
  const Gramian g = build_gramian(*c.system, c.truncation);
  const auto d = eig_sym(g.matrix);
  write_csv(out / "eigenvalues.csv", {"index", "eigenvalue"}, indexed_rows(d.eigenvalues));
  const double op = operator_norm(d);
  const double power = power_iteration_norm(g.matrix);
  res["truncation"] = g.N;
  res["eigenvalues"] = d.eigenvalues;
  res["operator_norm"] = op;
  res["power_iteration_norm"] = power;
  res["sweeps"] = d.sweeps;
  res["off_diagonal_residual"] = d.off_diagonal_residual;
  res["orthogonality_error"] = d.ortho_error;
  v.add("power_iteration_agrees", std::abs(op - power) <= c.tolerances.verify_tol * std::max(1.0, op));
}

void cmd_band(const RunConfig& c, const fs::path& out, json& res, Verdicts& v) {
  const VectorSystem& sys = *c.system;
  const Gramian g = build_gramian(sys, c.truncation);
  const auto [a, b] = *c.band;
  const FrameBand band = band_extract(g, a, b, {c.tolerances.rank_tol, c.tolerances.band_eps});
  write_csv(out / "band_onb.csv", columns_to_rows(band.onb));
  const auto fb = verify_frame_bounds(sys, g, band, c.trials, c.seed, c.tolerances.verify_tol);
  const auto mx = maximality_check(g, band, c.tolerances.verify_tol);
  res["band"] = to_json(band);
  res["frame_bounds"] = {{"trials_run", fb.trials_run},
                         {"min_quotient", fb.min_quotient},
                         {"max_quotient", fb.max_quotient},
                         {"basis_quotients", fb.basis_quotients},
                         {"attained", to_json(fb.attained)},
                         {"violations", fb.violations},
                         {"tol", fb.tol}};
  json excluded = json::array();
  for (const auto& e : mx.excluded)
    excluded.push_back(
        {{"index", e.index}, {"eigenvalue", e.eigenvalue}, {"quotient", e.quotient}, {"violates", e.violates}});
  res["maximality"] = {{"excluded", excluded}, {"null_directions", mx.null_directions}, {"tol", mx.tol}};
  v.add("frame_bounds", fb.pass);
  v.add("maximality", mx.confirmed);
}

void cmd_parseval(const RunConfig& c, const fs::path& out, json& res, Verdicts& v) {
  const VectorSystem& sys = *c.system;
  const Gramian g = build_gramian(sys, c.truncation);
  const auto p = parseval_frame(sys, g, {c.tolerances.rank_tol, 1e-10});
  write_csv(out / "parseval_coefficients.csv", p.coefficients);
  if (p.ambient) write_csv(out / "parseval_ambient.csv", *p.ambient);
  double lo = INFINITY, hi = -INFINITY, dev = 0.0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const SpanVector f = random_span_vector(sys, g, derive_seed(c.seed, t));
    double s = 0.0;
    for (double x : parseval_analysis(p, sys, g, f)) s += x * x;
    const double q = s / norm_squared(g, sys, f);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    dev = std::max(dev, std::abs(q - 1.0));
  }
  res["rank"] = p.rank;
  res["lower_bound"] = p.lower_bound;
  res["upper_bound"] = p.upper_bound;
  res["trials"] = c.trials;
  res["min_quotient"] = lo;
  res["max_quotient"] = hi;
  res["max_deviation"] = dev;
  v.add("parseval_identity", dev <= c.tolerances.verify_tol);
}

void cmd_isometry(const RunConfig& c, const fs::path&, json& res, Verdicts& v) {
  const Gramian g = build_gramian(*c.system, c.truncation);
  const auto r = polar_isometry_check(g, *c.system, c.trials, c.seed, c.tolerances.verify_tol, c.tolerances.rank_tol);
  res["samples"] = r.samples;
  res["max_deviation"] = r.max_deviation;
  res["min_analysis_quotient"] = r.min_analysis_quotient;
  res["min_retained_eigenvalue"] = r.min_retained_eigenvalue;
  res["kernel_trivial"] = r.kernel_trivial;
  res["tol"] = r.tol;
  v.add("isometry", r.max_deviation <= r.tol);
  v.add("kernel_trivial", r.kernel_trivial);
}

json reproducing_json(const ReproducingReport& r) {
  return {{"max_residual", r.max_residual},
          {"f_norm", r.f_norm},
          {"tol", r.tol},
          {"condition_number", r.condition_number},
          {"pass", r.pass}};
}

void cmd_rkhs(const RunConfig& c, const fs::path& out, json& res, Verdicts& v) {
  const RkhsKernel k(*c.system, c.truncation, c.tolerances.rank_tol);
  const Vector pts = domain_points(k.system(), c.points);
  const SymMatrix km = kernel_matrix(k, pts);
  write_csv(out / "kernel.csv", km.matrix());
  const auto kspec = eig_sym(km);
  const double kmin = kspec.eigenvalues.front();
  const double kmax = kspec.max_abs_eigenvalue();

  const Vector xi = normal_vector(c.truncation, derive_seed(c.seed, 0));
  const auto r = reproducing_check(k, xi, pts, c.tolerances.reproduce_tol);
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < r.points.size(); ++i)
    rows.push_back({r.points[i], r.values[i], r.reproduced[i], r.residuals[i]});
  write_csv(out / "residuals.csv", {"t", "value", "reproduced", "residual"}, rows);

  res["truncation"] = c.truncation;
  res["points"] = pts.size();
  res["condition_number"] = k.condition_number();
  res["kernel_min_eigenvalue"] = kmin;
  res["kernel_max_eigenvalue"] = kmax;
  res["reproducing"] = reproducing_json(r);
  v.add("kernel_psd", kmin >= -c.tolerances.psd_tol * std::max(kmax, 1e-300));
  v.add("reproducing", r.pass);
}

void cmd_hilbert_demo(const RunConfig& c, const fs::path& out, json& res, Verdicts& v) {
  const VectorSystem h = VectorSystem::hilbert_monomial();
  const Vector pts = domain_points(h, c.points);
  json sweep = json::array();
  std::vector<Vector> rows;
  bool increasing = true, below_pi = true, failure_detected = true;
  double prev = -INFINITY;
  for (std::size_t n : c.sweep) {
    const RkhsKernel k(h, n, c.tolerances.rank_tol);
    const double norm = operator_norm(k.spectrum());
    const double power = power_iteration_norm(k.gramian().matrix);
    const double lmin = k.spectrum().eigenvalues.front();
    const Vector xi = normal_vector(n, derive_seed(c.seed, n));
    const auto r = reproducing_check(k, xi, pts, c.tolerances.reproduce_tol);
    increasing = increasing && norm > prev;
    below_pi = below_pi && norm < std::numbers::pi;
    if (n >= 12) failure_detected = failure_detected && !r.pass;
    prev = norm;
    sweep.push_back({{"N", n},
                     {"operator_norm", norm},
                     {"power_iteration_norm", power},
                     {"pi_gap", std::numbers::pi - norm},
                     {"min_eigenvalue", lmin},
                     {"reproducing", reproducing_json(r)}});
    rows.push_back({static_cast<double>(n), norm, power, lmin, r.condition_number, r.max_residual / r.f_norm});
  }
  write_csv(out / "hilbert_sweep.csv",
            {"N", "operator_norm", "power_iteration_norm", "min_eigenvalue", "condition_number", "relative_residual"},
            rows);
  res["pi"] = std::numbers::pi;
  res["sweep"] = sweep;
  v.add("norms_increasing", increasing);
  v.add("norms_below_pi", below_pi);
  v.add("reproducing_failure_detected", failure_detected);
}

void cmd_field_demo(const RunConfig& c, const fs::path& out, json& res, Verdicts& v) {
  const SymMatrix& cov = std::get<CovarianceField>(c.system->payload()).covariance;
  const auto diag = check_random_frame(cov, c.tolerances.psd_tol);
  res["random_frame"] = {{"row_l2", diag.row_l2}, {"psd", to_json(diag.psd)}};
  v.add("random_frame", diag.pass);
  if (!diag.pass) return;

  const RandomFieldModel model = make_field_model(cov, c.seed, c.tolerances.psd_tol);
  const std::size_t preview = std::min<std::size_t>(c.sample_sizes.front(), 10);
  write_csv(out / "samples_preview.csv", sample_field(model, preview));

  json curve = json::array();
  std::vector<Vector> rows;
  Vector medians;
  for (std::size_t m : c.sample_sizes) {
    Vector errs;
    for (std::size_t r = 0; r < c.replicates; ++r) {
      RandomFieldModel rep = model;
      rep.seed = derive_seed(c.seed, r);
      const SymMatrix e = empirical_gramian(sample_field(rep, m));
      errs.push_back(frobenius_norm(e.matrix() - cov.matrix()));
    }
    std::sort(errs.begin(), errs.end());
    const std::size_t k = errs.size();
    const double med = k % 2 ? errs[k / 2] : 0.5 * (errs[k / 2 - 1] + errs[k / 2]);
    medians.push_back(med);
    curve.push_back({{"M", m}, {"median_frobenius_error", med}});
    rows.push_back({static_cast<double>(m), med});
  }
  write_csv(out / "empirical_error.csv", {"M", "median_frobenius_error"}, rows);
  res["empirical_error"] = curve;
  std::size_t inversions = 0;
  for (std::size_t i = 1; i < medians.size(); ++i)
    if (medians[i] > medians[i - 1]) ++inversions;
  res["empirical_error_inversions"] = inversions;
  v.add("empirical_convergence", inversions <= 1);

  if (!c.band) {
    res["band_estimate"] = nullptr;
    return;
  }
  const auto [a, b] = *c.band;
  const FrameBand band = band_extract(Gramian::from_matrix(cov), a, b, {c.tolerances.rank_tol, c.tolerances.band_eps});
  res["band"] = to_json(band);
  if (band.empty()) {
    res["band_estimate"] = nullptr;
    return;
  }
  std::vector<Vector> cs = band.eigenvectors;
  Vector mix(cov.size(), 0.0);
  const Vector w = normal_vector(band.dimension(), derive_seed(c.seed, 1));
  for (std::size_t k = 0; k < band.dimension(); ++k)
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += w[k] * band.eigenvectors[k][i];
  cs.push_back(mix);
  const auto est = band_estimate_check(cov, a, b, cs, c.tolerances.verify_tol);
  json entries = json::array();
  for (const auto& e : est.entries)
    entries.push_back({{"energy", e.energy},
                       {"response", e.response},
                       {"lower", e.lower},
                       {"upper", e.upper},
                       {"membership_residual", e.membership_residual},
                       {"holds", e.holds}});
  res["band_estimate"] = {{"entries", entries}, {"tol", est.tol}};
  v.add("band_estimate", est.pass);

  const auto mc = band_estimate_monte_carlo(model, mix, c.sample_sizes.back());
  res["monte_carlo"] = {{"samples", mc.samples},
                        {"energy_exact", mc.energy_exact},
                        {"energy_empirical", mc.energy_empirical},
                        {"response_exact", mc.response_exact},
                        {"response_empirical", mc.response_empirical},
                        {"relative_deviation", mc.relative_deviation},
                        {"tolerance", mc.tolerance}};
  v.add("monte_carlo", mc.within_tolerance);
}

using Handler = void (*)(const RunConfig&, const fs::path&, json&, Verdicts&);

Handler handler_for(const std::string& command) {
  if (command == "gramian") return cmd_gramian;
  if (command == "spectrum") return cmd_spectrum;
  if (command == "band") return cmd_band;
  if (command == "parseval") return cmd_parseval;
  if (command == "isometry") return cmd_isometry;
  if (command == "rkhs") return cmd_rkhs;
  if (command == "hilbert-demo") return cmd_hilbert_demo;
  if (command == "field-demo") return cmd_field_demo;
  throw ConfigError("<command>", "unknown subcommand '" + command + "'");
}

/// Numerical breakdowns are verdicts about the system, not input errors.
bool is_numerical_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::SingularFunctionValue:
    case ErrorCode::IllConditioned:
    case ErrorCode::BandMembershipError:
      return true;
    default:
      return false;
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"gramian",  "spectrum", "band",         "parseval",
                                              "isometry", "rkhs",     "hilbert-demo", "field-demo"};
  return names;
}

CommandResult run_command(const std::string& command, const RunConfig& config, const fs::path& out_dir) {
  const Handler handler = handler_for(command);
  fs::create_directories(out_dir);
  const auto start = std::chrono::steady_clock::now();

  json results = json::object();
  Verdicts verdicts;
  json error = nullptr;
  try {
    handler(config, out_dir, results, verdicts);
  } catch (const Error& e) {
    if (!is_numerical_failure(e.code())) throw;
    error = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    verdicts.add("completed", false);
  }

  CommandResult out;
  out.exit_code = verdicts.all() ? kExitPass : kExitVerdictFailed;
  out.report = {{"command", command},
                {"config", config.source},
                {"seed", config.seed},
                {"tool_version", GRAMFRAME_VERSION},
                {"results", results},
                {"verdicts", verdicts.items},
                {"error", error},
                {"pass", out.exit_code == kExitPass}};
  out.report["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_report(out_dir / "report.json", out.report);
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Gramian, frame-band and kernel diagnostics for vector systems", "gramframe"};
  app.require_subcommand(1);
  std::string config_path, out_override;
  std::uint64_t seed_override = 0;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_override, "output directory (overrides config.out)");
    sub->add_option("--seed", seed_override, "master seed (overrides config.seed)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommand(command);
  try {
    RunConfig config = load_config(config_path, command);
    if (sub->count("--seed")) config.seed = seed_override;
    config.source["seed"] = config.seed;
    if (sub->count("--out")) config.out = out_override;
    const CommandResult r = run_command(command, config, config.out);
    std::cout << command << ": " << (r.exit_code == kExitPass ? "pass" : "FAIL") << " ("
              << (fs::path(config.out) / "report.json").string() << ")\n";
    return r.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace gramframe::cli
