#include "bhmetric/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bhmetric/errors.hpp"
#include "bhmetric/serialize.hpp"
#include "bhmetric/su2.hpp"

namespace bhmetric {

namespace {

using nlohmann::json;

struct RunConfig {
  std::size_t N = 2;
  double gamma = 0.0;
  double epsilon = 0.0;
  double v = 1.0;
  double c = 0.0;
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
  std::size_t steps = 0;
  std::string family = "zero_param";
  double nu = 1.0;
  std::vector<double> params;
  double tol = 1e-10;
  std::string format = "json";
  std::string output;
  double t_max = 10.0;
  std::size_t time_steps = 101;
  bool allow_indefinite = false;
  int figure = 0;
};

std::vector<double> gamma_grid(const RunConfig& cfg) {
  if (cfg.steps == 0) return {cfg.gamma};
  if (cfg.steps < 2 || !(cfg.gamma_lo < cfg.gamma_hi))
    throw InvalidParams("gamma range requires lo < hi and steps >= 2");
  std::vector<double> grid(cfg.steps);
  for (std::size_t k = 0; k < cfg.steps; ++k)
    grid[k] = cfg.gamma_lo + (cfg.gamma_hi - cfg.gamma_lo) * double(k) / double(cfg.steps - 1);
  return grid;
}

json with_metadata(json body, const RunConfig& cfg) {
  body["metadata"] = metadata_block(cfg.family, cfg.N, cfg.gamma, json{{"tol", cfg.tol}});
  return body;
}

std::vector<std::string> csv_comments(const RunConfig& cfg) {
  return {"family=" + cfg.family + " N=" + std::to_string(cfg.N), "tol=" + format_double(cfg.tol)};
}

std::string matrix_csv(const ComplexMatrix& m, const RunConfig& cfg) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      rows.push_back({double(i + 1), double(j + 1), m(i, j).real(), m(i, j).imag()});
  return format_csv({"i", "j", "re", "im"}, rows, csv_comments(cfg));
}

MetricCandidate build_metric(const RunConfig& cfg) {
  const MetricFamily family = family_from_string(cfg.family);
  if (family == MetricFamily::general) {
    const ComplexMatrix h = build_cbh({.N = cfg.N, .gamma = cfg.gamma, .v = cfg.v, .c = cfg.c});
    MetricParams params = MetricParams::zeros(cfg.N);
    if (!cfg.params.empty()) {
      if (cfg.params.size() != cfg.N - 1)
        throw InvalidParams("--params expects the N-1 first-row entries after the leading 1");
      for (std::size_t k = 0; k < cfg.params.size(); ++k)
        params.first_row_real[k + 1] = cfg.params[k];
    }
    return metric_from_first_row(h, params);
  }
  FamilyOptions opts;
  opts.nu = cfg.nu;
  return named_family(cfg.N, family, cfg.gamma, opts);
}

std::string eigencurve_csv(const EigencurveTable& table, std::size_t N, const RunConfig& cfg) {
  std::vector<std::string> header{"gamma"};
  for (std::size_t j = 1; j <= N; ++j) header.push_back("theta_" + std::to_string(j));
  std::vector<std::vector<double>> rows;
  for (std::size_t g = 0; g < table.gammas.size(); ++g) {
    std::vector<double> row{table.gammas[g]};
    row.insert(row.end(), table.thetas[g].begin(), table.thetas[g].end());
    rows.push_back(std::move(row));
  }
  return format_csv(header, rows, csv_comments(cfg));
}

std::string run_hamiltonian(const RunConfig& cfg) {
  const CbhParams p{.N = cfg.N, .epsilon = cfg.epsilon, .gamma = cfg.gamma, .v = cfg.v, .c = cfg.c};
  const ComplexMatrix h = cfg.gamma != 0.0 || cfg.epsilon == 0.0 ? build_cbh(p)
                                                                 : build_hermitian_bh(p);
  if (cfg.format == "csv") return matrix_csv(h, cfg);
  return with_metadata(json{{"matrix", matrix_to_json(h)}}, cfg).dump(2) + "\n";
}

std::string run_spectrum(const RunConfig& cfg) {
  const ComplexMatrix h =
      build_cbh({.N = cfg.N, .gamma = cfg.gamma, .v = cfg.v, .c = cfg.c});
  const SpectrumReport rep = spectrum(h, cfg.tol);
  if (cfg.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < rep.eigenvalues.size(); ++k)
      rows.push_back({double(k + 1), rep.eigenvalues[k].real(), rep.eigenvalues[k].imag()});
    return format_csv({"index", "re", "im"}, rows, csv_comments(cfg));
  }
  return with_metadata(to_json(rep), cfg).dump(2) + "\n";
}

std::string run_phase(const RunConfig& cfg) {
  const PhaseVerdict verdict =
      classify_phase({.N = cfg.N, .gamma = cfg.gamma, .v = cfg.v, .c = cfg.c}, cfg.tol);
  if (cfg.format == "csv") {
    const double code = verdict.phase == Phase::unbroken ? 0.0
                        : verdict.phase == Phase::boundary ? 1.0
                                                           : 2.0;
    return format_csv({"gamma", "phase_code", "ep_distance"},
                      {{verdict.gamma, code, verdict.ep_distance}}, csv_comments(cfg));
  }
  return with_metadata(to_json(verdict), cfg).dump(2) + "\n";
}

std::string run_metric(const RunConfig& cfg) {
  const MetricCandidate cand = build_metric(cfg);
  if (cfg.format == "csv") return matrix_csv(cand.matrix, cfg);
  return with_metadata(to_json(cand), cfg).dump(2) + "\n";
}

std::string run_positivity(const RunConfig& cfg) {
  RunConfig local = cfg;
  json reports = json::array();
  std::vector<std::vector<double>> rows;
  for (double g : gamma_grid(cfg)) {
    local.gamma = g;
    const PositivityReport rep = positivity(build_metric(local), 1e-12);
    reports.push_back(to_json(rep));
    std::vector<double> row{g, rep.min_eigenvalue, rep.positive_definite ? 1.0 : 0.0,
                            rep.anisotropy};
    rows.push_back(std::move(row));
  }
  if (cfg.format == "csv")
    return format_csv({"gamma", "min_eigenvalue", "positive_definite", "anisotropy"}, rows,
                      csv_comments(cfg));
  return with_metadata(json{{"reports", reports}}, cfg).dump(2) + "\n";
}

std::string run_critical_gamma(const RunConfig& cfg) {
  CriticalOptions opts;
  opts.family_options.nu = cfg.nu;
  const CriticalGamma cg = find_gamma_critical(family_from_string(cfg.family), cfg.N, opts);
  if (cfg.format == "csv")
    return format_csv(
        {"N", "gamma_critical", "bracket_width", "min_eig_at_boundary", "no_sign_change"},
        {{double(cg.N), cg.gamma_critical, cg.bracket_width, cg.min_eig_at_boundary,
          cg.no_sign_change ? 1.0 : 0.0}},
        csv_comments(cfg));
  return with_metadata(to_json(cg), cfg).dump(2) + "\n";
}

std::string run_series(const RunConfig& cfg) {
  FamilyOptions opts;
  opts.nu = cfg.nu;
  const SeriesFit fit = fit_series(family_from_string(cfg.family), cfg.N, 2, {}, opts);
  if (cfg.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < fit.A.size(); ++j)
      rows.push_back({double(j + 1), fit.A[j], fit.B[j]});
    return format_csv({"branch", "A", "B"}, rows, csv_comments(cfg));
  }
  return with_metadata(to_json(fit), cfg).dump(2) + "\n";
}

std::string run_evolve(const RunConfig& cfg) {
  const ComplexMatrix h =
      build_cbh({.N = cfg.N, .gamma = cfg.gamma, .v = cfg.v, .c = cfg.c});
  const MetricCandidate theta = build_metric(cfg);
  CVector psi0(cfg.N, Complex{0.0, 0.0});
  psi0[0] = 1.0;
  if (cfg.time_steps < 2) throw InvalidParams("evolve: --steps must be at least 2");
  std::vector<double> times(cfg.time_steps);
  for (std::size_t k = 0; k < cfg.time_steps; ++k)
    times[k] = cfg.t_max * double(k) / double(cfg.time_steps - 1);
  EvolveOptions opts;
  opts.require_positive_metric = !cfg.allow_indefinite;
  const EvolutionTrace trace = evolve(h, theta, psi0, times, opts);
  if (cfg.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < trace.times.size(); ++k)
      rows.push_back({trace.times[k], trace.theta_norms[k], trace.naive_norms[k]});
    return format_csv({"t", "theta_norm", "naive_norm"}, rows, csv_comments(cfg));
  }
  return with_metadata(to_json(trace), cfg).dump(2) + "\n";
}

std::string run_figure(RunConfig& cfg) {
  std::vector<double> grid;
  if (cfg.figure == 1) {
    cfg.family = "delta_rule";
    cfg.N = 4;
    for (int k = 1; k <= 99; ++k) grid.push_back(0.01 * k);
    grid.push_back(0.995);
    grid.push_back(0.999);
  } else if (cfg.figure == 2) {
    cfg.family = "chessboard";
    cfg.N = 5;
    for (double g = 0.01; g < 0.55585; g += 0.0002) grid.push_back(g);
  } else {
    throw InvalidParams("--figure must be 1 or 2");
  }
  FamilyOptions opts;
  opts.nu = cfg.nu;
  const EigencurveTable table =
      eigencurve_table(family_from_string(cfg.family), cfg.N, grid, opts);
  return eigencurve_csv(table, cfg.N, cfg);
}

void emit(const std::string& payload, const RunConfig& cfg, std::ostream& out) {
  if (cfg.output.empty()) {
    out << payload;
    return;
  }
  std::filesystem::path path(cfg.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("BHMETRIC_OUTPUT_DIR")) path = std::filesystem::path(dir) / path;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file: " + path.string());
  file << payload;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quasi-Hermitian Bose-Hubbard toolkit"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub, bool with_gamma = true) {
    sub->add_option("--N", cfg.N, "matrix dimension")->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    if (with_gamma) sub->add_option("--gamma", cfg.gamma, "non-Hermiticity strength");
    sub->add_option("--tol", cfg.tol, "numerical tolerance");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", cfg.output, "output path (stdout when omitted)");
  };
  const auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family)
        ->check(CLI::IsMember(
            {"general", "zero_param", "chessboard", "delta_rule", "linearized", "spectral"}));
    sub->add_option("--nu", cfg.nu, "delta-rule mixing parameter")->check(CLI::Range(1.0, 4.0));
    sub->add_option("--params", cfg.params, "first-row real parts after the leading 1");
  };

  auto* ham = app.add_subcommand("hamiltonian", "emit the Hamiltonian matrix");
  add_common(ham);
  ham->add_option("--epsilon", cfg.epsilon);
  ham->add_option("--v", cfg.v);
  ham->add_option("--c", cfg.c);

  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of the Hamiltonian");
  add_common(spec_cmd);
  spec_cmd->add_option("--v", cfg.v);
  spec_cmd->add_option("--c", cfg.c);

  auto* phase = app.add_subcommand("phase", "symmetry-phase verdict");
  add_common(phase);
  phase->add_option("--v", cfg.v);
  phase->add_option("--c", cfg.c);

  auto* metric = app.add_subcommand("metric", "metric candidate with residuals");
  add_common(metric);
  add_family(metric);

  auto* pos = app.add_subcommand("positivity", "metric eigenvalues over a gamma range");
  add_common(pos);
  add_family(pos);
  pos->add_option("--gamma-lo", cfg.gamma_lo);
  pos->add_option("--gamma-hi", cfg.gamma_hi);
  pos->add_option("--steps", cfg.steps);

  auto* crit = app.add_subcommand("critical-gamma", "positivity boundary of a family");
  add_common(crit, /*with_gamma=*/false);
  add_family(crit);

  auto* series = app.add_subcommand("series", "small-gamma eigenvalue series coefficients");
  add_common(series, /*with_gamma=*/false);
  add_family(series);

  auto* evolve_cmd = app.add_subcommand("evolve", "time evolution with norm audit");
  add_common(evolve_cmd);
  add_family(evolve_cmd);
  evolve_cmd->add_option("--t-max", cfg.t_max)->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--steps", cfg.time_steps);
  evolve_cmd->add_flag("--allow-indefinite", cfg.allow_indefinite,
                       "propagate even when the metric is not positive definite");

  auto* fig = app.add_subcommand("figure", "eigencurve CSV for the reference figures");
  fig->add_option("--figure", cfg.figure, "1 or 2")->required();
  fig->add_option("--output,-o", cfg.output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    std::string payload;
    if (ham->parsed()) payload = run_hamiltonian(cfg);
    else if (spec_cmd->parsed()) payload = run_spectrum(cfg);
    else if (phase->parsed()) payload = run_phase(cfg);
    else if (metric->parsed()) payload = run_metric(cfg);
    else if (pos->parsed()) payload = run_positivity(cfg);
    else if (crit->parsed()) payload = run_critical_gamma(cfg);
    else if (series->parsed()) payload = run_series(cfg);
    else if (evolve_cmd->parsed()) payload = run_evolve(cfg);
    else if (fig->parsed()) { cfg.format = "csv"; payload = run_figure(cfg); }
    emit(payload, cfg, out);
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace bhmetric
