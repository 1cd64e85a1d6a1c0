// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion is independent and runs in seconds.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bhmetric/analysis.hpp"
#include "bhmetric/cli.hpp"
#include "bhmetric/dieudonne.hpp"
#include "bhmetric/eigen.hpp"
#include "bhmetric/evolution.hpp"
#include "bhmetric/hamiltonian.hpp"
#include "bhmetric/su2.hpp"

using namespace bhmetric;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, const std::function<std::string()>& body) {
  // body returns an empty string on success, a diagnostic on failure.
  std::string diag;
  try {
    diag = body();
  } catch (const std::exception& e) {
    diag = std::string("exception: ") + e.what();
  }
  if (diag.empty()) {
    std::printf("criterion %2d: PASS  %s\n", number, what.c_str());
  } else {
    std::printf("criterion %2d: FAIL  %s  [%s]\n", number, what.c_str(), diag.c_str());
    ++failures;
  }
}

std::string check(bool ok, const std::string& diag) { return ok ? "" : diag; }

double critical_of(MetricFamily family, std::size_t N) {
  const CriticalGamma cg = find_gamma_critical(family, N);
  return cg.no_sign_change ? 1.0 : cg.gamma_critical;
}

// Eigenvalue-sorted comparison of a spectrum against expected real values.
std::string spectrum_matches(std::size_t N, double gamma, const std::vector<double>& want,
                             double tol) {
  const SpectrumReport rep = spectrum(build_cbh({.N = N, .gamma = gamma}));
  for (std::size_t k = 0; k < N; ++k) {
    const double err = std::abs(rep.eigenvalues[k] - Complex{want[k], 0.0});
    if (err > tol) {
      std::ostringstream os;
      os << "N=" << N << " gamma=" << gamma << " branch " << k << " err=" << err;
      return os.str();
    }
  }
  return "";
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream cells(line);
    std::string cell;
    if (csv.header.empty()) {
      while (std::getline(cells, cell, ',')) csv.header.push_back(cell);
      continue;
    }
    std::vector<double> row;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::string run_csv(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (run(args, out, err) != 0) throw std::runtime_error("command failed: " + err.str());
  return out.str();
}

}  // namespace

int main() {
  criterion(1, "closed-form spectra and the equidistant pattern", [] {
    for (double g : {0.2, 0.6, 0.9}) {
      const double s = std::sqrt(1.0 - g * g);
      std::string r;
      r = spectrum_matches(2, g, {-s, s}, 1e-10);
      if (!r.empty()) return r;
      r = spectrum_matches(3, g, {-2.0 * s, 0.0, 2.0 * s}, 1e-10);
      if (!r.empty()) return r;
      r = spectrum_matches(4, g, {-3.0 * s, -s, s, 3.0 * s}, 1e-10);
      if (!r.empty()) return r;
    }
    // Dimensions 5..8: the conjectured (2k - N + 1) sqrt(1 - gamma^2) pattern,
    // confirmed numerically rather than assumed.
    for (std::size_t N = 5; N <= 8; ++N) {
      for (double g : {0.2, 0.6, 0.9}) {
        std::vector<double> want(N);
        for (std::size_t k = 0; k < N; ++k)
          want[k] = (2.0 * double(k) - double(N) + 1.0) * std::sqrt(1.0 - g * g);
        const std::string r = spectrum_matches(N, g, want, 1e-9);
        if (!r.empty()) return r;
      }
    }
    return std::string{};
  });

  criterion(2, "intertwining residual of every exact solver and family", [] {
    // The linearized family is excluded: it is first-order by construction and
    // records its own (nonzero) residual.
    double worst = 0.0;
    const auto note = [&](const MetricCandidate& cand) {
      worst = std::max(worst, cand.dieudonne_residual);
    };
    for (std::size_t N = 2; N <= 6; ++N) {
      const double gmax = 0.9 * critical_of(MetricFamily::zero_param, N);
      for (double frac : {0.25, 0.6, 1.0}) {
        const double g = frac * gmax;
        const ComplexMatrix h = build_cbh({.N = N, .gamma = g});
        note(metric_from_first_row(h, MetricParams::zeros(N)));
        MetricParams p = MetricParams::zeros(N);
        p.first_row_real[1] = 0.1;
        note(metric_from_first_row(h, p));
        for (const auto& cand : solve_nullspace(h)) note(cand);
        const MetricCandidate target = metric_from_first_row(h, MetricParams::zeros(N));
        note(spectral_metric(h, fit_spectral_weights(h, target.matrix)));
        note(named_family(N, MetricFamily::zero_param, g));
      }
    }
    for (std::size_t N : {5u, 6u}) {
      const double gmax = 0.9 * critical_of(MetricFamily::chessboard, N);
      for (double frac : {0.3, 1.0})
        note(named_family(N, MetricFamily::chessboard, frac * gmax));
    }
    for (std::size_t N : {3u, 4u}) {
      const double gmax = 0.9 * critical_of(MetricFamily::delta_rule, N);
      for (double frac : {0.3, 1.0})
        note(named_family(N, MetricFamily::delta_rule, frac * gmax));
    }
    std::ostringstream os;
    os << "worst residual " << worst;
    return check(worst <= 1e-10, os.str());
  });

  criterion(3, "solution space has dimension N for N = 2..6", [] {
    for (std::size_t N = 2; N <= 6; ++N)
      for (double g : {0.1, 0.3}) {
        const auto basis = solve_nullspace(build_cbh({.N = N, .gamma = g}));
        if (basis.size() != N) {
          std::ostringstream os;
          os << "N=" << N << " gamma=" << g << " dimension " << basis.size();
          return os.str();
        }
      }
    return std::string{};
  });

  criterion(4, "closed-form metric eigenvalues at N = 2 and N = 3", [] {
    for (double beta : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      for (double g : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        const ComplexMatrix h = build_cbh({.N = 2, .gamma = g});
        MetricParams p = MetricParams::zeros(2);
        p.first_row_real[1] = beta;
        const EigenResult eig =
            hermitian_eigen(metric_from_first_row(h, p).matrix, kDefaultTol, false);
        const double swing = std::sqrt(beta * beta + g * g);
        if (std::abs(eig.eigenvalues[0].real() - (1.0 - swing)) > 1e-12 ||
            std::abs(eig.eigenvalues[1].real() - (1.0 + swing)) > 1e-12)
          return std::string("two-level closed form violated");
      }
    }
    for (double g : {0.1, 0.3, 0.5}) {
      const EigenResult eig = hermitian_eigen(
          named_family(3, MetricFamily::zero_param, g).matrix, kDefaultTol, false);
      const double swing = g * std::sqrt(4.0 + g * g);
      const double want[3] = {1.0 - swing + g * g, 1.0, 1.0 + swing + g * g};
      for (std::size_t k = 0; k < 3; ++k)
        if (std::abs(eig.eigenvalues[k].real() - want[k]) > 1e-10)
          return std::string("three-level closed form violated");
    }
    for (int k = 1; k <= 49; ++k) {
      const double g = 0.02 * k;  // covers (0, 0.99)
      const EigenResult eig = hermitian_eigen(
          named_family(3, MetricFamily::delta_rule, g).matrix, kDefaultTol, false);
      const double root = std::sqrt(5.0 * g * g + std::pow(g, 4) - 2.0 * std::pow(g, 3));
      std::vector<double> want = {1.0 - g, 1.0 - root + g * g, 1.0 + root + g * g};
      std::sort(want.begin(), want.end());
      for (std::size_t j = 0; j < 3; ++j) {
        if (std::abs(eig.eigenvalues[j].real() - want[j]) > 1e-10)
          return std::string("delta-rule closed form violated");
        if (eig.eigenvalues[j].real() <= 0.0) return std::string("delta-rule not positive");
      }
    }
    return std::string{};
  });

  criterion(5, "critical gammas of the four printed families", [] {
    struct Want {
      MetricFamily family;
      std::size_t N;
      double value;
    };
    const Want wants[] = {{MetricFamily::zero_param, 3, 1.0 / std::sqrt(2.0)},
                          {MetricFamily::zero_param, 4, 1.0 / std::sqrt(2.0)},
                          {MetricFamily::chessboard, 5, 0.5558929700},
                          {MetricFamily::chessboard, 6, 0.5}};
    for (const Want& w : wants) {
      const double got = find_gamma_critical(w.family, w.N).gamma_critical;
      if (std::abs(got - w.value) > 1e-8) {
        std::ostringstream os;
        os << to_string(w.family) << " N=" << w.N << " got " << got;
        return os.str();
      }
    }
    return std::string{};
  });

  criterion(6, "series coefficients of the six-level chessboard family", [] {
    const SeriesFit fit = fit_series(MetricFamily::chessboard, 6);
    const double wantA[6] = {-5.0, -3.0, -1.0, 1.0, 3.0, 5.0};
    const double wantB[6] = {10.0, 6.0, 4.0, 4.0, 6.0, 10.0};
    double worst = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
      worst = std::max(worst, std::abs(fit.A[j] - wantA[j]));
      worst = std::max(worst, std::abs(fit.B[j] - wantB[j]));
    }
    std::ostringstream os;
    os << "worst error " << worst;
    return check(worst <= 1e-3, os.str());
  });

  criterion(7, "first-order metric bound, halving ratio, equidistant slopes", [] {
    std::string diag;
    struct Probe {
      MetricFamily family;
      std::size_t N;
    };
    const Probe probes[] = {{MetricFamily::zero_param, 2}, {MetricFamily::zero_param, 3},
                            {MetricFamily::zero_param, 4}, {MetricFamily::zero_param, 5},
                            {MetricFamily::zero_param, 6}, {MetricFamily::chessboard, 5},
                            {MetricFamily::chessboard, 6}};
    for (const Probe& p : probes) {
      for (double g : {0.02, 0.01, 0.005}) {
        const double r =
            (named_family(p.N, p.family, g).matrix - linearized_metric(p.N, g).matrix).max_norm();
        if (r > 3.0 * g * g) {
          std::ostringstream os;
          os << to_string(p.family) << " N=" << p.N << " gamma=" << g << " residual " << r
             << " > " << 3.0 * g * g;
          diag = os.str();
        }
      }
      const double r1 =
          (named_family(p.N, p.family, 0.02).matrix - linearized_metric(p.N, 0.02).matrix)
              .max_norm();
      const double r2 =
          (named_family(p.N, p.family, 0.01).matrix - linearized_metric(p.N, 0.01).matrix)
              .max_norm();
      if (r1 > 1e-15) {
        const double ratio = r1 / r2;
        if (ratio < 3.5 || ratio > 4.5) {
          std::ostringstream os;
          os << to_string(p.family) << " N=" << p.N << " halving ratio " << ratio;
          diag = os.str();
        }
      }
    }
    for (std::size_t N = 3; N <= 6; ++N) {
      const SeriesFit fit = fit_series(MetricFamily::zero_param, N);
      for (std::size_t k = 0; k < N; ++k) {
        const double want = 2.0 * double(k) - double(N) + 1.0;
        if (std::abs(fit.A[k] - want) > 1e-4) {
          std::ostringstream os;
          os << "slope N=" << N << " branch " << k << " A=" << fit.A[k];
          diag = os.str();
        }
      }
    }
    return diag;
  });

  criterion(8, "figure reproduction from the command line", [] {
    const Csv fig1 = parse_csv(run_csv({"figure", "--figure", "1"}));
    const std::vector<double>* at99 = nullptr;
    const std::vector<double>* at999 = nullptr;
    for (const auto& row : fig1.rows) {
      if (std::abs(row[0] - 0.99) < 1e-12) at99 = &row;
      if (std::abs(row[0] - 0.999) < 1e-12) at999 = &row;
    }
    if (!at99 || !at999) return std::string("figure 1 grid misses 0.99 / 0.999");
    for (std::size_t j = 1; j <= 3; ++j)
      if ((*at99)[j] > 0.1) return std::string("figure 1 low branches not near zero");
    if ((*at99)[4] <= 5.0) return std::string("figure 1 large branch below 5 at 0.99");
    if (std::abs((*at999)[4] - 8.0) > 0.5)
      return std::string("figure 1 large branch misses its limit at 0.999");
    for (std::size_t r = 1; r < fig1.rows.size(); ++r)
      if (fig1.rows[r][1] > fig1.rows[r - 1][1] + 1e-12)
        return std::string("figure 1 min branch not decreasing");

    const Csv fig2 = parse_csv(run_csv({"figure", "--figure", "2"}));
    const double gamma_max = 0.5 * std::sqrt(std::sqrt(5.0) - 1.0);
    double crossing = -1.0;
    for (std::size_t r = 1; r < fig2.rows.size(); ++r) {
      if (fig2.rows[r - 1][1] > 1e-3 && fig2.rows[r][1] <= 1e-3) {
        const double x0 = fig2.rows[r - 1][0], x1 = fig2.rows[r][0];
        const double y0 = fig2.rows[r - 1][1], y1 = fig2.rows[r][1];
        crossing = x0 + (x1 - x0) * (y0 - 1e-3) / (y0 - y1);
        break;
      }
    }
    if (crossing < 0.0) return std::string("figure 2 min branch never crosses 1e-3");
    std::ostringstream os;
    os << "figure 2 crossing at " << crossing << ", " << gamma_max - crossing
       << " below the boundary";
    return check(std::abs(gamma_max - crossing) <= 1e-3, os.str());
  });

  criterion(9, "norm audit: conserved weighted norm, varying naive norm", [] {
    std::vector<double> times(41);
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = 10.0 * double(k) / 40.0;
    for (std::size_t N = 2; N <= 6; ++N) {
      const double g = 0.5 * critical_of(MetricFamily::zero_param, N);
      const ComplexMatrix h = build_cbh({.N = N, .gamma = g});
      const MetricCandidate theta = named_family(N, MetricFamily::zero_param, g);
      CVector psi0(N, Complex{0.0, 0.0});
      psi0[0] = 1.0;
      const EvolutionTrace trace = evolve(h, theta, psi0, times);
      if (trace.max_drift > 1e-8) {
        std::ostringstream os;
        os << "N=" << N << " drift " << trace.max_drift;
        return os.str();
      }
      double naive = 0.0;
      for (double n : trace.naive_norms)
        naive = std::max(naive, std::abs(n - trace.naive_norms.front()));
      if (naive < 1e-3) {
        std::ostringstream os;
        os << "N=" << N << " naive-norm variation only " << naive;
        return os.str();
      }
    }
    const EvolutionTrace broken =
        evolve(build_cbh({.N = 2, .gamma = 1.2}),
               named_family(2, MetricFamily::zero_param, 0.5), {1.0, 0.0}, times);
    std::ostringstream os;
    os << "broken-phase drift " << broken.max_drift;
    return check(broken.max_drift > 1e-2, os.str());
  });

  criterion(10, "power pattern of the chessboard families", [] {
    for (std::size_t N : {5u, 6u}) {
      const PowerPatternReport rep = power_pattern_audit(MetricFamily::chessboard, N);
      if (!rep.ok) {
        std::ostringstream os;
        os << "N=" << N << " worst disallowed coefficient " << rep.worst_disallowed;
        return os.str();
      }
    }
    return std::string{};
  });

  criterion(11, "cross-solver agreement of the three construction routes", [] {
    for (std::size_t N = 2; N <= 6; ++N) {
      for (double g : {0.05, 0.1, 0.2}) {
        const ComplexMatrix h = build_cbh({.N = N, .gamma = g});
        const MetricCandidate direct = metric_from_first_row(h, MetricParams::zeros(N));
        const MetricCandidate fromns =
            combine_nullspace_basis(solve_nullspace(h), MetricParams::zeros(N));
        MetricCandidate spec = spectral_metric(h, fit_spectral_weights(h, direct.matrix));
        ComplexMatrix scaled = spec.matrix;
        scaled *= Complex{1.0, 0.0} / spec.matrix(0, 0);
        const double d1 = (direct.matrix - fromns.matrix).max_norm();
        const double d2 = (direct.matrix - scaled).max_norm();
        if (d1 > 1e-8 || d2 > 1e-8) {
          std::ostringstream os;
          os << "N=" << N << " gamma=" << g << " deviations " << d1 << ", " << d2;
          return os.str();
        }
      }
    }
    return std::string{};
  });

  if (failures) std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
