#include "bhmetric/serialize.hpp"

#include <charconv>
#include <cstdio>

#include "bhmetric/errors.hpp"

namespace bhmetric {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidParams("complex_from_json: expected a two-element [re, im] array");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidParams("matrix_from_json: expected row arrays");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw InvalidParams("matrix_from_json: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

json metadata_block(const std::string& family, std::size_t N, double gamma,
                    const json& tolerances) {
  return json{{"paper_family", family}, {"N", N}, {"gamma", gamma}, {"tolerances", tolerances}};
}

json to_json(const SpectrumReport& rep) {
  json eig = json::array();
  for (const auto& e : rep.eigenvalues) eig.push_back(complex_to_json(e));
  return json{{"eigenvalues", eig}, {"max_imag", rep.max_imag}, {"is_real", rep.is_real}};
}

namespace {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::unbroken: return "unbroken";
    case Phase::boundary: return "boundary";
    case Phase::broken: return "broken";
  }
  return "unknown";
}

}  // namespace

json to_json(const PhaseVerdict& verdict) {
  return json{{"phase", phase_name(verdict.phase)},
              {"gamma", verdict.gamma},
              {"ep_distance", verdict.ep_distance},
              {"spectral_test_only", verdict.spectral_test_only}};
}

json to_json(const MetricCandidate& cand) {
  return json{{"matrix", matrix_to_json(cand.matrix)},
              {"first_row_real", cand.params.first_row_real},
              {"family", to_string(cand.family)},
              {"gamma", cand.gamma},
              {"hermiticity_residual", cand.hermiticity_residual},
              {"dieudonne_residual", cand.dieudonne_residual},
              {"warnings", cand.warnings}};
}

MetricCandidate metric_candidate_from_json(const json& j) {
  MetricCandidate cand;
  cand.matrix = matrix_from_json(j.at("matrix"));
  cand.params.first_row_real = j.at("first_row_real").get<std::vector<double>>();
  cand.family = family_from_string(j.at("family").get<std::string>());
  cand.gamma = j.at("gamma").get<double>();
  cand.hermiticity_residual = j.at("hermiticity_residual").get<double>();
  cand.dieudonne_residual = j.at("dieudonne_residual").get<double>();
  cand.warnings = j.at("warnings").get<std::vector<std::string>>();
  return cand;
}

json to_json(const PositivityReport& rep) {
  return json{{"gamma", rep.gamma},
              {"eigenvalues", rep.eigenvalues},
              {"min_eigenvalue", rep.min_eigenvalue},
              {"positive_definite", rep.positive_definite},
              {"anisotropy", rep.anisotropy}};
}

json to_json(const CriticalGamma& cg) {
  return json{{"family", to_string(cg.family)},
              {"N", cg.N},
              {"gamma_critical", cg.gamma_critical},
              {"bracket_width", cg.bracket_width},
              {"min_eig_at_boundary", cg.min_eig_at_boundary},
              {"no_sign_change", cg.no_sign_change}};
}

json to_json(const SeriesFit& fit) {
  return json{{"A", fit.A}, {"B", fit.B}, {"residual", fit.residual}, {"grid", fit.grid}};
}

json to_json(const EigencurveTable& table) {
  return json{{"gammas", table.gammas},
              {"thetas", table.thetas},
              {"min_branch_monotone_decreasing", table.min_branch_monotone_decreasing}};
}

json to_json(const EvolutionTrace& trace) {
  json states = json::array();
  for (const auto& psi : trace.states) {
    json v = json::array();
    for (const auto& z : psi) v.push_back(complex_to_json(z));
    states.push_back(std::move(v));
  }
  return json{{"times", trace.times},
              {"states", states},
              {"theta_norms", trace.theta_norms},
              {"naive_norms", trace.naive_norms},
              {"max_drift", trace.max_drift}};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows,
                       const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) {
    out += "# ";
    out += c;
    out += '\n';
  }
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out += ',';
    out += header[j];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace bhmetric
