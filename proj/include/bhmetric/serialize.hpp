#pragma once

#include <string>
#include <vector>

#include "bhmetric/analysis.hpp"
#include "bhmetric/dieudonne.hpp"
#include "bhmetric/evolution.hpp"
#include "bhmetric/hamiltonian.hpp"
#include "json.hpp"

namespace bhmetric {

// JSON conventions used by every report: complex numbers are two-element
// arrays [re, im], matrices are nested row arrays, and each top-level object
// carries a "metadata" block {paper_family, N, gamma, tolerances}.

nlohmann::json complex_to_json(const Complex& z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json metadata_block(const std::string& family, std::size_t N, double gamma,
                              const nlohmann::json& tolerances);

nlohmann::json to_json(const SpectrumReport& rep);
nlohmann::json to_json(const PhaseVerdict& verdict);
nlohmann::json to_json(const MetricCandidate& cand);
MetricCandidate metric_candidate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PositivityReport& rep);
nlohmann::json to_json(const CriticalGamma& cg);
nlohmann::json to_json(const SeriesFit& fit);
nlohmann::json to_json(const EigencurveTable& table);
nlohmann::json to_json(const EvolutionTrace& trace);

// Comma-separated rows, '.' decimal point, mandatory header, LF endings.
// Values are printed with 17 significant digits so they parse back exactly.
std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows,
                       const std::vector<std::string>& comments = {});

std::string format_double(double x);

}  // namespace bhmetric
