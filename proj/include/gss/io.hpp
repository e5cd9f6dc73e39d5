#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gss/experiment.hpp"

namespace gss::io {

/// "%.17g" formatting: full round-trip precision, deterministic.
std::string format_full(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// graph.json (weights at 17 significant digits, written by hand for the
// pinned precision)
std::string graph_json(const WeightedGraph& g, const GraphTemplate& t);
WeightedGraph parse_graph_json(const nlohmann::json& j);

// signals.csv ("node,t0,t1,..." header, node-major rows)
std::string signals_csv(const Matrixd& y);
Matrixd parse_signals_csv(const std::string& text);

nlohmann::json template_to_json(const GraphTemplate& t);
GraphTemplate template_from_json(const nlohmann::json& j);

nlohmann::json selection_to_json(const SelectionResult& sel);
SelectionResult selection_from_json(const nlohmann::json& j);

nlohmann::json factorization_to_json(const LowRankFactorization& fac,
                                     const Vectord& singular_values);

nlohmann::json report_to_json(const ReconstructionReport& rep);

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

Scheme scheme_from_string(const std::string& s);
SchemeChoice scheme_choice_from_string(const std::string& s);

}  // namespace gss::io
