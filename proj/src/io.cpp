#include "gss/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gss::io {

namespace {

nlohmann::json matrix_json(const Matrixd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrixd matrix_from_json(const nlohmann::json& j, const char* name) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ConfigError(std::string(name) + " must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrixd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw ConfigError(std::string(name) + " rows have inconsistent lengths");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw ConfigError(std::string(name) + " entries must be numbers");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

std::string kind_to_string(GraphKind k) {
  switch (k) {
    case GraphKind::custom: return "custom";
    case GraphKind::erdos_renyi: return "erdos_renyi";
    case GraphKind::complete: return "complete";
    case GraphKind::bipartite: return "bipartite";
    case GraphKind::figure1a: return "figure1a";
  }
  return "custom";
}

GraphKind kind_from_string(const std::string& s) {
  if (s == "custom") return GraphKind::custom;
  if (s == "erdos_renyi") return GraphKind::erdos_renyi;
  if (s == "complete") return GraphKind::complete;
  if (s == "bipartite") return GraphKind::bipartite;
  if (s == "figure1a") return GraphKind::figure1a;
  throw ConfigError("unknown graph kind '" + s + "'");
}

}  // namespace

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file '" + path + "'");
  out << content;
}

std::string graph_json(const WeightedGraph& g, const GraphTemplate& t) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"n\": " << g.n << ",\n";
  out << "  \"seed\": " << t.seed << ",\n";
  out << "  \"template\": " << template_to_json(t).dump() << ",\n";
  out << "  \"weights\": [\n";
  for (int i = 0; i < g.n; ++i) {
    out << "    [";
    for (int j = 0; j < g.n; ++j) {
      if (j > 0) out << ", ";
      out << format_full(g.weights(i, j));
    }
    out << (i + 1 < g.n ? "],\n" : "]\n");
  }
  out << "  ]\n";
  out << "}\n";
  return out.str();
}

WeightedGraph parse_graph_json(const nlohmann::json& j) {
  if (!j.contains("weights")) throw ConfigError("graph json is missing 'weights'");
  Matrixd w = matrix_from_json(j["weights"], "graph weights");
  WeightedGraph g = make_weighted_graph(std::move(w));
  if (j.contains("n") && j["n"].get<int>() != g.n) {
    throw ConfigError("graph json 'n' disagrees with the weight matrix size");
  }
  return g;
}

std::string signals_csv(const Matrixd& y) {
  std::ostringstream out;
  out << "node";
  for (Eigen::Index t = 0; t < y.cols(); ++t) out << ",t" << t;
  out << "\n";
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    out << i;
    for (Eigen::Index t = 0; t < y.cols(); ++t) out << "," << format_full(y(i, t));
    out << "\n";
  }
  return out.str();
}

Matrixd parse_signals_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("signals csv is empty");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    bool first = true;
    while (std::getline(ls, cell, ',')) {
      if (first) {  // node index column
        if (std::stoll(cell) != static_cast<long long>(rows.size())) {
          throw ConfigError("signals csv rows must be ordered by node index");
        }
        first = false;
        continue;
      }
      row.push_back(std::stod(cell));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError("signals csv rows have inconsistent lengths");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw ConfigError("signals csv has no data");
  Matrixd y(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    for (Eigen::Index t = 0; t < y.cols(); ++t) {
      y(i, t) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
    }
  }
  return y;
}

nlohmann::json template_to_json(const GraphTemplate& t) {
  nlohmann::json j;
  j["kind"] = kind_to_string(t.kind);
  switch (t.kind) {
    case GraphKind::custom:
      break;  // weights live at the top level of graph.json
    case GraphKind::erdos_renyi:
      j["n"] = t.n;
      j["p"] = t.edge_prob;
      j["w_lo"] = t.w_lo;
      j["w_hi"] = t.w_hi;
      break;
    case GraphKind::complete:
      j["n"] = t.n;
      j["w_lo"] = t.w_lo;
      j["w_hi"] = t.w_hi;
      break;
    case GraphKind::bipartite:
      j["part_a"] = t.part_a;
      j["part_b"] = t.part_b;
      j["w_lo"] = t.w_lo;
      j["w_hi"] = t.w_hi;
      break;
    case GraphKind::figure1a:
      j["alpha"] = t.alpha;
      break;
  }
  return j;
}

GraphTemplate template_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError("graph template must be an object with a 'kind' field");
  }
  GraphTemplate t;
  t.kind = kind_from_string(j["kind"].get<std::string>());
  switch (t.kind) {
    case GraphKind::custom:
      if (!j.contains("weights")) throw ConfigError("custom graph template needs 'weights'");
      t.weights = matrix_from_json(j["weights"], "custom graph weights");
      t.n = static_cast<int>(t.weights.rows());
      break;
    case GraphKind::erdos_renyi:
      if (!j.contains("n")) throw ConfigError("erdos_renyi template needs 'n'");
      t.n = j["n"].get<int>();
      t.edge_prob = j.value("p", 0.5);
      t.w_lo = j.value("w_lo", 1.0);
      t.w_hi = j.value("w_hi", 10.0);
      break;
    case GraphKind::complete:
      if (!j.contains("n")) throw ConfigError("complete template needs 'n'");
      t.n = j["n"].get<int>();
      t.w_lo = j.value("w_lo", 1.0);
      t.w_hi = j.value("w_hi", 10.0);
      break;
    case GraphKind::bipartite:
      if (!j.contains("part_a") || !j.contains("part_b")) {
        throw ConfigError("bipartite template needs 'part_a' and 'part_b'");
      }
      t.part_a = j["part_a"].get<int>();
      t.part_b = j["part_b"].get<int>();
      t.n = t.part_a + t.part_b;
      t.w_lo = j.value("w_lo", 1.0);
      t.w_hi = j.value("w_hi", 10.0);
      break;
    case GraphKind::figure1a:
      t.n = kFigure1aNodes;
      t.alpha = j.value("alpha", 1.0);
      break;
  }
  return t;
}

nlohmann::json selection_to_json(const SelectionResult& sel) {
  nlohmann::json j;
  j["seeded_with"] = sel.seeded_with == Scheme::svd ? "b_tilde_svd" : "b";
  j["selected"] = sel.selected;
  nlohmann::json trace = nlohmann::json::array();
  for (const RemovalRecord& rec : sel.removal_trace) {
    trace.push_back({{"removed", rec.removed},
                     {"pair", {rec.pair_i, rec.pair_j}},
                     {"rowsum_i", rec.rowsum_i},
                     {"rowsum_j", rec.rowsum_j}});
  }
  j["removal_trace"] = std::move(trace);
  return j;
}

SelectionResult selection_from_json(const nlohmann::json& j) {
  SelectionResult sel;
  sel.seeded_with = j.value("seeded_with", "b") == std::string("b_tilde_svd") ? Scheme::svd
                                                                              : Scheme::samp;
  if (!j.contains("selected") || !j["selected"].is_array()) {
    throw ConfigError("selection json needs a 'selected' array");
  }
  sel.selected = j["selected"].get<std::vector<int>>();
  for (const auto& rec : j.value("removal_trace", nlohmann::json::array())) {
    RemovalRecord r;
    r.removed = rec.at("removed").get<int>();
    r.pair_i = rec.at("pair")[0].get<int>();
    r.pair_j = rec.at("pair")[1].get<int>();
    r.rowsum_i = rec.at("rowsum_i").get<double>();
    r.rowsum_j = rec.at("rowsum_j").get<double>();
    sel.removal_trace.push_back(r);
  }
  return sel;
}

nlohmann::json factorization_to_json(const LowRankFactorization& fac,
                                     const Vectord& singular_values) {
  nlohmann::json j;
  j["scheme"] = to_string(fac.scheme);
  j["P"] = fac.P;
  j["selected_set"] = fac.selected_set;
  nlohmann::json sv = nlohmann::json::array();
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) sv.push_back(singular_values(i));
  j["singular_values"] = std::move(sv);
  j["b_tilde"] = matrix_json(fac.b_tilde);
  j["t_factor"] = matrix_json(fac.t_factor);
  return j;
}

nlohmann::json report_to_json(const ReconstructionReport& rep) {
  nlohmann::json j;
  j["error_db"] = rep.error_db;
  j["low_rank_term"] = rep.low_rank_term;
  j["sampling_term"] = rep.sampling_term;
  j["cond_ast"] = rep.cond_ast;
  nlohmann::json per_t = nlohmann::json::array();
  for (Eigen::Index t = 0; t < rep.per_time_error.size(); ++t) {
    per_t.push_back(rep.per_time_error(t));
  }
  j["per_time_error"] = std::move(per_t);
  return j;
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "svd") return Scheme::svd;
  if (s == "samp") return Scheme::samp;
  throw ConfigError("unknown scheme '" + s + "' (expected svd or samp)");
}

SchemeChoice scheme_choice_from_string(const std::string& s) {
  if (s == "svd") return SchemeChoice::svd;
  if (s == "samp") return SchemeChoice::samp;
  if (s == "both") return SchemeChoice::both;
  throw ConfigError("unknown scheme '" + s + "' (expected svd, samp or both)");
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    if (!j.contains("graph")) throw ConfigError("experiment config needs a 'graph' section");
    ExperimentConfig cfg;
    cfg.graph = template_from_json(j["graph"]);

    if (j.contains("generator")) {
      const nlohmann::json& g = j["generator"];
      cfg.generator_order = g.value("order", 5);
      if (g.contains("coefficients") && g["coefficients"].is_array()) {
        cfg.generator_coefficients = g["coefficients"].get<std::vector<double>>();
      } else if (g.contains("coefficients") && g["coefficients"] != "random") {
        throw ConfigError("generator coefficients must be an array or \"random\"");
      }
    }

    if (j.contains("signal")) {
      const nlohmann::json& s = j["signal"];
      cfg.signal.time_samples = s.value("time_samples", 256);
      cfg.signal.harmonics = s.value("harmonics", 3);
      const std::string mode = s.value("mode", "random_sinusoids");
      if (mode == "random_sinusoids") {
        cfg.signal.mode = SignalMode::random_sinusoids;
      } else if (mode == "iid_gaussian_per_t") {
        cfg.signal.mode = SignalMode::iid_gaussian_per_t;
      } else {
        throw ConfigError("unknown signal mode '" + mode + "'");
      }
    }

    cfg.epsilon = j.value("epsilon", 0.03);
    cfg.scheme = scheme_choice_from_string(j.value("scheme", "both"));
    if (j.contains("seeds")) {
      const nlohmann::json& s = j["seeds"];
      cfg.seeds.graph = s.value("graph", std::uint64_t{1});
      cfg.seeds.coefficients = s.value("coefficients", std::uint64_t{1});
      cfg.seeds.signal = s.value("signal", std::uint64_t{3});
    }
    cfg.output_dir = j.value("output_dir", std::string{});
    cfg.greedy.rowsum_active_only = j.value("rowsum_active_only", false);

    validate(cfg);
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  return parse_experiment_config(j);
}

}  // namespace gss::io
