#include "gss/experiment.hpp"

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "gss/io.hpp"

namespace gss {

namespace {

// Rethrows stage failures with the stage name attached, preserving the error
// type so the CLI exit-code mapping survives.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SingularOperatorError& e) {
    throw SingularOperatorError(std::string(name) + ": " + e.what(), e.condition(), e.selected());
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(name) + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(name) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  }
}

std::string family_label(const GraphTemplate& t) {
  switch (t.kind) {
    case GraphKind::custom: return "custom";
    case GraphKind::erdos_renyi: return "erdos_renyi";
    case GraphKind::complete: return "complete";
    case GraphKind::bipartite: return "bipartite";
    case GraphKind::figure1a: return "figure1a";
  }
  return "custom";
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  validate(cfg.graph);
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw ConfigError("epsilon must lie strictly inside (0, 1)");
  }
  if (cfg.generator_order < 1) throw ConfigError("generator order K must be at least 1");
  if (!cfg.generator_coefficients.empty()) {
    GeneratorSpec spec;
    spec.order = cfg.generator_order;
    spec.coefficients = cfg.generator_coefficients;
    validate(spec);
  }
  validate(cfg.signal);
}

GraphTemplate resolved_graph_template(const ExperimentConfig& cfg) {
  GraphTemplate t = cfg.graph;
  t.seed = cfg.seeds.graph;
  return t;
}

GeneratorSpec resolved_generator_spec(const ExperimentConfig& cfg) {
  if (cfg.generator_coefficients.empty()) {
    return random_generator_spec(cfg.generator_order, cfg.seeds.coefficients);
  }
  GeneratorSpec spec;
  spec.order = cfg.generator_order;
  spec.coefficients = cfg.generator_coefficients;
  spec.coefficient_seed = cfg.seeds.coefficients;
  validate(spec);
  return spec;
}

SignalSpec resolved_signal_spec(const ExperimentConfig& cfg) {
  SignalSpec s = cfg.signal;
  s.signal_seed = cfg.seeds.signal;
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentResult res;
  res.graph = stage("build_graph", [&] { return build_graph(resolved_graph_template(cfg)); });
  res.laplacian = stage("normalized_laplacian", [&] { return normalized_laplacian(res.graph); });
  res.generator = resolved_generator_spec(cfg);
  res.b = stage("build_generator", [&] { return build_generator(res.laplacian, res.generator); });
  res.coefficients = stage("synthesize_coefficients", [&] {
    return synthesize_coefficients(res.graph.n, resolved_signal_spec(cfg));
  });
  res.signals =
      stage("generate_signals", [&] { return generate_signals(res.b, res.coefficients); });
  res.singular_values = stage("svd", [&] { return svd(res.b).singular_values; });
  res.rank = stage("select_rank", [&] { return select_rank(res.singular_values, cfg.epsilon); });

  auto run_scheme = [&](Scheme scheme) {
    SchemeOutcome out;
    out.scheme = scheme;
    if (scheme == Scheme::svd) {
      out.factorization = stage("approx_svd", [&] { return approx_svd(res.b, res.rank.P); });
      out.selection = stage("greedy_select", [&] {
        return greedy_select(out.factorization.b_tilde, res.rank.P, scheme, cfg.greedy);
      });
      out.factorization.selected_set = out.selection.selected;
    } else {
      out.selection = stage("greedy_select", [&] {
        return greedy_select(res.b, res.rank.P, scheme, cfg.greedy);
      });
      out.factorization =
          stage("approx_samp", [&] { return approx_samp(res.b, out.selection.selected); });
    }
    out.op = make_operator(res.graph.n, out.selection.selected);
    const Matrixd y_s = subsample(res.signals, out.op);
    const Matrixd y_hat =
        stage("reconstruct", [&] { return reconstruct(y_s, out.factorization, out.op); });
    out.report = stage("error_report", [&] {
      return error_report(res.signals, y_hat, res.b, out.factorization, res.coefficients, out.op);
    });
    res.outcomes.push_back(std::move(out));
  };
  if (cfg.scheme != SchemeChoice::samp) run_scheme(Scheme::svd);
  if (cfg.scheme != SchemeChoice::svd) run_scheme(Scheme::samp);
  return res;
}

void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& res,
                              const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  io::write_text_file((dir / "graph.json").string(),
                      io::graph_json(res.graph, resolved_graph_template(cfg)));
  io::write_text_file((dir / "signals.csv").string(), io::signals_csv(res.signals));

  nlohmann::json sv = nlohmann::json::array();
  for (Eigen::Index i = 0; i < res.singular_values.size(); ++i) {
    sv.push_back(res.singular_values(i));
  }

  nlohmann::json selection;
  selection["epsilon"] = cfg.epsilon;
  selection["P"] = res.rank.P;
  selection["gamma"] = res.generator.coefficients;
  selection["singular_values"] = sv;
  selection["schemes"] = nlohmann::json::object();
  for (const SchemeOutcome& out : res.outcomes) {
    selection["schemes"][to_string(out.scheme)] = io::selection_to_json(out.selection);
  }
  io::write_text_file((dir / "selection.json").string(), selection.dump(2) + "\n");

  nlohmann::json report;
  report["epsilon"] = cfg.epsilon;
  report["P"] = res.rank.P;
  report["gamma"] = res.generator.coefficients;
  report["schemes"] = nlohmann::json::object();
  for (const SchemeOutcome& out : res.outcomes) {
    nlohmann::json r = io::report_to_json(out.report);
    r["selected"] = out.selection.selected;
    report["schemes"][to_string(out.scheme)] = std::move(r);
  }
  io::write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
}

SelectionOnlyResult run_selection(const ExperimentConfig& cfg) {
  validate(cfg);
  SelectionOnlyResult res;
  res.graph = stage("build_graph", [&] { return build_graph(resolved_graph_template(cfg)); });
  res.laplacian = stage("normalized_laplacian", [&] { return normalized_laplacian(res.graph); });
  res.generator = resolved_generator_spec(cfg);
  res.b = stage("build_generator", [&] { return build_generator(res.laplacian, res.generator); });
  res.singular_values = stage("svd", [&] { return svd(res.b).singular_values; });
  res.rank = stage("select_rank", [&] { return select_rank(res.singular_values, cfg.epsilon); });
  auto select_scheme = [&](Scheme scheme) {
    SchemeSelection out;
    out.scheme = scheme;
    if (scheme == Scheme::svd) {
      out.factorization = stage("approx_svd", [&] { return approx_svd(res.b, res.rank.P); });
      out.selection = stage("greedy_select", [&] {
        return greedy_select(out.factorization.b_tilde, res.rank.P, scheme, cfg.greedy);
      });
      out.factorization.selected_set = out.selection.selected;
    } else {
      out.selection = stage("greedy_select", [&] {
        return greedy_select(res.b, res.rank.P, scheme, cfg.greedy);
      });
      out.factorization =
          stage("approx_samp", [&] { return approx_samp(res.b, out.selection.selected); });
    }
    res.schemes.push_back(std::move(out));
  };
  if (cfg.scheme != SchemeChoice::samp) select_scheme(Scheme::svd);
  if (cfg.scheme != SchemeChoice::svd) select_scheme(Scheme::samp);
  return res;
}

void write_selection_outputs(const ExperimentConfig& cfg, const SelectionOnlyResult& res,
                             const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  io::write_text_file((dir / "graph.json").string(),
                      io::graph_json(res.graph, resolved_graph_template(cfg)));

  nlohmann::json sv = nlohmann::json::array();
  for (Eigen::Index i = 0; i < res.singular_values.size(); ++i) {
    sv.push_back(res.singular_values(i));
  }
  nlohmann::json selection;
  selection["epsilon"] = cfg.epsilon;
  selection["P"] = res.rank.P;
  selection["gamma"] = res.generator.coefficients;
  selection["singular_values"] = sv;
  selection["schemes"] = nlohmann::json::object();
  nlohmann::json factorizations = nlohmann::json::object();
  for (const SchemeSelection& out : res.schemes) {
    selection["schemes"][to_string(out.scheme)] = io::selection_to_json(out.selection);
    factorizations[to_string(out.scheme)] =
        io::factorization_to_json(out.factorization, res.singular_values);
  }
  io::write_text_file((dir / "selection.json").string(), selection.dump(2) + "\n");
  io::write_text_file((dir / "factorization.json").string(), factorizations.dump(2) + "\n");
}

ArtifactReconstruction reconstruct_from_artifacts(const ExperimentConfig& cfg,
                                                  const std::string& artifact_dir,
                                                  const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path in(artifact_dir);

  nlohmann::json graph_j;
  nlohmann::json selection_j;
  try {
    graph_j = nlohmann::json::parse(io::read_text_file((in / "graph.json").string()));
    selection_j = nlohmann::json::parse(io::read_text_file((in / "selection.json").string()));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse artifacts in '" + artifact_dir + "': " + e.what());
  }

  ArtifactReconstruction res;
  res.graph = io::parse_graph_json(graph_j);
  res.signals = io::parse_signals_csv(io::read_text_file((in / "signals.csv").string()));
  if (res.signals.rows() != res.graph.n) {
    throw ConfigError("saved signals have " + std::to_string(res.signals.rows()) +
                      " rows but the graph has " + std::to_string(res.graph.n) + " nodes");
  }

  GeneratorSpec spec;
  try {
    spec.coefficients = selection_j.at("gamma").get<std::vector<double>>();
    res.P = selection_j.at("P").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("selection.json is missing fields: ") + e.what());
  }
  spec.order = static_cast<int>(spec.coefficients.size());
  spec.coefficient_seed = cfg.seeds.coefficients;

  const Matrixd laplacian =
      stage("normalized_laplacian", [&] { return normalized_laplacian(res.graph); });
  res.b = stage("build_generator", [&] { return build_generator(laplacian, spec); });
  const Matrixd c = stage("synthesize_coefficients", [&] {
    return synthesize_coefficients(res.graph.n, resolved_signal_spec(cfg));
  });
  if (c.cols() != res.signals.cols() ||
      (res.signals - res.b * c).norm() > tol_rel(1e-9, res.signals.norm())) {
    throw ConfigError("saved signals do not match the config (different seeds or specs?)");
  }

  fs::create_directories(out_dir);
  nlohmann::json report;
  report["P"] = res.P;
  report["gamma"] = spec.coefficients;
  report["schemes"] = nlohmann::json::object();
  const nlohmann::json& schemes_j = selection_j.at("schemes");
  for (const std::string name : {"svd", "samp"}) {  // svd first, matching run order
    if (!schemes_j.contains(name)) continue;
    const nlohmann::json& sel_j = schemes_j.at(name);
    SchemeOutcome out;
    out.scheme = io::scheme_from_string(name);
    out.selection = io::selection_from_json(sel_j);
    if (out.scheme == Scheme::svd) {
      out.factorization = stage("approx_svd", [&] { return approx_svd(res.b, res.P); });
      out.factorization.selected_set = out.selection.selected;
    } else {
      out.factorization =
          stage("approx_samp", [&] { return approx_samp(res.b, out.selection.selected); });
    }
    out.op = make_operator(res.graph.n, out.selection.selected);
    const Matrixd y_s = subsample(res.signals, out.op);
    const Matrixd y_hat =
        stage("reconstruct", [&] { return reconstruct(y_s, out.factorization, out.op); });
    out.report = stage("error_report", [&] {
      return error_report(res.signals, y_hat, res.b, out.factorization, c, out.op);
    });
    io::write_text_file((fs::path(out_dir) / ("reconstructed_" + name + ".csv")).string(),
                        io::signals_csv(out.report.y_hat));
    nlohmann::json r = io::report_to_json(out.report);
    r["selected"] = out.selection.selected;
    report["schemes"][name] = std::move(r);
    res.outcomes.push_back(std::move(out));
  }
  io::write_text_file((fs::path(out_dir) / "report.json").string(), report.dump(2) + "\n");
  return res;
}

std::vector<AlphaSweepRow> sweep_alpha(const ExperimentConfig& base,
                                       const std::vector<double>& alphas) {
  if (base.graph.kind != GraphKind::figure1a) {
    throw ConfigError("sweep_alpha requires a graph template with an alpha parameter (figure1a)");
  }
  std::vector<AlphaSweepRow> rows;
  for (double alpha : alphas) {
    ExperimentConfig cfg = base;
    cfg.graph.alpha = alpha;
    const ExperimentResult res = run_experiment(cfg);
    AlphaSweepRow row;
    row.alpha = alpha;
    row.sigma2 = res.singular_values(res.b.rows() - 2);
    row.corr_24 = std::abs(signal_correlation(res.signals, 1, 3));
    row.corr_15 = std::abs(signal_correlation(res.signals, 0, 4));
    // scheme=both reports the svd column
    const Scheme wanted = base.scheme == SchemeChoice::samp ? Scheme::samp : Scheme::svd;
    for (const SchemeOutcome& out : res.outcomes) {
      if (out.scheme == wanted) row.error_db = out.report.error_db;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string alpha_sweep_csv(const std::vector<AlphaSweepRow>& rows) {
  std::ostringstream out;
  out << "alpha,sigma2,corr_24,corr_15,error_db\n";
  for (const AlphaSweepRow& r : rows) {
    out << io::format_full(r.alpha) << "," << io::format_full(r.sigma2) << ","
        << io::format_full(r.corr_24) << "," << io::format_full(r.corr_15) << ","
        << io::format_full(r.error_db) << "\n";
  }
  return out.str();
}

std::string summary_csv(const std::vector<SuiteRow>& rows) {
  std::ostringstream out;
  out << "family,epsilon,scheme,P,error_db,cond_ast\n";
  for (const SuiteRow& r : rows) {
    out << r.family << "," << io::format_full(r.epsilon) << "," << r.scheme << "," << r.P << ","
        << io::format_full(r.error_db) << "," << io::format_full(r.cond_ast) << "\n";
  }
  return out.str();
}

std::vector<SuiteRow> run_suite_file(const std::string& suite_path, const std::string& out_dir) {
  nlohmann::json suite;
  try {
    suite = nlohmann::json::parse(io::read_text_file(suite_path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse suite '" + suite_path + "': " + e.what());
  }
  if (!suite.is_array()) throw ConfigError("suite file must contain a JSON array of configs");

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::vector<SuiteRow> rows;
  for (std::size_t idx = 0; idx < suite.size(); ++idx) {
    const nlohmann::json& entry = suite[idx];
    SuiteRow base;
    base.family = "invalid";
    if (entry.is_object()) {
      if (entry.contains("name") && entry["name"].is_string()) {
        base.family = entry["name"].get<std::string>();
      } else if (entry.contains("graph") && entry["graph"].is_object() &&
                 entry["graph"].contains("kind") && entry["graph"]["kind"].is_string()) {
        base.family = entry["graph"]["kind"].get<std::string>();
      }
      if (entry.contains("epsilon") && entry["epsilon"].is_number()) {
        base.epsilon = entry["epsilon"].get<double>();
      }
      if (entry.contains("scheme") && entry["scheme"].is_string()) {
        base.scheme = entry["scheme"].get<std::string>();
      }
    }
    try {
      ExperimentConfig cfg = io::parse_experiment_config(entry);
      std::ostringstream dirname;
      dirname << "run_" << idx << "_" << family_label(cfg.graph);
      const std::string run_dir =
          cfg.output_dir.empty() ? (fs::path(out_dir) / dirname.str()).string() : cfg.output_dir;
      const ExperimentResult res = run_experiment(cfg);
      write_experiment_outputs(cfg, res, run_dir);
      for (const SchemeOutcome& out : res.outcomes) {
        SuiteRow row = base;
        row.epsilon = cfg.epsilon;
        if (row.family == "invalid") row.family = family_label(cfg.graph);
        row.scheme = to_string(out.scheme);
        row.P = res.rank.P;
        row.error_db = out.report.error_db;
        row.cond_ast = out.report.cond_ast;
        row.failed = false;
        rows.push_back(std::move(row));
      }
    } catch (const std::exception& e) {
      SuiteRow row = base;
      if (row.scheme.empty()) row.scheme = "both";
      row.failed = true;
      row.message = e.what();
      rows.push_back(std::move(row));
    }
  }
  io::write_text_file((fs::path(out_dir) / "summary.csv").string(), summary_csv(rows));
  return rows;
}

}  // namespace gss
