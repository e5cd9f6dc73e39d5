#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gss/experiment.hpp"
#include "gss/io.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::string scheme;
  double epsilon = -1.0;
  bool rowsum_active_only = false;
  std::uint64_t seed_graph = 0;
  std::uint64_t seed_coefficients = 0;
  std::uint64_t seed_signal = 0;
  bool has_seed_graph = false;
  bool has_seed_coefficients = false;
  bool has_seed_signal = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_overrides = true) {
  cmd->add_option("-c,--config", opts.config_path, "experiment config (JSON)")->required();
  cmd->add_option("-o,--out", opts.out_dir, "output directory (default: config output_dir)");
  if (!with_overrides) return;
  cmd->add_option("--scheme", opts.scheme, "override scheme: svd, samp or both");
  cmd->add_option("--epsilon", opts.epsilon, "override epsilon (0, 1)");
  cmd->add_flag("--rowsum-active-only", opts.rowsum_active_only,
                "greedy variant: row sums over the surviving set only");
  cmd->add_option("--seed-graph", opts.seed_graph, "override graph seed")
      ->each([&](const std::string&) { opts.has_seed_graph = true; });
  cmd->add_option("--seed-coefficients", opts.seed_coefficients, "override coefficient seed")
      ->each([&](const std::string&) { opts.has_seed_coefficients = true; });
  cmd->add_option("--seed-signal", opts.seed_signal, "override signal seed")
      ->each([&](const std::string&) { opts.has_seed_signal = true; });
}

gss::ExperimentConfig load_with_overrides(const CommonOptions& opts) {
  gss::ExperimentConfig cfg = gss::io::load_experiment_config(opts.config_path);
  if (!opts.scheme.empty()) cfg.scheme = gss::io::scheme_choice_from_string(opts.scheme);
  if (opts.epsilon >= 0.0) cfg.epsilon = opts.epsilon;
  if (opts.rowsum_active_only) cfg.greedy.rowsum_active_only = true;
  if (opts.has_seed_graph) cfg.seeds.graph = opts.seed_graph;
  if (opts.has_seed_coefficients) cfg.seeds.coefficients = opts.seed_coefficients;
  if (opts.has_seed_signal) cfg.seeds.signal = opts.seed_signal;
  gss::validate(cfg);
  return cfg;
}

std::string output_dir_of(const CommonOptions& opts, const gss::ExperimentConfig& cfg) {
  if (!opts.out_dir.empty()) return opts.out_dir;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  return ".";
}

std::vector<double> parse_alpha_list(const std::string& csv) {
  std::vector<double> alphas;
  std::istringstream in(csv);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      alphas.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw gss::ConfigError("cannot parse alpha value '" + cell + "'");
    }
  }
  if (alphas.empty()) throw gss::ConfigError("alpha list is empty");
  return alphas;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generative-model graph-signal subsampling: selection and reconstruction"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "full experiment pipeline");
  add_common(run_cmd, run_opts);

  CommonOptions gen_opts;
  CLI::App* gen_cmd = app.add_subcommand("gen-graph", "build the graph and write graph.json");
  add_common(gen_cmd, gen_opts);

  CommonOptions select_opts;
  CLI::App* select_cmd =
      app.add_subcommand("select", "selection only: graph, selection and factorization files");
  add_common(select_cmd, select_opts);

  CommonOptions recon_opts;
  std::string artifact_dir;
  CLI::App* recon_cmd =
      app.add_subcommand("reconstruct", "reconstruct from saved artifacts (run outputs)");
  add_common(recon_cmd, recon_opts);
  recon_cmd->add_option("-i,--in", artifact_dir, "artifact directory (graph.json, signals.csv, selection.json)")
      ->required();

  CommonOptions sweep_opts;
  std::string alpha_csv = "1,2,3,4,5";
  CLI::App* sweep_cmd = app.add_subcommand("sweep-alpha", "alpha sweep on the figure1a template");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--alphas", alpha_csv, "comma-separated alpha values (default 1,2,3,4,5)");

  CommonOptions suite_opts;
  CLI::App* suite_cmd = app.add_subcommand("suite", "run a JSON array of configs, write summary.csv");
  add_common(suite_cmd, suite_opts, /*with_overrides=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      const gss::ExperimentConfig cfg = load_with_overrides(run_opts);
      const gss::ExperimentResult res = gss::run_experiment(cfg);
      const std::string dir = output_dir_of(run_opts, cfg);
      gss::write_experiment_outputs(cfg, res, dir);
      std::cout << "P = " << res.rank.P << " (epsilon = " << cfg.epsilon << ")\n";
      for (const gss::SchemeOutcome& out : res.outcomes) {
        std::cout << gss::to_string(out.scheme) << ": error " << out.report.error_db
                  << " dB, cond(A_S T) = " << out.report.cond_ast << "\n";
      }
      std::cout << "wrote " << dir << "/{graph.json,signals.csv,selection.json,report.json}\n";
    } else if (gen_cmd->parsed()) {
      const gss::ExperimentConfig cfg = load_with_overrides(gen_opts);
      const gss::WeightedGraph g = gss::build_graph(gss::resolved_graph_template(cfg));
      const std::string dir = output_dir_of(gen_opts, cfg);
      gss::io::write_text_file(dir + "/graph.json",
                               gss::io::graph_json(g, gss::resolved_graph_template(cfg)));
      std::cout << "wrote " << dir << "/graph.json (" << g.n << " nodes)\n";
    } else if (select_cmd->parsed()) {
      const gss::ExperimentConfig cfg = load_with_overrides(select_opts);
      const gss::SelectionOnlyResult res = gss::run_selection(cfg);
      const std::string dir = output_dir_of(select_opts, cfg);
      gss::write_selection_outputs(cfg, res, dir);
      std::cout << "P = " << res.rank.P << "\n";
      for (const gss::SchemeSelection& s : res.schemes) {
        std::cout << gss::to_string(s.scheme) << " selected:";
        for (int v : s.selection.selected) std::cout << " " << v;
        std::cout << "\n";
      }
      std::cout << "wrote " << dir << "/{graph.json,selection.json,factorization.json}\n";
    } else if (recon_cmd->parsed()) {
      const gss::ExperimentConfig cfg = load_with_overrides(recon_opts);
      const std::string dir = output_dir_of(recon_opts, cfg);
      const gss::ArtifactReconstruction res =
          gss::reconstruct_from_artifacts(cfg, artifact_dir, dir);
      for (const gss::SchemeOutcome& out : res.outcomes) {
        std::cout << gss::to_string(out.scheme) << ": error " << out.report.error_db << " dB\n";
      }
      std::cout << "wrote " << dir << "/report.json and reconstructed_<scheme>.csv\n";
    } else if (sweep_cmd->parsed()) {
      const gss::ExperimentConfig cfg = load_with_overrides(sweep_opts);
      const std::vector<double> alphas = parse_alpha_list(alpha_csv);
      const std::vector<gss::AlphaSweepRow> rows = gss::sweep_alpha(cfg, alphas);
      const std::string dir = output_dir_of(sweep_opts, cfg);
      gss::io::write_text_file(dir + "/alpha_sweep.csv", gss::alpha_sweep_csv(rows));
      std::cout << "wrote " << dir << "/alpha_sweep.csv (" << rows.size() << " rows)\n";
    } else if (suite_cmd->parsed()) {
      const std::string dir = suite_opts.out_dir.empty() ? "." : suite_opts.out_dir;
      const std::vector<gss::SuiteRow> rows = gss::run_suite_file(suite_opts.config_path, dir);
      int failed = 0;
      for (const gss::SuiteRow& row : rows) {
        if (row.failed) {
          ++failed;
          std::cerr << "failed: " << row.family << ": " << row.message << "\n";
        }
      }
      std::cout << "wrote " << dir << "/summary.csv (" << rows.size() << " rows, " << failed
                << " failed)\n";
    }
  } catch (const gss::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gss::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
