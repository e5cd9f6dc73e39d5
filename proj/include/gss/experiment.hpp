#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gss/generator.hpp"
#include "gss/graph.hpp"
#include "gss/lowrank.hpp"
#include "gss/reconstruct.hpp"
#include "gss/selection.hpp"

namespace gss {

enum class SchemeChoice { svd, samp, both };

inline const char* to_string(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::svd: return "svd";
    case SchemeChoice::samp: return "samp";
    case SchemeChoice::both: return "both";
  }
  return "both";
}

/// All randomness flows from these three seeds; there is no global RNG state.
struct Seeds {
  std::uint64_t graph = 1;
  std::uint64_t coefficients = 1;
  std::uint64_t signal = 3;
};

struct ExperimentConfig {
  GraphTemplate graph;
  int generator_order = 5;
  std::vector<double> generator_coefficients;  // empty: drawn from seeds.coefficients
  SignalSpec signal;
  double epsilon = 0.03;
  SchemeChoice scheme = SchemeChoice::both;
  Seeds seeds;
  std::string output_dir;
  GreedyOptions greedy;
};

void validate(const ExperimentConfig& cfg);

/// Resolves seeds into the component specs and materializes the generator
/// coefficients, so downstream stages see fully deterministic inputs.
GraphTemplate resolved_graph_template(const ExperimentConfig& cfg);
GeneratorSpec resolved_generator_spec(const ExperimentConfig& cfg);
SignalSpec resolved_signal_spec(const ExperimentConfig& cfg);

struct SchemeOutcome {
  Scheme scheme = Scheme::svd;
  SelectionResult selection;
  LowRankFactorization factorization;
  SubsamplingOperator op;
  ReconstructionReport report;
};

struct ExperimentResult {
  WeightedGraph graph;
  Matrixd laplacian;
  GeneratorSpec generator;  // realized coefficients
  Matrixd b;
  Vectord singular_values;  // of B, nonincreasing
  RankSelection rank;
  Matrixd coefficients;  // C, N x T
  Matrixd signals;       // Y = B C
  std::vector<SchemeOutcome> outcomes;
};

/// Full pipeline: graph -> Laplacian -> generator -> signals -> rank -> per
/// scheme: selection -> approximation -> reconstruction -> error report.
/// Stage failures rethrow with the stage name attached.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes graph.json, signals.csv, selection.json, report.json into out_dir.
/// Identical configs produce byte-identical files.
void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& res,
                              const std::string& out_dir);

struct SchemeSelection {
  Scheme scheme = Scheme::svd;
  SelectionResult selection;
  LowRankFactorization factorization;
};

struct SelectionOnlyResult {
  WeightedGraph graph;
  Matrixd laplacian;
  GeneratorSpec generator;
  Matrixd b;
  Vectord singular_values;
  RankSelection rank;
  std::vector<SchemeSelection> schemes;
};

/// Pipeline through selection and approximation only; no reconstruction, so it
/// succeeds even when A_S T would be singular.
SelectionOnlyResult run_selection(const ExperimentConfig& cfg);

/// Writes graph.json, selection.json, factorization.json into out_dir.
void write_selection_outputs(const ExperimentConfig& cfg, const SelectionOnlyResult& res,
                             const std::string& out_dir);

struct AlphaSweepRow {
  double alpha = 0.0;
  double sigma2 = 0.0;   // second-smallest singular value of B
  double corr_24 = 0.0;  // |corr| of the alpha-weighted pair (1,3), 1-based label 2-4
  double corr_15 = 0.0;  // |corr| of the alpha-weighted pair (0,4), 1-based label 1-5
  double error_db = 0.0;
};

std::vector<AlphaSweepRow> sweep_alpha(const ExperimentConfig& base,
                                       const std::vector<double>& alphas);

std::string alpha_sweep_csv(const std::vector<AlphaSweepRow>& rows);

struct ArtifactReconstruction {
  WeightedGraph graph;
  Matrixd b;
  Matrixd signals;
  int P = 0;
  std::vector<SchemeOutcome> outcomes;
};

/// Rebuilds B from saved graph.json plus the realized coefficients recorded in
/// selection.json, reconstructs from the saved signals at the saved selection,
/// and writes report.json plus reconstructed_<scheme>.csv into out_dir. The
/// config must be the one that produced the artifacts (cross-checked).
ArtifactReconstruction reconstruct_from_artifacts(const ExperimentConfig& cfg,
                                                  const std::string& artifact_dir,
                                                  const std::string& out_dir);

struct SuiteRow {
  std::string family;
  double epsilon = 0.0;
  std::string scheme;
  int P = -1;
  double error_db = std::numeric_limits<double>::quiet_NaN();
  double cond_ast = std::numeric_limits<double>::quiet_NaN();
  bool failed = false;
  std::string message;  // failure reason, not serialized into the CSV
};

/// Batch driver: one row per (config, scheme). Per-entry failures are flagged
/// (P = -1, nan metrics) and the run continues. Writes out_dir/summary.csv.
std::vector<SuiteRow> run_suite_file(const std::string& suite_path, const std::string& out_dir);

std::string summary_csv(const std::vector<SuiteRow>& rows);

}  // namespace gss
