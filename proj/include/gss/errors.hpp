#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gss {

/// Invalid user-facing input: graph templates, generator/signal specs, experiment
/// configs, CLI arguments. Mapped to exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runtime numerical failure: SVD non-convergence, undefined correlation,
/// zero-signal error ratios. Mapped to exit code 3 by the CLI.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A square solve hit a numerically singular operator (condition estimate above
/// 1/sqrt(machine epsilon)). Carries the estimate and, when known, the node set
/// whose sampling operator failed, so callers can re-select.
class SingularOperatorError : public NumericalError {
 public:
  SingularOperatorError(const std::string& message, double condition,
                        std::vector<int> selected = {})
      : NumericalError(message), condition_(condition), selected_(std::move(selected)) {}

  double condition() const { return condition_; }
  const std::vector<int>& selected() const { return selected_; }

 private:
  double condition_;
  std::vector<int> selected_;
};

}  // namespace gss
