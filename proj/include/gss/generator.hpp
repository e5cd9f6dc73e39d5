#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gss/numerics.hpp"
#include "gss/rng.hpp"

namespace gss {

/// Polynomial generator B = sum_{k=1..K} gamma_k L^k. Coefficients are always
/// materialized (explicit or drawn once from coefficient_seed), so runs are
/// reproducible ex post from recorded metadata.
struct GeneratorSpec {
  int order = 1;                     // K
  std::vector<double> coefficients;  // gamma_1..gamma_K
  std::uint64_t coefficient_seed = 0;
};

inline void validate(const GeneratorSpec& spec) {
  if (spec.order < 1) throw ConfigError("generator order K must be at least 1");
  if (static_cast<int>(spec.coefficients.size()) != spec.order) {
    throw ConfigError("generator expects " + std::to_string(spec.order) + " coefficients, got " +
                      std::to_string(spec.coefficients.size()));
  }
  bool any_nonzero = false;
  for (double g : spec.coefficients) {
    if (!std::isfinite(g)) throw ConfigError("generator coefficients must be finite");
    any_nonzero = any_nonzero || g != 0.0;
  }
  if (!any_nonzero) throw ConfigError("generator coefficients must not all be zero");
}

inline GeneratorSpec random_generator_spec(int order, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.order = order;
  spec.coefficient_seed = seed;
  spec.coefficients.resize(static_cast<std::size_t>(std::max(order, 0)));
  for (int k = 0; k < order; ++k) {
    spec.coefficients[static_cast<std::size_t>(k)] =
        rng::normal(rng::derive(seed, rng::kGamma, static_cast<std::uint64_t>(k)));
  }
  validate(spec);
  return spec;
}

/// B = sum gamma_k L^k by iterated multiplication, keeping the value
/// independent of any eigensolver choice.
inline Matrixd build_generator(const Matrixd& laplacian, const GeneratorSpec& spec) {
  validate(spec);
  if (laplacian.rows() != laplacian.cols()) {
    throw std::invalid_argument("build_generator: operator must be square, got " +
                                std::to_string(laplacian.rows()) + "x" +
                                std::to_string(laplacian.cols()));
  }
  ensure_finite(laplacian, "build_generator operator");
  const double sym = (laplacian - laplacian.transpose()).norm();
  if (sym > tol_rel(1e-10, std::max(1.0, laplacian.norm()))) {
    throw std::invalid_argument("build_generator: operator is not symmetric");
  }
  Matrixd power = laplacian;
  Matrixd b = spec.coefficients[0] * laplacian;
  for (int k = 2; k <= spec.order; ++k) {
    power = power * laplacian;
    b += spec.coefficients[static_cast<std::size_t>(k - 1)] * power;
  }
  return b;
}

enum class SignalMode { random_sinusoids, iid_gaussian_per_t };

struct SignalSpec {
  int time_samples = 256;  // T
  SignalMode mode = SignalMode::random_sinusoids;
  int harmonics = 3;  // H, sinusoid mode only
  std::uint64_t signal_seed = 0;
};

inline void validate(const SignalSpec& spec) {
  if (spec.time_samples < 1) throw ConfigError("signal time_samples must be at least 1");
  if (spec.harmonics < 1) throw ConfigError("signal harmonics must be at least 1");
}

/// Latent coefficients c(t), one row per node. Sinusoid mode draws H amplitude
/// and phase pairs per node and superposes low-frequency sinusoids, giving
/// smooth periodic rows; the iid mode fills entries with unit normals.
inline Matrixd synthesize_coefficients(int n, const SignalSpec& spec) {
  validate(spec);
  if (n < 1) throw std::invalid_argument("synthesize_coefficients: node count must be positive");
  const int t_len = spec.time_samples;
  Matrixd c(n, t_len);
  if (spec.mode == SignalMode::iid_gaussian_per_t) {
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < t_len; ++t) {
        c(i, t) = rng::normal(rng::derive(spec.signal_seed, rng::kGaussian,
                                          static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(t)));
      }
    }
    return c;
  }
  c.setZero();
  for (int i = 0; i < n; ++i) {
    for (int h = 1; h <= spec.harmonics; ++h) {
      const std::uint64_t key = rng::derive(spec.signal_seed, rng::kAmplitude,
                                            static_cast<std::uint64_t>(i),
                                            static_cast<std::uint64_t>(h));
      const std::uint64_t pkey = rng::derive(spec.signal_seed, rng::kPhase,
                                             static_cast<std::uint64_t>(i),
                                             static_cast<std::uint64_t>(h));
      const double amp = rng::normal(key);
      const double phase = 2.0 * std::numbers::pi * rng::uniform01(pkey);
      for (int t = 0; t < t_len; ++t) {
        c(i, t) += amp * std::sin(2.0 * std::numbers::pi * h * t / t_len + phase);
      }
    }
  }
  return c;
}

/// Measurement model y = B c.
inline Matrixd generate_signals(const Matrixd& b, const Matrixd& c) {
  return matmul(b, c);
}

/// Pearson correlation across time between node rows i and j.
inline double signal_correlation(const Matrixd& y, int i, int j) {
  if (i < 0 || i >= y.rows() || j < 0 || j >= y.rows()) {
    throw std::invalid_argument("signal_correlation: node index out of range");
  }
  if (y.cols() < 2) {
    throw std::invalid_argument("signal_correlation needs at least 2 time samples");
  }
  const Vectord a = y.row(i).transpose();
  const Vectord b = y.row(j).transpose();
  const Vectord ca = a.array() - a.mean();
  const Vectord cb = b.array() - b.mean();
  const double na = ca.norm();
  const double nb = cb.norm();
  if (na == 0.0 || nb == 0.0) {
    throw NumericalError("correlation undefined: node " + std::to_string(na == 0.0 ? i : j) +
                         " has a constant signal");
  }
  return std::clamp(ca.dot(cb) / (na * nb), -1.0, 1.0);
}

}  // namespace gss
