#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mechopt/errors.hpp"

// Derivative-free simplex minimizer (Nelder-Mead) with deterministic
// axis-aligned initialization and deterministic restarts. No randomized
// steps anywhere: identical inputs give identical traces.

namespace mechopt {

enum class Termination : std::uint8_t {
  FTol,     ///< simplex function spread collapsed
  XTol,     ///< simplex diameter collapsed
  MaxEvals, ///< evaluation budget exhausted
};

[[nodiscard]] std::string to_string(Termination t);

struct OptimizerConfig {
  double reflection{1.0};
  double expansion{2.0};
  double contraction{0.5};
  double shrink{0.5};
  /// Per-axis initial simplex offset as a fraction of the axis span (the box
  /// span when optimizing over a ParameterSpace, unit span otherwise).
  double initial_simplex_scale{0.05};
  /// Relative function-spread termination: spread <= f_tol * (|f_best| + |f_worst|).
  double f_tol{1e-9};
  /// Absolute simplex-diameter termination (inf-norm from the best vertex).
  double x_tol{1e-9};
  int max_evals{20000};
  /// Additional deterministic restarts from the best point, simplex re-seeded
  /// with a 10x smaller offset each time.
  int restarts{3};
};

struct TracePoint {
  long eval_index{0}; ///< 1-based evaluation counter
  double best_f{0.0}; ///< best value seen up to and including this evaluation
};

struct OptimizationResult {
  std::vector<double> best_x;
  double best_f{0.0};
  long evals{0};
  std::vector<TracePoint> trace; ///< one point per evaluation, non-increasing
  Termination termination{Termination::MaxEvals};
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

void validate_optimizer_config(const OptimizerConfig& cfg);

/// One simplex run: order, reflect, expand, contract (outside/inside), shrink
/// with the configured coefficients. The initial simplex is x0 plus one
/// per-axis offset vertex; `steps`, when non-empty, overrides the offset per
/// axis (length n), otherwise initial_simplex_scale is used on a unit span.
/// Non-finite objective values are treated as +inf (vertex rejected); a
/// non-finite value at x0 itself is a DomainError.
[[nodiscard]] OptimizationResult nelder_mead(const ObjectiveFn& f, std::span<const double> x0,
                                             const OptimizerConfig& cfg,
                                             std::span<const double> steps = {});

/// cfg.restarts additional runs chained after the first, each re-initialized
/// at the best point so far with decayed offsets, all within one shared
/// cfg.max_evals budget. Evaluation indices and the trace run through the
/// whole sequence.
[[nodiscard]] OptimizationResult nelder_mead_restarted(const ObjectiveFn& f,
                                                       std::span<const double> x0,
                                                       const OptimizerConfig& cfg,
                                                       std::span<const double> steps = {});

} // namespace mechopt
