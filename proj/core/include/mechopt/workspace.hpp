#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mechopt/mechanism.hpp"

// Required-workspace generation and design evaluation: which tilts in the
// demanded cone a design can serve with acceptable dexterity, which leg
// lengths that demands, and whether an off-the-shelf actuator window can
// cover those lengths.

namespace mechopt {

/// Required orientation workspace: a tilt cone of half-angle theta_max,
/// sampled on a resolution x resolution grid masked to the cone disc, plus
/// the dexterity floor a served orientation must meet.
struct WorkspaceSpec {
  double theta_max{0.5235987755982988}; ///< rad, default 30 deg
  int resolution{21};                   ///< samples per tilt axis, >= 2
  double dexterity_threshold{0.1};      ///< in (0, 1)
};

/// Prismatic actuator family: candidate operating windows are
/// [L, L + stroke] with L = min_closed_length + k * search_step, k >= 0.
struct ActuatorModel {
  double min_closed_length{0.0}; ///< m, smallest admissible retracted length
  double stroke{0.0};            ///< m, window width
  double search_step{0.0};       ///< m, discretization of window starts
};

/// One admissible actuator operating window [lo, hi], hi = lo + stroke.
struct ActuatorWindow {
  double lo{0.0};
  double hi{0.0};
};

/// Observed per-leg length extremes over the covered grid points.
struct LengthRange {
  double lo{0.0};
  double hi{0.0};
};

/// Per-grid-point evaluation record (one row of the workspace map).
struct GridPointSample {
  TiltOrientation q;
  double rho1{0.0};
  double rho2{0.0};
  double dexterity{0.0};
  double det_j{0.0};
  bool covered{false};
  bool degenerate{false};
};

struct WorkspaceEvaluation {
  double coverage{0.0};      ///< covered fraction of the required grid
  double min_dexterity{0.0}; ///< worst dexterity over covered points, 0 if none
  LengthRange rho1_range;
  LengthRange rho2_range;
  std::vector<ActuatorWindow> feasible_brackets;
  bool feasible{false};      ///< full coverage and at least one bracket
  std::size_t grid_points{0};
  std::size_t covered_points{0};
};

/// det(J) at one grid point; per-point kinematic failures surface as
/// degenerate entries with det 0 rather than as errors.
struct SingularitySample {
  TiltOrientation q;
  double det_j{0.0};
  bool degenerate{false};
};

void validate_workspace_spec(const WorkspaceSpec& spec);
void validate_actuator(const ActuatorModel& act);

/// Equispaced resolution^2 grid over [-theta_max, theta_max]^2 masked to the
/// disc sqrt(alpha^2 + beta^2) <= theta_max, row-major by alpha then beta.
[[nodiscard]] std::vector<TiltOrientation> generate_grid(const WorkspaceSpec& spec);

/// Per-point classification used by evaluate_design: a point is covered iff
/// both legs are non-degenerate and dexterity meets the threshold. Depends
/// only on (d, q, threshold), never on the surrounding grid.
[[nodiscard]] GridPointSample sample_point(const DesignParameters& d, const TiltOrientation& q,
                                           double dexterity_threshold);

/// Maps sample_point over the workspace grid (parallel across points, output
/// in deterministic grid order). Validates d and spec up front.
[[nodiscard]] std::vector<GridPointSample> sample_workspace(const DesignParameters& d,
                                                            const WorkspaceSpec& spec);

/// Full design evaluation: coverage, worst covered dexterity, per-leg length
/// ranges over covered points, and the feasible actuator windows for the
/// pooled covered lengths. feasible = full coverage and a non-empty window
/// list. Per-point kinematic failures are data (uncovered), not errors.
[[nodiscard]] WorkspaceEvaluation evaluate_design(const DesignParameters& d,
                                                  const WorkspaceSpec& spec,
                                                  const ActuatorModel& act);

/// All windows [L, L + stroke] with L on the actuator's start grid, L <= lo
/// and hi <= L + stroke, where [lo, hi] spans every length of both legs.
/// Feasibility comparisons carry a 1e-12 m slack so representable boundary
/// cases are kept. Empty result iff the span exceeds the stroke or no
/// admissible start exists. Throws DomainError on empty or non-positive input.
[[nodiscard]] std::vector<ActuatorWindow> actuator_bracket_search(std::span<const LegLengths> lengths,
                                                                  const ActuatorModel& act);

/// det(J) over the workspace grid; sign changes between neighbors locate
/// singularity-curve crossings. Degenerate points report det 0.
[[nodiscard]] std::vector<SingularitySample> singularity_map(const DesignParameters& d,
                                                             const WorkspaceSpec& spec);

} // namespace mechopt
