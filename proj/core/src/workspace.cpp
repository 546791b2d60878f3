#include "mechopt/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mechopt/parallel.hpp"

namespace mechopt {

namespace {

// Absolute slack for actuator window feasibility comparisons, meters.
constexpr double kBracketSlack = 1e-12;

std::vector<double> axis_values(const WorkspaceSpec& spec) {
  std::vector<double> values(static_cast<std::size_t>(spec.resolution));
  const double n1 = static_cast<double>(spec.resolution - 1);
  for (int i = 0; i < spec.resolution; ++i) {
    values[static_cast<std::size_t>(i)] = spec.theta_max * (2.0 * i / n1 - 1.0);
  }
  return values;
}

} // namespace

void validate_workspace_spec(const WorkspaceSpec& spec) {
  if (!std::isfinite(spec.theta_max) || spec.theta_max <= 0.0 || spec.theta_max >= kTiltLimit) {
    throw DomainError("workspace theta_max must lie in (0, pi/2)");
  }
  if (spec.resolution < 2) {
    throw DomainError("workspace resolution must be at least 2");
  }
  if (!std::isfinite(spec.dexterity_threshold) || spec.dexterity_threshold <= 0.0 ||
      spec.dexterity_threshold >= 1.0) {
    throw DomainError("dexterity threshold must lie in (0, 1)");
  }
}

void validate_actuator(const ActuatorModel& act) {
  if (!std::isfinite(act.min_closed_length) || act.min_closed_length <= 0.0) {
    throw DomainError("actuator min_closed_length must be positive");
  }
  if (!std::isfinite(act.stroke) || act.stroke <= 0.0) {
    throw DomainError("actuator stroke must be positive");
  }
  if (!std::isfinite(act.search_step) || act.search_step <= 0.0) {
    throw DomainError("actuator search_step must be positive");
  }
}

std::vector<TiltOrientation> generate_grid(const WorkspaceSpec& spec) {
  validate_workspace_spec(spec);
  const std::vector<double> values = axis_values(spec);
  const double disc_sq = spec.theta_max * spec.theta_max;
  std::vector<TiltOrientation> grid;
  grid.reserve(values.size() * values.size());
  for (double alpha : values) {
    for (double beta : values) {
      if (alpha * alpha + beta * beta <= disc_sq) {
        grid.push_back(TiltOrientation{alpha, beta});
      }
    }
  }
  return grid;
}

GridPointSample sample_point(const DesignParameters& d, const TiltOrientation& q,
                             double dexterity_threshold) {
  GridPointSample s;
  s.q = q;
  try {
    const LegLengths lengths = inverse_kinematics(d, q);
    const Mat2 j = jacobian(d, q);
    s.rho1 = lengths.rho1;
    s.rho2 = lengths.rho2;
    s.dexterity = inverse_condition_number(j);
    s.det_j = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
    s.covered = s.dexterity >= dexterity_threshold;
  } catch (const DomainError&) {
    // Degenerate leg at this pose: report as uncovered data, not an error.
    s = GridPointSample{};
    s.q = q;
    s.degenerate = true;
  }
  return s;
}

std::vector<GridPointSample> sample_workspace(const DesignParameters& d,
                                              const WorkspaceSpec& spec) {
  validate_design(d);
  const std::vector<TiltOrientation> grid = generate_grid(spec);
  std::vector<GridPointSample> samples(grid.size());
  parallel_for_chunks(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      samples[i] = sample_point(d, grid[i], spec.dexterity_threshold);
    }
  });
  return samples;
}

WorkspaceEvaluation evaluate_design(const DesignParameters& d, const WorkspaceSpec& spec,
                                    const ActuatorModel& act) {
  validate_actuator(act);
  const std::vector<GridPointSample> samples = sample_workspace(d, spec);

  WorkspaceEvaluation ev;
  ev.grid_points = samples.size();
  std::vector<LegLengths> covered_lengths;
  covered_lengths.reserve(samples.size());
  double min_dex = std::numeric_limits<double>::infinity();
  LengthRange r1{std::numeric_limits<double>::infinity(), 0.0};
  LengthRange r2{std::numeric_limits<double>::infinity(), 0.0};
  for (const GridPointSample& s : samples) {
    if (!s.covered) {
      continue;
    }
    ++ev.covered_points;
    min_dex = std::min(min_dex, s.dexterity);
    r1.lo = std::min(r1.lo, s.rho1);
    r1.hi = std::max(r1.hi, s.rho1);
    r2.lo = std::min(r2.lo, s.rho2);
    r2.hi = std::max(r2.hi, s.rho2);
    covered_lengths.push_back(LegLengths{s.rho1, s.rho2});
  }

  if (ev.covered_points > 0) {
    ev.coverage = static_cast<double>(ev.covered_points) / static_cast<double>(ev.grid_points);
    ev.min_dexterity = min_dex;
    ev.rho1_range = r1;
    ev.rho2_range = r2;
    ev.feasible_brackets = actuator_bracket_search(covered_lengths, act);
  }
  ev.feasible = ev.covered_points == ev.grid_points && !ev.feasible_brackets.empty();
  return ev;
}

std::vector<ActuatorWindow> actuator_bracket_search(std::span<const LegLengths> lengths,
                                                    const ActuatorModel& act) {
  validate_actuator(act);
  if (lengths.empty()) {
    throw DomainError("bracket search requires at least one length pair");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const LegLengths& l : lengths) {
    if (!(l.rho1 > 0.0) || !(l.rho2 > 0.0)) {
      throw DomainError("bracket search requires positive lengths");
    }
    lo = std::min(lo, std::min(l.rho1, l.rho2));
    hi = std::max(hi, std::max(l.rho1, l.rho2));
  }

  std::vector<ActuatorWindow> windows;
  for (std::size_t k = 0;; ++k) {
    const double start = act.min_closed_length + static_cast<double>(k) * act.search_step;
    if (start > lo + kBracketSlack) {
      break;
    }
    if (hi <= start + act.stroke + kBracketSlack) {
      windows.push_back(ActuatorWindow{start, start + act.stroke});
    }
  }
  return windows;
}

std::vector<SingularitySample> singularity_map(const DesignParameters& d,
                                               const WorkspaceSpec& spec) {
  validate_design(d);
  const std::vector<TiltOrientation> grid = generate_grid(spec);
  std::vector<SingularitySample> out(grid.size());
  parallel_for_chunks(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SingularitySample s;
      s.q = grid[i];
      try {
        const Mat2 j = jacobian(d, grid[i]);
        s.det_j = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
      } catch (const DomainError&) {
        s.det_j = 0.0;
        s.degenerate = true;
      }
      out[i] = s;
    }
  });
  return out;
}

} // namespace mechopt
