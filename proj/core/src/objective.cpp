#include "mechopt/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mechopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool inside_box(std::span<const double> x, const ParameterSpace& space) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!std::isfinite(x[j]) || x[j] < space.lower[j] || x[j] > space.upper[j]) {
      return false;
    }
  }
  return true;
}

} // namespace

std::string to_string(SpaceKind k) {
  return k == SpaceKind::Full13 ? "full13" : "reduced4";
}

ParameterSpace ParameterSpace::full13_default() {
  ParameterSpace s;
  s.kind = SpaceKind::Full13;
  s.lower.assign(13, -0.75);
  s.upper.assign(13, 0.75);
  s.lower[12] = 1e-3; // h stays positive
  return s;
}

ParameterSpace ParameterSpace::reduced4_default() {
  ParameterSpace s;
  s.kind = SpaceKind::Reduced4;
  s.lower = {1e-3, 1e-3, 0.01, 1e-3};
  s.upper = {0.75, 0.75, kTiltLimit - 0.01, 0.75};
  return s;
}

void validate_parameter_space(const ParameterSpace& space) {
  const std::size_t n = space.dimension();
  if (space.lower.size() != n || space.upper.size() != n) {
    throw DomainError("parameter space bounds must match the space dimension");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(space.lower[j]) || !std::isfinite(space.upper[j]) ||
        !(space.lower[j] < space.upper[j])) {
      throw DomainError("parameter space requires lower < upper per coordinate");
    }
  }
}

void validate_objective_config(const ObjectiveConfig& obj) {
  if (!std::isfinite(obj.w_stroke) || !std::isfinite(obj.w_coverage) ||
      !std::isfinite(obj.w_size) || obj.w_stroke < 0.0 || obj.w_coverage < 0.0 ||
      obj.w_size < 0.0) {
    throw DomainError("objective weights must be finite and non-negative");
  }
}

double max_attachment_radius(const DesignParameters& d) noexcept {
  return std::max(std::max(d.a1.norm(), d.a2.norm()), std::max(d.b1.norm(), d.b2.norm()));
}

DesignParameters decode_vector(std::span<const double> x, const ParameterSpace& space) {
  if (x.size() != space.dimension()) {
    throw DomainError("design vector dimension does not match the parameter space");
  }
  if (space.kind == SpaceKind::Reduced4) {
    return expand_reduced(ReducedDesignParameters{x[0], x[1], x[2], x[3]});
  }
  DesignParameters d;
  d.a1 = Vec3(x[0], x[1], x[2]);
  d.a2 = Vec3(x[3], x[4], x[5]);
  d.b1 = Vec3(x[6], x[7], x[8]);
  d.b2 = Vec3(x[9], x[10], x[11]);
  d.h = x[12];
  return d;
}

std::vector<double> encode_design(const DesignParameters& d) {
  return {d.a1.x(), d.a1.y(), d.a1.z(), d.a2.x(), d.a2.y(), d.a2.z(),
          d.b1.x(), d.b1.y(), d.b1.z(), d.b2.x(), d.b2.y(), d.b2.z(), d.h};
}

std::vector<double> encode_reduced(const ReducedDesignParameters& r) {
  return {r.r_a, r.r_b, r.gamma, r.h};
}

ObjectiveFn build_objective(const WorkspaceSpec& spec, const ActuatorModel& act,
                            const ObjectiveConfig& obj, const ParameterSpace& space) {
  validate_workspace_spec(spec);
  validate_actuator(act);
  validate_objective_config(obj);
  validate_parameter_space(space);

  return [spec, act, obj, space](std::span<const double> x) -> double {
    if (x.size() != space.dimension() || !inside_box(x, space)) {
      return kInf;
    }
    try {
      const DesignParameters d = decode_vector(x, space);
      validate_design(d);
      const WorkspaceEvaluation ev = evaluate_design(d, spec, act);
      double span = 0.0;
      if (ev.covered_points > 0) {
        span = std::max(ev.rho1_range.hi, ev.rho2_range.hi) -
               std::min(ev.rho1_range.lo, ev.rho2_range.lo);
      }
      return -ev.min_dexterity + obj.w_coverage * (1.0 - ev.coverage) +
             obj.w_stroke * std::max(0.0, span - act.stroke) +
             obj.w_size * max_attachment_radius(d);
    } catch (const DomainError&) {
      return kInf;
    }
  };
}

DesignSynthesis optimize_design(std::span<const double> x0, const ParameterSpace& space,
                                const WorkspaceSpec& spec, const ActuatorModel& act,
                                const ObjectiveConfig& obj, const OptimizerConfig& cfg) {
  validate_optimizer_config(cfg);
  validate_parameter_space(space);
  if (x0.size() != space.dimension()) {
    throw DomainError("start vector dimension does not match the parameter space");
  }

  const ObjectiveFn f = build_objective(spec, act, obj, space);
  if (!std::isfinite(f(x0))) {
    throw DomainError("start design is infeasible under the objective");
  }

  // Per-axis offsets scaled to the box span, flipped inward at the upper wall.
  std::vector<double> steps(x0.size());
  for (std::size_t j = 0; j < x0.size(); ++j) {
    steps[j] = cfg.initial_simplex_scale * (space.upper[j] - space.lower[j]);
    if (x0[j] + steps[j] > space.upper[j]) {
      steps[j] = -steps[j];
    }
  }

  DesignSynthesis out;
  out.result = nelder_mead_restarted(f, x0, cfg, steps);
  out.design = decode_vector(out.result.best_x, space);
  out.evaluation = evaluate_design(out.design, spec, act);
  return out;
}

} // namespace mechopt
