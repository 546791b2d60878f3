#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mechopt/mechanism.hpp"
#include "mechopt/nelder_mead.hpp"
#include "mechopt/workspace.hpp"

// Design-vector encodings and the synthesis objective. Two search spaces:
// the full 13-scalar joint placement (4 attachment points plus the U-joint
// height) and the reduced 4-scalar symmetric design.

namespace mechopt {

enum class SpaceKind : std::uint8_t { Full13, Reduced4 };

[[nodiscard]] std::string to_string(SpaceKind k);

/// Box-bounded search space. Full13 coordinate order:
/// (a1.x, a1.y, a1.z, a2.x, a2.y, a2.z, b1.x, b1.y, b1.z, b2.x, b2.y, b2.z, h).
/// Reduced4 coordinate order: (r_a, r_b, gamma, h).
struct ParameterSpace {
  SpaceKind kind{SpaceKind::Reduced4};
  std::vector<double> lower;
  std::vector<double> upper;

  [[nodiscard]] std::size_t dimension() const noexcept {
    return kind == SpaceKind::Full13 ? 13 : 4;
  }

  [[nodiscard]] static ParameterSpace full13_default();
  [[nodiscard]] static ParameterSpace reduced4_default();
};

/// Weights of the synthesis objective
///   f = -min_dexterity + w_coverage * (1 - coverage)
///       + w_stroke * max(0, length_span - stroke) + w_size * max_radius.
struct ObjectiveConfig {
  double w_stroke{100.0};  ///< per meter of length span exceeding the stroke
  double w_coverage{10.0}; ///< per uncovered fraction of the required grid
  double w_size{0.1};      ///< per meter of largest attachment radius
};

void validate_parameter_space(const ParameterSpace& space);
void validate_objective_config(const ObjectiveConfig& obj);

/// Largest attachment-point norm of the design (footprint measure), m.
[[nodiscard]] double max_attachment_radius(const DesignParameters& d) noexcept;

/// Throws DomainError on dimension mismatch. Reduced4 vectors go through
/// expand_reduced, so their invariants are enforced here as well.
[[nodiscard]] DesignParameters decode_vector(std::span<const double> x,
                                             const ParameterSpace& space);

/// Inverse of the Full13 layout: decode_vector(encode_design(d)) == d.
[[nodiscard]] std::vector<double> encode_design(const DesignParameters& d);

/// Reduced4 layout of a symmetric design.
[[nodiscard]] std::vector<double> encode_reduced(const ReducedDesignParameters& r);

/// Builds the synthesis objective over `space`. Vectors outside the box or
/// decoding to an invalid design evaluate to +inf (rejected vertices).
[[nodiscard]] ObjectiveFn build_objective(const WorkspaceSpec& spec, const ActuatorModel& act,
                                          const ObjectiveConfig& obj,
                                          const ParameterSpace& space);

struct DesignSynthesis {
  OptimizationResult result;
  DesignParameters design;        ///< decoded best vector
  WorkspaceEvaluation evaluation; ///< evaluate_design of the best design
};

/// Restarted Nelder-Mead over build_objective from x0. Initial simplex
/// offsets are initial_simplex_scale of the box span per axis, flipped inward
/// where the offset vertex would leave the box. Throws DomainError when x0 is
/// infeasible (objective +inf).
[[nodiscard]] DesignSynthesis optimize_design(std::span<const double> x0,
                                              const ParameterSpace& space,
                                              const WorkspaceSpec& spec,
                                              const ActuatorModel& act,
                                              const ObjectiveConfig& obj,
                                              const OptimizerConfig& cfg);

} // namespace mechopt
