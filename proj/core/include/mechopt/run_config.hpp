#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "mechopt/mechanism.hpp"
#include "mechopt/nelder_mead.hpp"
#include "mechopt/objective.hpp"
#include "mechopt/workspace.hpp"

// Declarative run configuration, read from a JSON document. Angles are given
// in degrees in the file and converted to radians here; lengths are meters.
// Unknown keys anywhere in the document are rejected. The canonical schema is
// documented in the repository README.

namespace mechopt {

struct RunConfig {
  SpaceKind space{SpaceKind::Reduced4};
  /// Present iff space == Reduced4; `design` then holds its expansion.
  std::optional<ReducedDesignParameters> reduced;
  DesignParameters design;
  WorkspaceSpec workspace;
  /// Required by the evaluate / optimize / bracket-search commands.
  std::optional<ActuatorModel> actuator;
  ObjectiveConfig objective;
  OptimizerConfig optimizer;
  /// Box bounds override; defaults depend on the space kind.
  std::optional<std::vector<double>> bounds_lower;
  std::optional<std::vector<double>> bounds_upper;
  std::filesystem::path output_dir{"."};
};

/// Parses and validates a config file. Parse problems (unreadable file, bad
/// JSON, unknown/missing/ill-typed fields) throw ConfigError; values that
/// violate a domain invariant throw DomainError.
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);

/// Same, from an in-memory JSON document.
[[nodiscard]] RunConfig parse_run_config(const std::string& text);

/// Search space for the config: its kind plus the configured or default box.
[[nodiscard]] ParameterSpace parameter_space_for(const RunConfig& config);

/// Start vector for the optimizer: the mechanism encoded in its own space.
[[nodiscard]] std::vector<double> seed_vector(const RunConfig& config);

} // namespace mechopt
