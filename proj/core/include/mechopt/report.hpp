#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "mechopt/nelder_mead.hpp"
#include "mechopt/objective.hpp"
#include "mechopt/workspace.hpp"

// Machine-readable result files. CSV floats carry 17 significant digits; JSON
// numbers are serialized round-trip exact. Files are written to a temporary
// name and renamed into place, so a failed run never leaves partial output.

namespace mechopt {

[[nodiscard]] std::string workspace_map_csv(std::span<const GridPointSample> samples);
[[nodiscard]] std::string singularity_map_csv(std::span<const SingularitySample> samples);
[[nodiscard]] std::string trace_csv(std::span<const TracePoint> trace);

[[nodiscard]] std::string evaluation_json(const WorkspaceEvaluation& ev);
[[nodiscard]] std::string optimization_json(const DesignSynthesis& synthesis, SpaceKind kind);
[[nodiscard]] std::string brackets_json(const WorkspaceEvaluation& ev);

/// Creates parent directories as needed, writes to `<path>.tmp`, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace mechopt
