#include "mechopt/report.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include <json.hpp>

namespace mechopt {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json range_json(const LengthRange& r) {
  return json{{"lo_m", r.lo}, {"hi_m", r.hi}};
}

json windows_json(const std::vector<ActuatorWindow>& windows) {
  json arr = json::array();
  for (const ActuatorWindow& w : windows) {
    arr.push_back(json{{"lo_m", w.lo}, {"hi_m", w.hi}});
  }
  return arr;
}

json evaluation_body(const WorkspaceEvaluation& ev) {
  return json{
      {"coverage", ev.coverage},
      {"min_dexterity", ev.min_dexterity},
      {"rho1_range", range_json(ev.rho1_range)},
      {"rho2_range", range_json(ev.rho2_range)},
      {"feasible_brackets", windows_json(ev.feasible_brackets)},
      {"feasible", ev.feasible},
      {"grid_points", ev.grid_points},
      {"covered_points", ev.covered_points},
  };
}

json point_json(const Vec3& p) { return json::array({p.x(), p.y(), p.z()}); }

} // namespace

std::string workspace_map_csv(std::span<const GridPointSample> samples) {
  std::string out = "alpha_rad,beta_rad,rho1_m,rho2_m,dexterity,covered,det_j\n";
  for (const GridPointSample& s : samples) {
    out += num(s.q.alpha) + ',' + num(s.q.beta) + ',' + num(s.rho1) + ',' + num(s.rho2) +
           ',' + num(s.dexterity) + ',' + (s.covered ? '1' : '0') + ',' + num(s.det_j) + '\n';
  }
  return out;
}

std::string singularity_map_csv(std::span<const SingularitySample> samples) {
  std::string out = "alpha_rad,beta_rad,det_j\n";
  for (const SingularitySample& s : samples) {
    out += num(s.q.alpha) + ',' + num(s.q.beta) + ',' + num(s.det_j) + '\n';
  }
  return out;
}

std::string trace_csv(std::span<const TracePoint> trace) {
  std::string out = "eval_index,best_f\n";
  for (const TracePoint& t : trace) {
    out += std::to_string(t.eval_index) + ',' + num(t.best_f) + '\n';
  }
  return out;
}

std::string evaluation_json(const WorkspaceEvaluation& ev) {
  return evaluation_body(ev).dump(2) + '\n';
}

std::string optimization_json(const DesignSynthesis& synthesis, SpaceKind kind) {
  const DesignParameters& d = synthesis.design;
  json doc{
      {"space", to_string(kind)},
      {"best_x", synthesis.result.best_x},
      {"best_f", synthesis.result.best_f},
      {"evals", synthesis.result.evals},
      {"termination", to_string(synthesis.result.termination)},
      {"design",
       {{"a1_m", point_json(d.a1)},
        {"a2_m", point_json(d.a2)},
        {"b1_m", point_json(d.b1)},
        {"b2_m", point_json(d.b2)},
        {"h_m", d.h}}},
      {"evaluation", evaluation_body(synthesis.evaluation)},
  };
  return doc.dump(2) + '\n';
}

std::string brackets_json(const WorkspaceEvaluation& ev) {
  json doc{
      {"windows", windows_json(ev.feasible_brackets)},
      {"rho_min_m", std::min(ev.rho1_range.lo, ev.rho2_range.lo)},
      {"rho_max_m", std::max(ev.rho1_range.hi, ev.rho2_range.hi)},
      {"coverage", ev.coverage},
      {"feasible", ev.feasible},
  };
  return doc.dump(2) + '\n';
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write output file: " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed while writing output file: " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

} // namespace mechopt
