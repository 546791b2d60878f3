#include "mechopt/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

namespace mechopt {

namespace {

using nlohmann::json;

constexpr double kDegToRad = 0.017453292519943295;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void check_keys(const json& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    fail("config section '" + section + "' must be an object");
  }
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (ok.find(item.key()) == ok.end()) {
      fail("unknown field '" + item.key() + "' in config section '" + section + "'");
    }
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    fail("field '" + where + "' must be a number");
  }
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    fail("field '" + where + "' must be an integer");
  }
  return j.get<int>();
}

double number_field(const json& j, const char* key, const std::string& section) {
  if (!j.contains(key)) {
    fail("missing field '" + std::string(key) + "' in config section '" + section + "'");
  }
  return number(j.at(key), section + "." + key);
}

Vec3 point_field(const json& j, const char* key, const std::string& section) {
  if (!j.contains(key)) {
    fail("missing field '" + std::string(key) + "' in config section '" + section + "'");
  }
  const json& arr = j.at(key);
  if (!arr.is_array() || arr.size() != 3) {
    fail("field '" + section + "." + key + "' must be an [x, y, z] array");
  }
  return Vec3(number(arr[0], key), number(arr[1], key), number(arr[2], key));
}

std::vector<double> number_array(const json& j, const std::string& where) {
  if (!j.is_array()) {
    fail("field '" + where + "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& v : j) {
    out.push_back(number(v, where));
  }
  return out;
}

void parse_mechanism(const json& j, RunConfig& config) {
  if (!j.contains("space") || !j.at("space").is_string()) {
    fail("mechanism.space must be \"full13\" or \"reduced4\"");
  }
  const std::string space = j.at("space").get<std::string>();
  if (space == "reduced4") {
    check_keys(j, "mechanism", {"space", "r_a_m", "r_b_m", "gamma_deg", "h_m"});
    ReducedDesignParameters r;
    r.r_a = number_field(j, "r_a_m", "mechanism");
    r.r_b = number_field(j, "r_b_m", "mechanism");
    r.gamma = number_field(j, "gamma_deg", "mechanism") * kDegToRad;
    r.h = number_field(j, "h_m", "mechanism");
    config.space = SpaceKind::Reduced4;
    config.reduced = r;
    config.design = expand_reduced(r); // throws DomainError on bad values
  } else if (space == "full13") {
    check_keys(j, "mechanism", {"space", "a1_m", "a2_m", "b1_m", "b2_m", "h_m"});
    DesignParameters d;
    d.a1 = point_field(j, "a1_m", "mechanism");
    d.a2 = point_field(j, "a2_m", "mechanism");
    d.b1 = point_field(j, "b1_m", "mechanism");
    d.b2 = point_field(j, "b2_m", "mechanism");
    d.h = number_field(j, "h_m", "mechanism");
    config.space = SpaceKind::Full13;
    config.design = d;
    validate_design(d);
  } else {
    fail("mechanism.space must be \"full13\" or \"reduced4\"");
  }
}

void parse_workspace(const json& j, WorkspaceSpec& spec) {
  check_keys(j, "workspace", {"theta_max_deg", "resolution", "dexterity_threshold"});
  if (j.contains("theta_max_deg")) {
    spec.theta_max = number(j.at("theta_max_deg"), "workspace.theta_max_deg") * kDegToRad;
  }
  if (j.contains("resolution")) {
    spec.resolution = integer(j.at("resolution"), "workspace.resolution");
  }
  if (j.contains("dexterity_threshold")) {
    spec.dexterity_threshold = number(j.at("dexterity_threshold"), "workspace.dexterity_threshold");
  }
  validate_workspace_spec(spec);
}

void parse_actuator(const json& j, RunConfig& config) {
  check_keys(j, "actuator", {"min_closed_length_m", "stroke_m", "search_step_m"});
  ActuatorModel act;
  act.min_closed_length = number_field(j, "min_closed_length_m", "actuator");
  act.stroke = number_field(j, "stroke_m", "actuator");
  act.search_step = number_field(j, "search_step_m", "actuator");
  validate_actuator(act);
  config.actuator = act;
}

void parse_objective(const json& j, ObjectiveConfig& obj) {
  check_keys(j, "objective", {"w_stroke", "w_coverage", "w_size"});
  if (j.contains("w_stroke")) {
    obj.w_stroke = number(j.at("w_stroke"), "objective.w_stroke");
  }
  if (j.contains("w_coverage")) {
    obj.w_coverage = number(j.at("w_coverage"), "objective.w_coverage");
  }
  if (j.contains("w_size")) {
    obj.w_size = number(j.at("w_size"), "objective.w_size");
  }
  validate_objective_config(obj);
}

void parse_optimizer(const json& j, OptimizerConfig& cfg) {
  check_keys(j, "optimizer",
             {"reflection", "expansion", "contraction", "shrink", "initial_simplex_scale",
              "f_tol", "x_tol", "max_evals", "restarts"});
  if (j.contains("reflection")) cfg.reflection = number(j.at("reflection"), "optimizer.reflection");
  if (j.contains("expansion")) cfg.expansion = number(j.at("expansion"), "optimizer.expansion");
  if (j.contains("contraction")) cfg.contraction = number(j.at("contraction"), "optimizer.contraction");
  if (j.contains("shrink")) cfg.shrink = number(j.at("shrink"), "optimizer.shrink");
  if (j.contains("initial_simplex_scale")) {
    cfg.initial_simplex_scale = number(j.at("initial_simplex_scale"), "optimizer.initial_simplex_scale");
  }
  if (j.contains("f_tol")) cfg.f_tol = number(j.at("f_tol"), "optimizer.f_tol");
  if (j.contains("x_tol")) cfg.x_tol = number(j.at("x_tol"), "optimizer.x_tol");
  if (j.contains("max_evals")) cfg.max_evals = integer(j.at("max_evals"), "optimizer.max_evals");
  if (j.contains("restarts")) cfg.restarts = integer(j.at("restarts"), "optimizer.restarts");
  validate_optimizer_config(cfg);
}

void parse_bounds(const json& j, RunConfig& config) {
  check_keys(j, "bounds", {"lower", "upper"});
  if (!j.contains("lower") || !j.contains("upper")) {
    fail("bounds requires both 'lower' and 'upper' arrays");
  }
  config.bounds_lower = number_array(j.at("lower"), "bounds.lower");
  config.bounds_upper = number_array(j.at("upper"), "bounds.upper");
  const std::size_t dim = config.space == SpaceKind::Full13 ? 13 : 4;
  if (config.bounds_lower->size() != dim || config.bounds_upper->size() != dim) {
    fail("bounds arrays must have " + std::to_string(dim) + " entries for this space");
  }
  if (config.space == SpaceKind::Reduced4) {
    // gamma bound entries arrive in degrees like every other config angle
    (*config.bounds_lower)[2] *= kDegToRad;
    (*config.bounds_upper)[2] *= kDegToRad;
  }
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc, "(root)",
             {"mechanism", "workspace", "actuator", "objective", "optimizer", "bounds",
              "output_dir"});
  if (!doc.contains("mechanism")) {
    fail("config requires a 'mechanism' section");
  }

  RunConfig config;
  parse_mechanism(doc.at("mechanism"), config);
  if (doc.contains("workspace")) {
    parse_workspace(doc.at("workspace"), config.workspace);
  }
  if (doc.contains("actuator")) {
    parse_actuator(doc.at("actuator"), config);
  }
  if (doc.contains("objective")) {
    parse_objective(doc.at("objective"), config.objective);
  }
  if (doc.contains("optimizer")) {
    parse_optimizer(doc.at("optimizer"), config.optimizer);
  }
  if (doc.contains("bounds")) {
    parse_bounds(doc.at("bounds"), config);
  }
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) {
      fail("output_dir must be a string path");
    }
    config.output_dir = doc.at("output_dir").get<std::string>();
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail("cannot open config file: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_run_config(text);
}

ParameterSpace parameter_space_for(const RunConfig& config) {
  ParameterSpace space = config.space == SpaceKind::Full13
                             ? ParameterSpace::full13_default()
                             : ParameterSpace::reduced4_default();
  if (config.bounds_lower) {
    space.lower = *config.bounds_lower;
  }
  if (config.bounds_upper) {
    space.upper = *config.bounds_upper;
  }
  validate_parameter_space(space);
  return space;
}

std::vector<double> seed_vector(const RunConfig& config) {
  if (config.space == SpaceKind::Reduced4) {
    return encode_reduced(*config.reduced);
  }
  return encode_design(config.design);
}

} // namespace mechopt
