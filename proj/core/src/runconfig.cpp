#include "surfpoisson/runconfig.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "surfpoisson/errors.hpp"
#include "surfpoisson/io.hpp"

namespace surfpoisson {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (allowed.count(key) == 0)
      throw ConfigError("unknown key '" + key + "' in " + where);
}

double get_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError("'" + key + "' must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return obj[key].get<int>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) throw ConfigError("'" + key + "' must be a string");
  return obj[key].get<std::string>();
}

DomainSpec parse_domain(const json& obj) {
  reject_unknown(obj, {"kind", "a", "b", "radius", "center"}, "chart.domain");
  const std::string kind = get_string(obj, "kind", "disk");
  Vec2 center = Vec2::Zero();
  if (obj.contains("center")) {
    const auto& c = obj["center"];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
      throw ConfigError("'center' must be an array of two numbers");
    center = Vec2(c[0].get<double>(), c[1].get<double>());
  }
  if (kind == "disk") {
    if (obj.contains("a") || obj.contains("b"))
      throw ConfigError("disk domains take 'radius', not 'a'/'b'");
    const double r = get_number(obj, "radius", 1.0);
    if (!(r > 0.0)) throw ConfigError("'radius' must be positive");
    return DomainSpec::disk(r, center);
  }
  if (kind == "ellipse") {
    if (obj.contains("radius")) throw ConfigError("ellipse domains take 'a'/'b', not 'radius'");
    const double a = get_number(obj, "a", 1.0);
    const double b = get_number(obj, "b", 1.0);
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("'a' and 'b' must be positive");
    return DomainSpec::ellipse(a, b, center);
  }
  throw ConfigError("unknown domain kind '" + kind + "'");
}

Chart parse_chart(const json& obj) {
  reject_unknown(obj, {"kind", "domain", "radius", "terms", "lambda_min_floor"}, "chart");
  if (!obj.contains("kind")) throw ConfigError("chart requires 'kind'");
  const std::string kind = get_string(obj, "kind", "");
  DomainSpec domain;
  if (obj.contains("domain")) {
    if (!obj["domain"].is_object()) throw ConfigError("'chart.domain' must be an object");
    domain = parse_domain(obj["domain"]);
  }

  Chart chart;
  if (kind == "flat") {
    if (obj.contains("radius") || obj.contains("terms"))
      throw ConfigError("flat charts take no 'radius' or 'terms'");
    chart = make_flat_chart(domain);
  } else if (kind == "monge") {
    if (obj.contains("radius")) throw ConfigError("monge charts take no 'radius'");
    if (!obj.contains("terms") || !obj["terms"].is_array())
      throw ConfigError("monge charts require a 'terms' array");
    std::vector<MongeTerm> terms;
    for (const auto& t : obj["terms"]) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
          !t[1].is_number_integer() || !t[2].is_number())
        throw ConfigError("each monge term must be [i, j, c]");
      terms.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
    }
    chart = make_monge_chart(domain, terms);
  } else if (kind == "hemisphere") {
    if (obj.contains("terms")) throw ConfigError("hemisphere charts take no 'terms'");
    if (!obj.contains("radius")) throw ConfigError("hemisphere charts require 'radius'");
    chart = make_hemisphere_chart(domain, get_number(obj, "radius", 0.0));
  } else if (kind == "cylinder") {
    if (obj.contains("radius") || obj.contains("terms"))
      throw ConfigError("cylinder charts take no 'radius' or 'terms'");
    chart = make_cylinder_chart(domain);
  } else if (kind == "degenerate") {
    if (obj.contains("radius") || obj.contains("terms"))
      throw ConfigError("degenerate charts take no 'radius' or 'terms'");
    chart = make_degenerate_chart(domain);
  } else {
    throw ConfigError("unknown chart kind '" + kind + "'");
  }
  if (obj.contains("lambda_min_floor")) {
    const double floor = get_number(obj, "lambda_min_floor", chart.lambda_min_floor);
    if (!(floor > 0.0)) throw ConfigError("'lambda_min_floor' must be positive");
    chart.lambda_min_floor = floor;
  }
  return chart;
}

SolverOptions parse_solver(const json& obj) {
  reject_unknown(obj, {"tol", "max_iter", "strict_compatibility", "compatibility_threshold"},
                 "solver");
  SolverOptions opts;
  opts.tol = get_number(obj, "tol", opts.tol);
  if (!(opts.tol > 0.0)) throw ConfigError("'solver.tol' must be positive");
  opts.max_iter = get_int(obj, "max_iter", opts.max_iter);
  if (opts.max_iter < 0) throw ConfigError("'solver.max_iter' must be non-negative");
  if (obj.contains("strict_compatibility")) {
    if (!obj["strict_compatibility"].is_boolean())
      throw ConfigError("'solver.strict_compatibility' must be a boolean");
    opts.strict_compatibility = obj["strict_compatibility"].get<bool>();
  }
  opts.compatibility_threshold =
      get_number(obj, "compatibility_threshold", opts.compatibility_threshold);
  return opts;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config is not valid JSON: ") + err.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(root,
                 {"chart", "mesh_h", "levels", "quad_order", "solver", "f", "chi",
                  "manufactured", "seed", "output_dir"},
                 "config");
  if (!root.contains("chart") || !root["chart"].is_object())
    throw ConfigError("config requires a 'chart' object");

  RunConfig cfg;
  cfg.chart = parse_chart(root["chart"]);
  cfg.mesh_h = get_number(root, "mesh_h", cfg.mesh_h);
  if (!(cfg.mesh_h > 0.0)) throw ConfigError("'mesh_h' must be positive");
  cfg.levels = get_int(root, "levels", cfg.levels);
  if (cfg.levels < 1) throw ConfigError("'levels' must be at least 1");
  cfg.quad_order = get_int(root, "quad_order", cfg.quad_order);
  if (root.contains("solver")) {
    if (!root["solver"].is_object()) throw ConfigError("'solver' must be an object");
    cfg.solver = parse_solver(root["solver"]);
  }
  cfg.f_id = get_string(root, "f", cfg.f_id);
  cfg.chi_id = get_string(root, "chi", cfg.chi_id);
  cfg.manufactured_id = get_string(root, "manufactured", cfg.manufactured_id);
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
      throw ConfigError("'seed' must be a non-negative integer");
    if (root["seed"].is_number_integer() && root["seed"].get<long long>() < 0)
      throw ConfigError("'seed' must be a non-negative integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  cfg.output_dir = get_string(root, "output_dir", cfg.output_dir);
  cfg.config_hash = hash_hex(fnv1a(json_text));
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace surfpoisson
