#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace logsp::cli {

namespace {

using nlohmann::ordered_json;

void reject_unknown(const ordered_json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key \"" + where + it.key() + "\"");
  }
}

double get_num(const ordered_json& obj, const std::string& where, const std::string& key,
               double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("key \"" + where + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(root, "", {"grid", "problem", "potential", "solver", "output"});

  RunConfig c;
  if (root.contains("grid")) {
    const auto& g = root["grid"];
    reject_unknown(g, "grid.", {"L", "n"});
    c.grid_L = get_num(g, "grid.", "L", c.grid_L);
    c.grid_n = static_cast<int>(get_num(g, "grid.", "n", c.grid_n));
    if (!(c.grid_L > 0)) throw ConfigError("key \"grid.L\" must be positive");
    if (c.grid_n < 16 || c.grid_n % 2 != 0)
      throw ConfigError("key \"grid.n\" must be even and >= 16");
  }
  if (root.contains("problem")) {
    const auto& p = root["problem"];
    reject_unknown(p, "problem.", {"p", "b"});
    c.problem.p = get_num(p, "problem.", "p", c.problem.p);
    c.problem.b = get_num(p, "problem.", "b", c.problem.b);
    if (!(c.problem.p > 2.0)) throw ConfigError("key \"problem.p\" must be > 2");
    if (!(c.problem.b >= 0.0)) throw ConfigError("key \"problem.b\" must be >= 0");
  }
  if (root.contains("potential")) {
    const auto& p = root["potential"];
    reject_unknown(p, "potential.", {"name", "params"});
    if (p.contains("name")) {
      if (!p["name"].is_string()) throw ConfigError("key \"potential.name\" must be a string");
      c.potential_name = p["name"].get<std::string>();
    }
    if (c.potential_name != "well1" && c.potential_name != "well2" &&
        c.potential_name != "constant")
      throw ConfigError("key \"potential.name\" must be well1, well2 or constant");
    if (p.contains("params")) {
      const auto& q = p["params"];
      reject_unknown(q, "potential.params.", {"c"});
      c.potential_c = get_num(q, "potential.params.", "c", c.potential_c);
      if (!(c.potential_c > 0)) throw ConfigError("key \"potential.params.c\" must be positive");
    }
  }
  if (root.contains("solver")) {
    const auto& s = root["solver"];
    reject_unknown(s, "solver.",
                   {"seed", "max_iter", "step0", "tol_grad", "tol_manifold", "precondition"});
    if (s.contains("seed")) {
      const auto& seed = s["seed"];
      reject_unknown(seed, "solver.seed.", {"type", "width", "amplitude", "path"});
      std::string type = seed.value("type", std::string("gaussian"));
      if (type == "gaussian") {
        c.solver.seed_kind = SolveConfig::SeedKind::gaussian;
        c.solver.seed_width = get_num(seed, "solver.seed.", "width", c.solver.seed_width);
        c.solver.seed_amplitude =
            get_num(seed, "solver.seed.", "amplitude", c.solver.seed_amplitude);
      } else if (type == "file") {
        c.solver.seed_kind = SolveConfig::SeedKind::file;
        if (!seed.contains("path") || !seed["path"].is_string())
          throw ConfigError("key \"solver.seed.path\" required for a file seed");
        c.solver.seed_path = seed["path"].get<std::string>();
      } else {
        throw ConfigError("key \"solver.seed.type\" must be gaussian or file");
      }
    }
    c.solver.max_iter = static_cast<int>(get_num(s, "solver.", "max_iter", c.solver.max_iter));
    c.solver.step0 = get_num(s, "solver.", "step0", c.solver.step0);
    c.solver.tol_grad = get_num(s, "solver.", "tol_grad", c.solver.tol_grad);
    c.solver.tol_manifold = get_num(s, "solver.", "tol_manifold", c.solver.tol_manifold);
    if (s.contains("precondition")) {
      if (!s["precondition"].is_boolean())
        throw ConfigError("key \"solver.precondition\" must be a boolean");
      c.solver.precondition = s["precondition"].get<bool>();
    }
    try {
      validate(c.solver);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("solver config invalid: ") + e.what());
    }
  }
  if (root.contains("output")) {
    const auto& o = root["output"];
    reject_unknown(o, "output.", {"directory", "formats"});
    if (o.contains("directory")) {
      if (!o["directory"].is_string())
        throw ConfigError("key \"output.directory\" must be a string");
      c.output_directory = o["directory"].get<std::string>();
    }
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) throw ConfigError("key \"output.formats\" must be an array");
      c.write_csv = c.write_field = false;
      for (const auto& f : o["formats"]) {
        const std::string name = f.get<std::string>();
        if (name == "csv")
          c.write_csv = true;
        else if (name == "logsp1")
          c.write_field = true;
        else
          throw ConfigError("key \"output.formats\" entries must be csv or logsp1");
      }
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  ordered_json root;
  root["grid"] = {{"L", c.grid_L}, {"n", c.grid_n}};
  root["problem"] = {{"p", c.problem.p}, {"b", c.problem.b}};
  if (c.potential_name == "constant")
    root["potential"] = {{"name", c.potential_name}, {"params", {{"c", c.potential_c}}}};
  else
    root["potential"] = {{"name", c.potential_name}};
  ordered_json seed;
  if (c.solver.seed_kind == SolveConfig::SeedKind::gaussian)
    seed = {{"type", "gaussian"}, {"width", c.solver.seed_width},
            {"amplitude", c.solver.seed_amplitude}};
  else
    seed = {{"type", "file"}, {"path", c.solver.seed_path}};
  root["solver"] = {{"seed", seed},
                    {"max_iter", c.solver.max_iter},
                    {"step0", c.solver.step0},
                    {"tol_grad", c.solver.tol_grad},
                    {"tol_manifold", c.solver.tol_manifold},
                    {"precondition", c.solver.precondition}};
  ordered_json formats = ordered_json::array();
  if (c.write_csv) formats.push_back("csv");
  if (c.write_field) formats.push_back("logsp1");
  root["output"] = {{"directory", c.output_directory}, {"formats", formats}};
  return root.dump(2) + "\n";
}

GridSpec grid_of(const RunConfig& c) { return make_grid(c.grid_L, c.grid_n); }

PotentialModel potential_of(const RunConfig& c) {
  if (c.potential_name == "well1") return builtin_well1();
  if (c.potential_name == "well2") return builtin_well2();
  return builtin_constant(c.potential_c);
}

}  // namespace logsp::cli
