#include "bkbk/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "bkbk/errors.hpp"

namespace bkbk {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError("config: '" + where + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

double num(const json& obj, const std::string& where, const std::string& key, double dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number())
    throw ConfigError("config: '" + where + "." + key + "' must be a number");
  return obj[key].get<double>();
}

int integer(const json& obj, const std::string& where, const std::string& key, int dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number_integer())
    throw ConfigError("config: '" + where + "." + key + "' must be an integer");
  return obj[key].get<int>();
}

const std::set<std::string>& scenario_keys(const std::string& name) {
  static const std::map<std::string, std::set<std::string>> table = {
      {"travelling-wave", {"name", "c", "lambda", "phi"}},
      {"gaussian", {"name", "x0", "amplitude", "width_sq"}},
      {"rest", {"name"}},
      {"gaussian-ridges",
       {"name", "sigma", "dx_over_sigma", "dy_over_sigma", "anomaly_frac", "f0"}},
      {"tanh-segment", {"name"}},
      {"radial-star",
       {"name", "arms", "r1", "r2", "delta_r", "half_width", "delta_theta", "speed"}},
      {"plane-wave", {"name", "eps", "mode"}},
  };
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("config: unknown scenario '" + name + "'");
  return it->second;
}

bool scenario_matches_model(const std::string& name, Model m) {
  if (name == "rest") return true;
  if (name == "travelling-wave") return m == Model::bkbk1d;
  if (name == "gaussian") return m == Model::bkbk1d || m == Model::bkbk1d_vform;
  if (name == "plane-wave") return m == Model::nls;
  return m == Model::bkbk2d;  // the 2D builders
}

}  // namespace

std::string model_name(Model m) {
  switch (m) {
    case Model::bkbk1d: return "bkbk1d";
    case Model::bkbk1d_vform: return "bkbk1d-vform";
    case Model::bkbk2d: return "bkbk2d";
    case Model::nls: return "nls";
  }
  return "?";
}

std::string integrator_name(Integrator i) {
  return i == Integrator::sbdf2 ? "sbdf2" : "rk4";
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON syntax error: ") + e.what());
  }

  require_keys(j, "root",
               {"version", "model", "integrator", "grid", "schedule", "params", "nls",
                "scenario", "output_dir", "casimirs"});
  RunConfig c;
  c.version = integer(j, "root", "version", 1);
  if (c.version != 1) throw ConfigError("config: unsupported version");

  const std::string model = j.value("model", "bkbk1d");
  if (model == "bkbk1d") c.model = Model::bkbk1d;
  else if (model == "bkbk1d-vform") c.model = Model::bkbk1d_vform;
  else if (model == "bkbk2d") c.model = Model::bkbk2d;
  else if (model == "nls") c.model = Model::nls;
  else throw ConfigError("config: unknown model '" + model + "'");

  const std::string integ = j.value("integrator", "sbdf2");
  if (integ == "sbdf2") c.integrator = Integrator::sbdf2;
  else if (integ == "rk4") c.integrator = Integrator::rk4;
  else throw ConfigError("config: unknown integrator '" + integ + "'");

  const bool two_d = c.model == Model::bkbk2d;
  if (!j.contains("grid")) throw ConfigError("config: missing 'grid'");
  const json& jg = j["grid"];
  if (two_d) {
    require_keys(jg, "grid", {"lx", "ly", "nx", "ny"});
    c.grid.lx = num(jg, "grid", "lx", 0.0);
    c.grid.ly = num(jg, "grid", "ly", 0.0);
    c.grid.nx = integer(jg, "grid", "nx", 0);
    c.grid.ny = integer(jg, "grid", "ny", 0);
    if (c.grid.lx <= 0 || c.grid.ly <= 0 || c.grid.nx < 8 || c.grid.ny < 8 ||
        c.grid.nx % 2 || c.grid.ny % 2)
      throw ConfigError("config: 2D grid needs positive lengths and even nx, ny >= 8");
  } else {
    require_keys(jg, "grid", {"length", "n"});
    c.grid.length = num(jg, "grid", "length", 0.0);
    c.grid.n = integer(jg, "grid", "n", 0);
    if (c.grid.length <= 0 || c.grid.n < 8 || c.grid.n % 2)
      throw ConfigError("config: 1D grid needs positive length and even n >= 8");
  }

  if (!j.contains("schedule")) throw ConfigError("config: missing 'schedule'");
  const json& js = j["schedule"];
  require_keys(js, "schedule", {"dt", "t_end", "diag_stride", "snapshot_stride"});
  c.schedule.dt = num(js, "schedule", "dt", 0.0);
  c.schedule.t_end = num(js, "schedule", "t_end", 0.0);
  c.diag_stride = integer(js, "schedule", "diag_stride", 1);
  c.snapshot_stride = integer(js, "schedule", "snapshot_stride", 0);
  if (c.schedule.dt <= 0 || c.schedule.t_end <= 0)
    throw ConfigError("config: schedule needs positive dt and t_end");
  if (c.diag_stride < 1 || c.snapshot_stride < 0)
    throw ConfigError("config: diag_stride >= 1, snapshot_stride >= 0");

  const json jp = j.value("params", json::object());
  if (two_d) {
    require_keys(jp, "params", {"kappa", "g", "alpha", "eta0", "eta_floor"});
    c.params2d.kappa = num(jp, "params", "kappa", c.params2d.kappa);
    c.params2d.g = num(jp, "params", "g", c.params2d.g);
    c.params2d.alpha = num(jp, "params", "alpha", c.params2d.alpha);
    c.params2d.eta0 = num(jp, "params", "eta0", c.params2d.eta0);
    c.params2d.eta_floor = num(jp, "params", "eta_floor", c.params2d.eta_floor);
    if (c.params2d.g <= 0 || c.params2d.eta0 <= 0)
      throw ConfigError("config: params need positive g and eta0");
  } else {
    require_keys(jp, "params", {"kappa", "g", "nu", "eta0", "eta_floor"});
    c.params1d.kappa = num(jp, "params", "kappa", c.params1d.kappa);
    c.params1d.g = num(jp, "params", "g", c.params1d.g);
    c.params1d.nu = num(jp, "params", "nu", c.params1d.nu);
    c.params1d.eta0 = num(jp, "params", "eta0", c.params1d.eta0);
    c.params1d.eta_floor = num(jp, "params", "eta_floor", c.params1d.eta_floor);
    if (c.params1d.g <= 0 || c.params1d.eta0 <= 0 || c.params1d.nu < 0)
      throw ConfigError("config: params need positive g, eta0 and nu >= 0");
  }

  if (j.contains("nls")) {
    if (c.model != Model::nls) throw ConfigError("config: 'nls' block requires model nls");
    const json& jn = j["nls"];
    require_keys(jn, "nls", {"sign", "g_nls"});
    c.nls.sign = integer(jn, "nls", "sign", c.nls.sign);
    c.nls.g_nls = num(jn, "nls", "g_nls", c.nls.g_nls);
    if (c.nls.sign != 1 && c.nls.sign != -1)
      throw ConfigError("config: nls.sign must be +1 or -1");
  }
  if (c.model == Model::nls && c.params1d.g != c.nls.g_nls)
    throw ConfigError("config: params.g must equal nls.g_nls for the Madelung bridge");

  if (!j.contains("scenario")) throw ConfigError("config: missing 'scenario'");
  const json& jsc = j["scenario"];
  if (!jsc.is_object() || !jsc.contains("name") || !jsc["name"].is_string())
    throw ConfigError("config: scenario needs a string 'name'");
  c.scenario = jsc["name"].get<std::string>();
  require_keys(jsc, "scenario", scenario_keys(c.scenario));
  if (!scenario_matches_model(c.scenario, c.model))
    throw ConfigError("config: scenario '" + c.scenario + "' does not fit model '" +
                      model_name(c.model) + "'");
  for (auto it = jsc.begin(); it != jsc.end(); ++it) {
    if (it.key() == "name") continue;
    if (!it.value().is_number())
      throw ConfigError("config: scenario parameter '" + it.key() + "' must be a number");
    c.scenario_params[it.key()] = it.value().get<double>();
  }

  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("config: output_dir must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }

  if (j.contains("casimirs")) {
    if (c.model != Model::bkbk2d)
      throw ConfigError("config: 'casimirs' only applies to model bkbk2d");
    c.casimirs.clear();
    for (const json& e : j["casimirs"]) {
      if (!e.is_string()) throw ConfigError("config: casimirs must be strings");
      const std::string n = e.get<std::string>();
      if (n != "one" && n != "q" && n != "q2")
        throw ConfigError("config: unknown casimir '" + n + "'");
      c.casimirs.push_back(n);
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

std::string serialise_config(const RunConfig& c) {
  json j;
  j["version"] = c.version;
  j["model"] = model_name(c.model);
  j["integrator"] = integrator_name(c.integrator);
  if (c.model == Model::bkbk2d) {
    j["grid"] = {{"lx", c.grid.lx}, {"ly", c.grid.ly}, {"nx", c.grid.nx}, {"ny", c.grid.ny}};
    j["params"] = {{"kappa", c.params2d.kappa}, {"g", c.params2d.g},
                   {"alpha", c.params2d.alpha}, {"eta0", c.params2d.eta0},
                   {"eta_floor", c.params2d.eta_floor}};
    j["casimirs"] = c.casimirs;
  } else {
    j["grid"] = {{"length", c.grid.length}, {"n", c.grid.n}};
    j["params"] = {{"kappa", c.params1d.kappa}, {"g", c.params1d.g}, {"nu", c.params1d.nu},
                   {"eta0", c.params1d.eta0}, {"eta_floor", c.params1d.eta_floor}};
  }
  if (c.model == Model::nls) j["nls"] = {{"sign", c.nls.sign}, {"g_nls", c.nls.g_nls}};
  j["schedule"] = {{"dt", c.schedule.dt}, {"t_end", c.schedule.t_end},
                   {"diag_stride", c.diag_stride}, {"snapshot_stride", c.snapshot_stride}};
  json jsc = {{"name", c.scenario}};
  for (const auto& [k, v] : c.scenario_params) jsc[k] = v;
  j["scenario"] = jsc;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

}  // namespace bkbk
