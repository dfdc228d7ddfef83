#ifndef BKBK_CONFIG_HPP
#define BKBK_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "bkbk/model1d.hpp"
#include "bkbk/model2d.hpp"
#include "bkbk/nls.hpp"
#include "bkbk/timestep.hpp"

namespace bkbk {

enum class Model { bkbk1d, bkbk1d_vform, bkbk2d, nls };
enum class Integrator { sbdf2, rk4 };

struct GridSpec {
  // 1D uses length/n; 2D uses lx/ly/nx/ny.
  double length = 0.0;
  int n = 0;
  double lx = 0.0, ly = 0.0;
  int nx = 0, ny = 0;
};

// Strict, versioned JSON schema; unknown keys anywhere are errors so that a
// typo cannot silently fall back to a default.
struct RunConfig {
  int version = 1;
  Model model = Model::bkbk1d;
  Integrator integrator = Integrator::sbdf2;
  GridSpec grid;
  Schedule schedule;
  int diag_stride = 1;
  int snapshot_stride = 0;  // 0: first and last snapshot only
  Params1D params1d;
  Params2D params2d;
  NlsParams nls;
  std::string scenario;                          // builder name
  std::map<std::string, double> scenario_params; // numeric knobs of the builder
  std::string output_dir = "out";
  std::vector<std::string> casimirs = {"one", "q", "q2"};  // 2D diagnostics set
};

// Throw ConfigError on syntax errors, unknown keys, or inconsistent
// model/scenario/grid combinations.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialise_config(const RunConfig& cfg);  // parse(serialise(c)) == c

std::string model_name(Model m);
std::string integrator_name(Integrator i);

}  // namespace bkbk

#endif
