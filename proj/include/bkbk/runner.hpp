#ifndef BKBK_RUNNER_HPP
#define BKBK_RUNNER_HPP

#include <string>
#include <vector>

#include "bkbk/config.hpp"

namespace bkbk {

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 config error, 2 depth underflow
  std::string message;
};

// Execute one configured run: create the output directory, copy the config,
// stream diagnostics.csv, and write snapshots at the configured stride (plus
// the initial and final states). On depth underflow the partial outputs are
// preserved and exit_code is 2.
RunResult run_config(const RunConfig& cfg);

// Run several independent configs, at most BKBK_THREADS (default: hardware
// concurrency) at a time. Returns the worst exit code.
int run_sweep(const std::vector<std::string>& config_paths);

// Madelung-bridge check: integrate the NLS config at dt, dt/2, dt/4 and
// report the hydrodynamic v-form residual for both nonlinearity signs, which
// sign matches, and the convergence slope of the matching sign.
RunResult nls_check(const RunConfig& cfg);

}  // namespace bkbk

#endif
