// bkbk: pseudo-spectral BKBK shallow-water simulation driver.
//
// Subcommands: run, sweep, dispersion, stability, nls-check, info.
// Exit codes: 0 success, 1 configuration/usage error, 2 depth underflow.

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bkbk/config.hpp"
#include "bkbk/errors.hpp"
#include "bkbk/model1d.hpp"
#include "bkbk/model2d.hpp"
#include "bkbk/runner.hpp"
#include "bkbk/snapshot.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  bkbk::RunConfig cfg;
  try {
    cfg = bkbk::load_config(config_path);
  } catch (const bkbk::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  const bkbk::RunResult r = bkbk::run_config(cfg);
  if (r.exit_code != 0) std::fprintf(stderr, "%s\n", r.message.c_str());
  return r.exit_code;
}

int cmd_dispersion(double kappa, double g, double eta0, double nu, double kmax, int samples) {
  bkbk::Params1D p;
  p.kappa = kappa;
  p.g = g;
  p.eta0 = eta0;
  p.nu = nu;
  std::printf("k,re_omega_plus,im_omega_plus,re_omega_minus,im_omega_minus,quad_check\n");
  for (int i = 1; i <= samples; ++i) {
    const double k = kmax * i / samples;
    const auto om = bkbk::dispersion_omega(k, p);
    // Both roots satisfy (omega + i nu k^4)^2 = k^2 (g eta0 - kappa^2 k^2).
    const std::complex<double> target(k * k * (g * eta0 - kappa * kappa * k * k), 0.0);
    double check = 0.0;
    for (const auto& w : om) {
      const std::complex<double> lhs =
          (w + std::complex<double>(0.0, nu * k * k * k * k));
      check = std::max(check, std::abs(lhs * lhs - target));
    }
    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.3g\n", k, om[0].real(), om[0].imag(),
                om[1].real(), om[1].imag(), check);
  }
  if (kappa != 0.0)
    std::printf("# k_c=%.17g nu_cr=%.17g\n", bkbk::critical_wavenumber(p),
                bkbk::critical_nu(p));
  else
    std::printf("# k_c=inf nu_cr=0\n");
  return 0;
}

int cmd_stability(double uex, double uey, double etae, double kappa, double kmax,
                  int samples) {
  if (etae <= 0.0) {
    std::fprintf(stderr, "stability: eta_e must be positive\n");
    return 1;
  }
  std::printf("k,sigma\n");
  for (int i = 0; i <= samples; ++i) {
    const double k = kmax * i / samples;
    std::printf("%.17g,%.17g\n", k,
                bkbk::stability_symbol_2d(uex, uey, etae, kappa, k));
  }
  const auto cutoff = bkbk::stability_cutoff_2d(uex, uey, etae, kappa);
  if (cutoff)
    std::printf("# cutoff=%.17g\n", *cutoff);
  else
    std::printf("# cutoff=none\n");
  return 0;
}

int cmd_nls_check(const std::string& config_path) {
  bkbk::RunConfig cfg;
  try {
    cfg = bkbk::load_config(config_path);
  } catch (const bkbk::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  const bkbk::RunResult r = bkbk::nls_check(cfg);
  std::fputs(r.message.c_str(), r.exit_code == 0 ? stdout : stderr);
  return r.exit_code;
}

int cmd_info(const std::string& path) {
  try {
    std::fputs(bkbk::snapshot_info(bkbk::read_snapshot(path)).c_str(), stdout);
  } catch (const bkbk::SnapshotError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral BKBK dispersive shallow-water suite"};
  app.require_subcommand(1);

  std::string config_path, snap_path;
  std::vector<std::string> sweep_paths;
  double kappa = 0.5, g = 1.0, eta0 = 1.0, nu = 0.0, kmax = 8.0;
  double uex = 0.0, uey = 0.0, etae = 1.0;
  int samples = 1000;

  CLI::App* run = app.add_subcommand("run", "execute a configured run");
  run->add_option("config", config_path, "JSON config file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "run several configs concurrently");
  sweep->add_option("configs", sweep_paths, "JSON config files")->required();

  CLI::App* disp = app.add_subcommand("dispersion", "emit omega_{+,-}(k) as CSV");
  disp->add_option("--kappa", kappa);
  disp->add_option("--g", g);
  disp->add_option("--eta0", eta0);
  disp->add_option("--nu", nu);
  disp->add_option("--kmax", kmax);
  disp->add_option("--samples", samples)->check(CLI::Range(2, 100000000));

  CLI::App* stab = app.add_subcommand("stability", "emit the second-variation symbol");
  stab->add_option("--uex", uex);
  stab->add_option("--uey", uey);
  stab->add_option("--etae", etae);
  stab->add_option("--kappa", kappa);
  stab->add_option("--kmax", kmax);
  stab->add_option("--samples", samples)->check(CLI::Range(1, 100000000));

  CLI::App* nlsc = app.add_subcommand("nls-check", "Madelung-bridge residual check");
  nlsc->add_option("--config", config_path, "JSON config file (model nls)")->required();

  CLI::App* info = app.add_subcommand("info", "print a snapshot header");
  info->add_option("snapshot", snap_path, "snapshot file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (sweep->parsed()) return bkbk::run_sweep(sweep_paths);
    if (disp->parsed()) return cmd_dispersion(kappa, g, eta0, nu, kmax, samples);
    if (stab->parsed()) return cmd_stability(uex, uey, etae, kappa, kmax, samples);
    if (nlsc->parsed()) return cmd_nls_check(config_path);
    if (info->parsed()) return cmd_info(snap_path);
  } catch (const bkbk::DepthUnderflow& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 1;
}
