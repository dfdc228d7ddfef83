#include "bkbk/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bkbk/errors.hpp"

namespace bkbk {

namespace {

// Signed periodic displacement of x from centre c, in [-L/2, L/2).
double periodic_delta(double x, double c, double length) {
  double d = std::fmod(x - c, length);
  if (d < -0.5 * length) d += length;
  if (d >= 0.5 * length) d -= length;
  return d;
}

double sech2(double z) {
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

}  // namespace

double tanh_window(const Window& w, double z) {
  return 0.5 * (std::tanh((z - w.a) / w.delta) - std::tanh((z - w.b) / w.delta));
}

State1D ic_travelling_wave(const Grid1D& grid, const TravellingWaveParams& tw) {
  if (tw.kappa <= 0.0)
    throw ScenarioError("travelling wave: kappa <= 0 gives a degenerate (zero) depth profile");
  const double lam = tw.lambda;
  const double seam = std::exp(-lam * grid.length / 4.0);
  if (seam >= 1e-6) {
    const double lmin = 4.0 * std::log(1e6) / lam;
    throw ScenarioError("travelling wave: domain too short for the periodicised profile; "
                        "need L > " + std::to_string(lmin) + ", got " +
                        std::to_string(grid.length));
  }

  const double amp = 0.5 * lam * lam * std::abs(tw.kappa) * (std::abs(tw.kappa) + tw.kappa);
  const double x1 = 0.25 * grid.length - tw.phi;
  const double x2 = x1 + 0.5 * grid.length;

  State1D s{RealVec(grid.n), RealVec(grid.n)};
  for (int i = 0; i < grid.n; ++i) {
    // Kink at x1, antikink at x2: evaluated on the branch z in
    // [x1 - L/4, x1 + 3L/4) so that the tanh product forms one monotone jump
    // at each centre and matches itself across the seam to O(exp(-lam L/4)).
    double z = std::fmod(grid.x[i] - (x1 - 0.25 * grid.length), grid.length);
    if (z < 0.0) z += grid.length;
    z += x1 - 0.25 * grid.length;
    const double kink = std::tanh(0.5 * lam * (z - x1)) * std::tanh(0.5 * lam * (x2 - z));
    s.u[i] = tw.c - lam * std::abs(tw.kappa) * kink;
    // Only the kink carries a depth crest: the reversed-orientation branch of
    // the exact solution has the (|kappa|+kappa) amplitude factor evaluate to
    // zero, so the antikink rides on a flat (exponentially small) depth.
    const double d1 = periodic_delta(grid.x[i], x1, grid.length);
    s.eta[i] = amp * sech2(0.5 * lam * d1);
  }
  return s;
}

State1D ic_gaussian_1d(const Grid1D& grid, double x0, double amplitude, double width_sq,
                       double eta0) {
  State1D s{RealVec(grid.n, 0.0), RealVec(grid.n)};
  for (int i = 0; i < grid.n; ++i) {
    const double d = periodic_delta(grid.x[i], x0, grid.length);
    s.eta[i] = eta0 + amplitude * std::exp(-d * d / width_sq);
  }
  return s;
}

void ic_geostrophic(const Spectral2D& sp, const RealVec& eta, double f0, double g,
                    RealVec& ux, RealVec& uy) {
  ux = sp.derivative(eta, 1, 1);
  uy = sp.derivative(eta, 0, 1);
  const double c = g / f0;
  for (std::size_t i = 0; i < ux.size(); ++i) {
    ux[i] *= c;
    uy[i] *= -c;
  }
}

State2D ic_gaussian_ridges_2d(const Spectral2D& sp, const Params2D& p, const RidgeParams& rp) {
  const Grid2D& g = sp.grid();
  const double h0 = p.eta0;
  const double cx = 0.5 * g.lx, cy = 0.5 * g.ly;
  const double dxc = rp.dx_over_sigma * rp.sigma;
  const double dyc = rp.dy_over_sigma * rp.sigma;
  const double s2 = rp.sigma * rp.sigma;

  struct Bump { double x, y, a; };
  const Bump bumps[4] = {
      {cx - dxc, cy, h0},
      {cx + dxc, cy, h0},
      {cx, cy - dyc, rp.anomaly_frac * h0},
      {cx, cy + dyc, rp.anomaly_frac * h0},
  };

  State2D s{RealVec(g.nsamples()), RealVec(g.nsamples()), RealVec(g.nsamples(), p.eta0)};
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const std::size_t i = std::size_t(iy) * g.nx + ix;
      for (const Bump& b : bumps) {
        const double dx = periodic_delta(g.x[ix], b.x, g.lx);
        const double dy = periodic_delta(g.y[iy], b.y, g.ly);
        s.eta[i] += b.a * std::exp(-(dx * dx + dy * dy) / s2);
      }
    }
  ic_geostrophic(sp, s.eta, rp.f0, p.g, s.ux, s.uy);
  return s;
}

State2D ic_tanh_segment_2d(const Grid2D& grid, double eta0) {
  const Window wy{-8.0 / 3.0, 8.0 / 3.0, 0.5};
  const Window wx{10.0, 11.0, 0.5};
  State2D s{RealVec(grid.nsamples()), RealVec(grid.nsamples(), 0.0),
            RealVec(grid.nsamples(), eta0)};
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double y = grid.y[iy] - 0.5 * grid.ly;  // window centred on the mid-line
    for (int ix = 0; ix < grid.nx; ++ix)
      s.ux[std::size_t(iy) * grid.nx + ix] = tanh_window(wy, y) * tanh_window(wx, grid.x[ix]);
  }
  return s;
}

State2D ic_radial_star_2d(const Grid2D& grid, const StarParams& sp) {
  if (sp.arms < 1) throw ScenarioError("radial star: need at least one arm");
  const Window wr{sp.r1, sp.r2, sp.delta_r};
  const Window wth{-sp.half_width, sp.half_width, sp.delta_theta};
  const double cx = 0.5 * grid.lx, cy = 0.5 * grid.ly;
  const double two_pi = 2.0 * std::numbers::pi;

  State2D s{RealVec(grid.nsamples(), 0.0), RealVec(grid.nsamples(), 0.0),
            RealVec(grid.nsamples(), sp.eta0)};
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double dx = grid.x[ix] - cx;
      const double dy = grid.y[iy] - cy;
      const double r = std::hypot(dx, dy);
      if (r == 0.0) continue;
      const double th = std::atan2(dy, dx);
      double ang = 0.0;
      for (int j = 0; j < sp.arms; ++j) {
        double d = std::fmod(th - two_pi * j / sp.arms, two_pi);
        if (d < -std::numbers::pi) d += two_pi;
        if (d > std::numbers::pi) d -= two_pi;
        ang += tanh_window(wth, d);
      }
      const double a = sp.speed * tanh_window(wr, r) * ang;
      const std::size_t i = std::size_t(iy) * grid.nx + ix;
      s.ux[i] = -a * dy / r;  // counter-clockwise tangential direction
      s.uy[i] = a * dx / r;
    }
  return s;
}

}  // namespace bkbk
