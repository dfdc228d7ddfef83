#ifndef BKBK_SCENARIOS_HPP
#define BKBK_SCENARIOS_HPP

#include "bkbk/model1d.hpp"
#include "bkbk/model2d.hpp"
#include "bkbk/spectral.hpp"

namespace bkbk {

// Smooth indicator of (a,b): W(a,b;delta;z) = [tanh((z-a)/delta) - tanh((z-b)/delta)]/2.
struct Window {
  double a, b, delta;
};
double tanh_window(const Window& w, double z);

// Periodicised kink-antikink travelling-wave profile at t = 0: the exact
// single-kink solution lives on the line, so a second kink of opposite
// orientation is placed half a domain away. Centres sit at L/4 - phi and
// 3L/4 - phi. The seam mismatch is O(exp(-lambda*L/4)); domains where that
// exceeds 1e-6 are rejected. kappa must be positive (otherwise the depth
// profile degenerates to zero).
State1D ic_travelling_wave(const Grid1D& grid, const TravellingWaveParams& tw);

// u = 0, eta = eta0 + amplitude * exp(-(x-x0)^2/width_sq).
State1D ic_gaussian_1d(const Grid1D& grid, double x0, double amplitude, double width_sq,
                       double eta0);

// u = -(g/f0) zhat x grad(eta) = ((g/f0) d_y eta, -(g/f0) d_x eta);
// divergence-free to spectral accuracy.
void ic_geostrophic(const Spectral2D& sp, const RealVec& eta, double f0, double g,
                    RealVec& ux, RealVec& uy);

// Two positive Gaussian ridges of amplitude h0 = eta0 (width sigma = 0.7,
// profile exp(-r^2/sigma^2)) at (Lx/2 +- 1.1 sigma, Ly/2) plus two negative
// anomalies of amplitude -0.01 h0 at (Lx/2, Ly/2 +- 1.7 sigma); velocity in
// geostrophic balance with f0 = 50.
struct RidgeParams {
  double sigma = 0.7;
  double dx_over_sigma = 1.1;
  double dy_over_sigma = 1.7;
  double anomaly_frac = -0.01;
  double f0 = 50.0;
};
State2D ic_gaussian_ridges_2d(const Spectral2D& sp, const Params2D& p,
                              const RidgeParams& rp = {});

// Tanh-window velocity segment: ux = W(-8/3, 8/3; 0.5; y - Ly/2) * W(10, 11; 0.5; x),
// uy = 0, eta = eta0.
State2D ic_tanh_segment_2d(const Grid2D& grid, double eta0 = 4.0);

// Five-fold star of radial tanh-window segments with counter-clockwise
// tangential flow on a flat depth. Geometry defaults are artifact choices.
struct StarParams {
  int arms = 5;
  double r1 = 2.0, r2 = 5.0, delta_r = 0.5;   // radial window W(r1, r2; delta_r; r)
  double half_width = 0.2, delta_theta = 0.05;  // angular window, radians
  double speed = 1.0;
  double eta0 = 4.0;
};
State2D ic_radial_star_2d(const Grid2D& grid, const StarParams& sp = {});

}  // namespace bkbk

#endif
