#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "bkbk/errors.hpp"
#include "bkbk/scenarios.hpp"
#include "bkbk/spectral.hpp"

using namespace bkbk;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs(const RealVec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("tanh_window algebra") {
  const Window w{-1.0, 1.0, 0.5};
  // at the centre: tanh((b-a)/(2 delta)); far outside: ~0;
  // at an edge: tanh((b-a)/delta)/2
  CHECK(tanh_window(w, 0.0) == doctest::Approx(std::tanh(2.0)).epsilon(1e-14));
  CHECK(std::abs(tanh_window(w, 10.0)) < 1e-15);
  CHECK(std::abs(tanh_window(w, -10.0)) < 1e-15);
  CHECK(tanh_window(w, 1.0) == doctest::Approx(0.5 * std::tanh(4.0)).epsilon(1e-14));
  CHECK(tanh_window(w, -1.0) == doctest::Approx(0.5 * std::tanh(4.0)).epsilon(1e-14));
  // explicit formula at a generic point
  const double z = 0.3;
  const double want = 0.5 * (std::tanh((z + 1.0) / 0.5) - std::tanh((z - 1.0) / 0.5));
  CHECK(tanh_window(w, z) == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("travelling-wave initial condition matches the exact profile") {
  const Grid1D g = Grid1D::make(48.0, 512);
  TravellingWaveParams tw;  // kappa = 0.5, lambda = 2, c = 2
  const State1D s = ic_travelling_wave(g, tw);

  // crest height: (lambda^2/2)|kappa|(|kappa|+kappa) = 1 for these parameters
  double eta_max = 0.0;
  for (double e : s.eta) eta_max = std::max(eta_max, e);
  CHECK(eta_max == doctest::Approx(1.0).epsilon(1e-6));

  // away from the seam the profile follows the single-kink solution centred
  // at L/4; compare u and eta pointwise in the middle half of [0, L/2)
  int worst = 0;
  double err = 0.0;
  for (int i = g.n / 8; i < 3 * g.n / 8; ++i) {
    const double z = g.x[i] - 12.0;
    const double u_want = tw.c - tw.lambda * tw.kappa * std::tanh(0.5 * tw.lambda * z);
    const double sech = 1.0 / std::cosh(0.5 * tw.lambda * z);
    const double eta_want =
        0.5 * tw.lambda * tw.lambda * tw.kappa * (2.0 * tw.kappa) * sech * sech;
    if (std::abs(s.u[i] - u_want) > err) {
      err = std::abs(s.u[i] - u_want);
      worst = i;
    }
    err = std::max(err, std::abs(s.eta[i] - eta_want));
  }
  INFO("worst sample ", worst);
  CHECK(err < 1e-6);
}

TEST_CASE("travelling-wave profile is smooth across the periodic seam") {
  const Grid1D g = Grid1D::make(48.0, 512);
  const State1D s = ic_travelling_wave(g, TravellingWaveParams{});
  // spectral derivative magnitudes stay bounded; in sample space the jump
  // between the last and first points is below the seam tolerance
  CHECK(std::abs(s.u[g.n - 1] - s.u[0]) < 1e-5);
  CHECK(std::abs(s.eta[g.n - 1] - s.eta[0]) < 1e-6);
}

TEST_CASE("travelling-wave construction rejects bad parameters") {
  const Grid1D g = Grid1D::make(48.0, 512);
  TravellingWaveParams tw;
  tw.kappa = -0.5;
  CHECK_THROWS_AS(ic_travelling_wave(g, tw), ScenarioError);

  // too-short domain: the kink pair cannot close up periodically to 1e-6
  const Grid1D g_short = Grid1D::make(6.0, 64);
  TravellingWaveParams tw2;
  try {
    ic_travelling_wave(g_short, tw2);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    // the message names the minimum usable length
    CHECK(std::string(e.what()).find("too short") != std::string::npos);
    CHECK(std::string(e.what()).find("L >") != std::string::npos);
  }
}

TEST_CASE("gaussian 1D initial condition") {
  const Grid1D g = Grid1D::make(96.0, 256);
  {
    const State1D s = ic_gaussian_1d(g, 54.0, 1.0, 8.0, 4.0);
    CHECK(max_abs(s.u) == 0.0);
    // value at the centre and one width away
    const int ic = int(std::round(54.0 / g.dx));
    CHECK(s.eta[ic] == doctest::Approx(4.0 + std::exp(-std::pow(g.x[ic] - 54.0, 2) / 8.0))
                           .epsilon(1e-14));
    double eta_max = 0.0;
    for (double e : s.eta) eta_max = std::max(eta_max, e);
    CHECK(eta_max == doctest::Approx(5.0).epsilon(1e-6));
  }
  {
    const State1D s = ic_gaussian_1d(g, 24.0, 1.0, 4.0, 1.0);
    const int ic = int(std::round(24.0 / g.dx));
    CHECK(s.eta[ic] == doctest::Approx(2.0).epsilon(1e-10));
  }
  {
    const State1D s = ic_gaussian_1d(g, 10.0, 0.0, 4.0, 1.0);
    for (double e : s.eta) CHECK(e == 1.0);
  }
}

TEST_CASE("geostrophic velocity balances the depth gradient") {
  const Grid2D g = Grid2D::make(16.0, 16.0, 64, 64);
  Spectral2D sp(g);

  SUBCASE("constant depth gives zero velocity") {
    RealVec eta(g.nsamples(), 4.0), ux, uy;
    ic_geostrophic(sp, eta, 50.0, 1.0, ux, uy);
    CHECK(max_abs(ux) < 1e-15);
    CHECK(max_abs(uy) < 1e-15);
  }

  SUBCASE("a y-dependent depth drives a zonal jet") {
    const double f0 = 50.0, grav = 2.0, ky = 2.0 * kPi / g.ly;
    RealVec eta(g.nsamples()), ux, uy;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) eta[j * g.nx + i] = 4.0 + std::sin(ky * g.y[j]);
    ic_geostrophic(sp, eta, f0, grav, ux, uy);
    double err = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double want = (grav / f0) * ky * std::cos(ky * g.y[j]);
        err = std::max(err, std::abs(ux[j * g.nx + i] - want));
      }
    CHECK(err < 1e-10);
    CHECK(max_abs(uy) < 1e-12);
  }

  SUBCASE("the balanced velocity is divergence-free") {
    RealVec eta(g.nsamples()), ux, uy;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double dx = g.x[i] - 8.0, dy = g.y[j] - 8.0;
        eta[j * g.nx + i] = 4.0 + std::exp(-(dx * dx + dy * dy) / 2.0);
      }
    ic_geostrophic(sp, eta, 50.0, 1.0, ux, uy);
    const auto dux = sp.derivative(ux, 0, 1);
    const auto duy = sp.derivative(uy, 1, 1);
    double div = 0.0;
    for (std::size_t i = 0; i < dux.size(); ++i)
      div = std::max(div, std::abs(dux[i] + duy[i]));
    CHECK(div < 1e-11);
  }
}

TEST_CASE("gaussian ridges: geometry and balance") {
  const Grid2D g = Grid2D::make(16.0, 16.0, 96, 96);
  Spectral2D sp(g);
  Params2D p;  // eta0 = 4, g = 1
  const RidgeParams rp;
  const State2D s = ic_gaussian_ridges_2d(sp, p, rp);

  auto eta_at = [&](double X, double Y) {
    // documented construction: two +h0 bumps and two -0.01 h0 anomalies
    auto bump = [&](double cx, double cy) {
      const double dx = X - cx, dy = Y - cy;
      return std::exp(-(dx * dx + dy * dy) / (rp.sigma * rp.sigma));
    };
    const double cx = 0.5 * g.lx, cy = 0.5 * g.ly, off = rp.dx_over_sigma * rp.sigma;
    const double ay = rp.dy_over_sigma * rp.sigma;
    return p.eta0 + p.eta0 * (bump(cx - off, cy) + bump(cx + off, cy)) +
           rp.anomaly_frac * p.eta0 * (bump(cx, cy - ay) + bump(cx, cy + ay));
  };

  // sample the depth field on grid points near the features and in the far field
  double err = 0.0;
  for (int j = 0; j < g.ny; j += 3)
    for (int i = 0; i < g.nx; i += 3) {
      err = std::max(err, std::abs(s.eta[j * g.nx + i] - eta_at(g.x[i], g.y[j])));
    }
  CHECK(err < 1e-9);  // periodic images only, everything else exact

  // far corner relaxes to the background depth
  CHECK(s.eta[0] == doctest::Approx(p.eta0).epsilon(1e-9));

  // the velocity is in geostrophic balance with the same depth field
  RealVec ux, uy;
  ic_geostrophic(sp, s.eta, rp.f0, p.g, ux, uy);
  double verr = 0.0;
  for (std::size_t i = 0; i < ux.size(); ++i) {
    verr = std::max(verr, std::abs(s.ux[i] - ux[i]));
    verr = std::max(verr, std::abs(s.uy[i] - uy[i]));
  }
  CHECK(verr < 1e-13);

  // and therefore divergence-free
  const auto dux = sp.derivative(s.ux, 0, 1);
  const auto duy = sp.derivative(s.uy, 1, 1);
  double div = 0.0;
  for (std::size_t i = 0; i < dux.size(); ++i)
    div = std::max(div, std::abs(dux[i] + duy[i]));
  CHECK(div < 1e-11);
}

TEST_CASE("tanh velocity segment") {
  const Grid2D g = Grid2D::make(21.0, 16.0, 128, 128);
  const State2D s = ic_tanh_segment_2d(g, 4.0);

  for (double e : s.eta) CHECK(e == 4.0);
  CHECK(max_abs(s.uy) == 0.0);

  // compare against the documented product of tanh windows at grid points
  auto want = [&](double X, double Y) {
    auto win = [](double a, double b, double d, double z) {
      return 0.5 * (std::tanh((z - a) / d) - std::tanh((z - b) / d));
    };
    return win(-8.0 / 3.0, 8.0 / 3.0, 0.5, Y - 0.5 * g.ly) * win(10.0, 11.0, 0.5, X);
  };
  double err = 0.0;
  for (int j = 0; j < g.ny; j += 5)
    for (int i = 0; i < g.nx; i += 5)
      err = std::max(err, std::abs(s.ux[j * g.nx + i] - want(g.x[i], g.y[j])));
  CHECK(err < 1e-14);

  auto at = [&](double X, double Y) {
    int i = int(std::round(X / g.dx)), j = int(std::round(Y / g.dy));
    return s.ux[j * g.nx + i];
  };
  // mid-segment value: x-factor tanh(1), y-factor ~1
  CHECK(at(10.5, 0.5 * g.ly) == doctest::Approx(std::tanh(1.0)).epsilon(1e-4));
  // outside the x-window it vanishes
  CHECK(std::abs(at(5.0, 0.5 * g.ly)) < 1e-8);
  // well outside the y-window it vanishes too
  CHECK(std::abs(at(10.5, 0.5 * g.ly + 7.0)) < 1e-6);
}

TEST_CASE("radial star: symmetry and geometry") {
  const Grid2D g = Grid2D::make(16.0, 16.0, 160, 160);
  StarParams sp;  // 5 arms, tangential speed 1
  const State2D s = ic_radial_star_2d(g, sp);

  for (double e : s.eta) CHECK(e == sp.eta0);

  const double cx = 0.5 * g.lx, cy = 0.5 * g.ly;
  auto sample = [&](double r, double theta, double& ur, double& ut) {
    // bilinear interpolation so rotated probes agree to high order
    const double X = cx + r * std::cos(theta), Y = cy + r * std::sin(theta);
    const double fi = X / g.dx, fj = Y / g.dy;
    const int i0 = int(std::floor(fi)) % g.nx, j0 = int(std::floor(fj)) % g.ny;
    const int i1 = (i0 + 1) % g.nx, j1 = (j0 + 1) % g.ny;
    const double ax = fi - std::floor(fi), ay = fj - std::floor(fj);
    auto lerp = [&](const RealVec& f) {
      return (1 - ax) * (1 - ay) * f[j0 * g.nx + i0] + ax * (1 - ay) * f[j0 * g.nx + i1] +
             (1 - ax) * ay * f[j1 * g.nx + i0] + ax * ay * f[j1 * g.nx + i1];
    };
    const double ux = lerp(s.ux), uy = lerp(s.uy);
    ur = ux * std::cos(theta) + uy * std::sin(theta);
    ut = -ux * std::sin(theta) + uy * std::cos(theta);
  };

  // five-fold symmetry: the same (r, theta) probe after rotating by 2 pi/5
  const double rmid = 0.5 * (sp.r1 + sp.r2);
  // window product at the probe: radial tanh(3), angular tanh(4)
  const double ut_want = sp.speed * std::tanh(3.0) * std::tanh(4.0);
  std::vector<double> per_arm;
  for (int arm = 0; arm < sp.arms; ++arm) {
    const double th = 2.0 * kPi * arm / sp.arms;
    double ur, ut;
    sample(rmid, th, ur, ut);
    // purely tangential, counter-clockwise, same on every arm
    CHECK(std::abs(ur) < 1e-3);  // bilinear probe truncation
    CHECK(ut == doctest::Approx(ut_want).epsilon(1e-2));
    per_arm.push_back(ut);
  }
  // arm-to-arm scatter is limited only by the interpolation of the probe
  for (double v : per_arm) CHECK(std::abs(v - per_arm[0]) < 2e-3);

  // between arms the flow is negligible
  double ur, ut;
  sample(rmid, kPi / double(sp.arms), ur, ut);
  CHECK(std::abs(ur) < 1e-6);
  CHECK(std::abs(ut) < 1e-6);

  // outside the radial window only the tanh tail ~ (1 - tanh(4))/2 survives
  sample(sp.r2 + 2.0, 0.0, ur, ut);
  CHECK(std::abs(ut) < 1e-3);
  CHECK(std::abs(ut) == doctest::Approx(0.5 * (1.0 - std::tanh(4.0)) * std::tanh(4.0))
                            .epsilon(0.05));
}
