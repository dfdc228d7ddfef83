#include "bkbk/model2d.hpp"

#include <cmath>

#include "bkbk/errors.hpp"
#include "bkbk/model1d.hpp"  // check_depth

namespace bkbk {

namespace {

double quadrature(const RealVec& f, double da) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * da;
}

SpecVec deriv_copy(const Spectral2D& sp, const SpecVec& fh, int axis, int order = 1) {
  SpecVec out = fh;
  sp.derivative_hat(out, axis, order);
  return out;
}

}  // namespace

CasimirFn casimir_one() {
  return {"one", [](double) { return 1.0; }, [](double) { return 0.0; }};
}
CasimirFn casimir_q() {
  return {"q", [](double q) { return q; }, [](double) { return 1.0; }};
}
CasimirFn casimir_q2() {
  return {"q2", [](double q) { return q * q; }, [](double q) { return 2.0 * q; }};
}
CasimirFn casimir_const(double value) {
  return {"const", [value](double) { return value; }, [](double) { return 0.0; }};
}

VarDerivs2D variational_derivatives_2d(const Spectral2D& sp, const State2D& s, const Params2D& p) {
  const Grid2D& g = sp.grid();
  check_depth(s.eta, p.eta_floor);
  const std::size_t n = g.nsamples();

  RealVec ln_eta(n);
  for (std::size_t i = 0; i < n; ++i) ln_eta[i] = std::log(s.eta[i]);
  SpecVec lh = sp.forward_dealiased(ln_eta);
  RealVec dlnx = sp.inverse(deriv_copy(sp, lh, 0));
  RealVec dlny = sp.inverse(deriv_copy(sp, lh, 1));

  RealVec mx(n), my(n);
  for (std::size_t i = 0; i < n; ++i) {
    mx[i] = s.eta[i] * s.ux[i];
    my[i] = s.eta[i] * s.uy[i];
  }
  SpecVec mxh = sp.forward_dealiased(mx);
  SpecVec myh = sp.forward_dealiased(my);
  sp.derivative_hat(mxh, 0, 1);
  sp.derivative_hat(myh, 1, 1);
  for (std::size_t j = 0; j < mxh.size(); ++j) mxh[j] += myh[j];
  RealVec div_m = sp.inverse(mxh);

  // g(1 - alpha^2 Lap) eta, evaluated spectrally.
  SpecVec eh = sp.forward(s.eta);
  const int nxh = g.nxh();
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < nxh; ++ix) {
      const std::size_t j = std::size_t(iy) * nxh + ix;
      eh[j] *= p.g * (1.0 + p.alpha * p.alpha * g.k2[j]);
    }
  RealVec grav = sp.inverse(eh);

  VarDerivs2D out{RealVec(n), RealVec(n), RealVec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.vx[i] = s.ux[i] - p.kappa * dlnx[i];
    out.vy[i] = s.uy[i] - p.kappa * dlny[i];
    out.bern[i] = 0.5 * (s.ux[i] * s.ux[i] + s.uy[i] * s.uy[i]) -
                  p.kappa * div_m[i] / s.eta[i] - grav[i];
  }
  return out;
}

void rhs_2d_modal(const Spectral2D& sp, const SpecVec s_hat[3], const Params2D& p,
                  SpecVec out[3]) {
  const Grid2D& g = sp.grid();
  const std::size_t n = g.nsamples();

  RealVec ux = sp.inverse(s_hat[0]);
  RealVec uy = sp.inverse(s_hat[1]);
  RealVec eta = sp.inverse(s_hat[2]);
  require_finite(ux, "rhs_2d ux");
  require_finite(uy, "rhs_2d uy");
  check_depth(eta, p.eta_floor);

  // Transport velocity v = u - kappa*grad(ln eta).
  RealVec ln_eta(n);
  for (std::size_t i = 0; i < n; ++i) ln_eta[i] = std::log(eta[i]);
  SpecVec lh = sp.forward_dealiased(ln_eta);
  RealVec dlnx = sp.inverse(deriv_copy(sp, lh, 0));
  RealVec dlny = sp.inverse(deriv_copy(sp, lh, 1));
  RealVec vx(n), vy(n);
  for (std::size_t i = 0; i < n; ++i) {
    vx[i] = ux[i] - p.kappa * dlnx[i];
    vy[i] = uy[i] - p.kappa * dlny[i];
  }

  RealVec dux_dx = sp.inverse(deriv_copy(sp, s_hat[0], 0));
  RealVec dux_dy = sp.inverse(deriv_copy(sp, s_hat[0], 1));
  RealVec duy_dx = sp.inverse(deriv_copy(sp, s_hat[1], 0));
  RealVec duy_dy = sp.inverse(deriv_copy(sp, s_hat[1], 1));

  SpecVec vxh = sp.forward_dealiased(vx);
  SpecVec vyh = sp.forward_dealiased(vy);
  RealVec dvx_dx = sp.inverse(deriv_copy(sp, vxh, 0));
  RealVec dvx_dy = sp.inverse(deriv_copy(sp, vxh, 1));
  RealVec dvy_dx = sp.inverse(deriv_copy(sp, vyh, 0));
  RealVec dvy_dy = sp.inverse(deriv_copy(sp, vyh, 1));

  // Bernoulli function B = |u|^2/2 - (kappa/eta)div(eta u) - g(1 - a^2 Lap)eta.
  RealVec mx(n), my(n);
  for (std::size_t i = 0; i < n; ++i) {
    mx[i] = eta[i] * ux[i];
    my[i] = eta[i] * uy[i];
  }
  SpecVec mxh = sp.forward_dealiased(mx);
  SpecVec myh = sp.forward_dealiased(my);
  sp.derivative_hat(mxh, 0, 1);
  sp.derivative_hat(myh, 1, 1);
  for (std::size_t j = 0; j < mxh.size(); ++j) mxh[j] += myh[j];
  RealVec div_m = sp.inverse(mxh);

  SpecVec gh = s_hat[2];
  const int nxh = g.nxh();
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < nxh; ++ix) {
      const std::size_t j = std::size_t(iy) * nxh + ix;
      gh[j] *= p.g * (1.0 + p.alpha * p.alpha * g.k2[j]);
    }
  RealVec grav = sp.inverse(gh);

  RealVec bern(n);
  for (std::size_t i = 0; i < n; ++i)
    bern[i] = 0.5 * (ux[i] * ux[i] + uy[i] * uy[i]) - p.kappa * div_m[i] / eta[i] - grav[i];
  SpecVec bh = sp.forward_dealiased(bern);
  RealVec dbx = sp.inverse(deriv_copy(sp, bh, 0));
  RealVec dby = sp.inverse(deriv_copy(sp, bh, 1));

  // u_t = -(v.grad)u - u_j grad v^j + grad B
  RealVec tx(n), ty(n), ex(n), ey(n);
  for (std::size_t i = 0; i < n; ++i) {
    tx[i] = -(vx[i] * dux_dx[i] + vy[i] * dux_dy[i]) -
            (ux[i] * dvx_dx[i] + uy[i] * dvy_dx[i]) + dbx[i];
    ty[i] = -(vx[i] * duy_dx[i] + vy[i] * duy_dy[i]) -
            (ux[i] * dvx_dy[i] + uy[i] * dvy_dy[i]) + dby[i];
    ex[i] = eta[i] * vx[i];
    ey[i] = eta[i] * vy[i];
  }
  out[0] = sp.forward_dealiased(tx);
  out[1] = sp.forward_dealiased(ty);

  // eta_t = -div(eta v), divergence form: the mean mode is exactly zero.
  SpecVec exh = sp.forward_dealiased(ex);
  SpecVec eyh = sp.forward_dealiased(ey);
  sp.derivative_hat(exh, 0, 1);
  sp.derivative_hat(eyh, 1, 1);
  out[2].resize(exh.size());
  for (std::size_t j = 0; j < exh.size(); ++j) out[2][j] = -(exh[j] + eyh[j]);
}

Tendency2D rhs_2d(const Spectral2D& sp, const State2D& s, const Params2D& p) {
  SpecVec sh[3] = {sp.forward(s.ux), sp.forward(s.uy), sp.forward(s.eta)};
  SpecVec th[3];
  rhs_2d_modal(sp, sh, p, th);
  return {sp.inverse(th[0]), sp.inverse(th[1]), sp.inverse(th[2])};
}

RealVec potential_vorticity(const Spectral2D& sp, const State2D& s, double eta_floor) {
  check_depth(s.eta, eta_floor);
  RealVec duy_dx = sp.derivative(s.uy, 0, 1);
  RealVec dux_dy = sp.derivative(s.ux, 1, 1);
  RealVec q(s.eta.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    q[i] = (duy_dx[i] - dux_dy[i]) / s.eta[i];
  return q;
}

double casimir_2d(const Spectral2D& sp, const State2D& s, const CasimirFn& fn, double eta_floor) {
  const Grid2D& g = sp.grid();
  RealVec q = potential_vorticity(sp, s, eta_floor);
  RealVec integrand(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) integrand[i] = s.eta[i] * fn.phi(q[i]);
  return quadrature(integrand, g.dx * g.dy);
}

double hamiltonian_2d(const Spectral2D& sp, const State2D& s, const Params2D& p) {
  const Grid2D& g = sp.grid();
  check_depth(s.eta, p.eta_floor);
  const std::size_t n = g.nsamples();

  RealVec ln_eta(n);
  for (std::size_t i = 0; i < n; ++i) ln_eta[i] = std::log(s.eta[i]);
  RealVec dlnx = sp.derivative(ln_eta, 0, 1);
  RealVec dlny = sp.derivative(ln_eta, 1, 1);
  RealVec dex = sp.derivative(s.eta, 0, 1);
  RealVec dey = sp.derivative(s.eta, 1, 1);

  RealVec fa(n), fb(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ke = 0.5 * s.eta[i] * (s.ux[i] * s.ux[i] + s.uy[i] * s.uy[i]);
    const double pen = 0.5 * p.g *
        (s.eta[i] * s.eta[i] + p.alpha * p.alpha * (dex[i] * dex[i] + dey[i] * dey[i]));
    // (m,eta) chart: -kappa*(eta u).grad(ln eta); (u,eta) chart: -kappa*u.grad(eta).
    fa[i] = ke + pen - p.kappa * s.eta[i] * (s.ux[i] * dlnx[i] + s.uy[i] * dlny[i]);
    fb[i] = ke + pen - p.kappa * (s.ux[i] * dex[i] + s.uy[i] * dey[i]);
  }
  const double ha = quadrature(fa, g.dx * g.dy);
  const double hb = quadrature(fb, g.dx * g.dy);
  const double scale = std::max({std::abs(ha), std::abs(hb), 1e-30});
  if (std::abs(ha - hb) > 1e-8 * scale)
    throw SpectralError("hamiltonian_2d: chart forms disagree beyond tolerance");
  return ha;
}

double stability_symbol_2d(double ue_x, double ue_y, double eta_e, double kappa, double kmag) {
  return eta_e - (ue_x * ue_x + ue_y * ue_y + kappa * kappa * kmag * kmag);
}

std::optional<double> stability_cutoff_2d(double ue_x, double ue_y, double eta_e, double kappa) {
  const double num = eta_e - (ue_x * ue_x + ue_y * ue_y);
  if (num <= 0.0 || kappa == 0.0) return std::nullopt;
  return std::sqrt(num) / std::abs(kappa);
}

std::pair<double, double> equilibrium_residual_2d(const Spectral2D& sp, const State2D& s,
                                                  const CasimirFn& fn, const Params2D& p) {
  const Grid2D& g = sp.grid();
  const std::size_t n = g.nsamples();
  RealVec q = potential_vorticity(sp, s, p.eta_floor);

  RealVec ln_eta(n);
  for (std::size_t i = 0; i < n; ++i) ln_eta[i] = std::log(s.eta[i]);
  RealVec dlnx = sp.derivative(ln_eta, 0, 1);
  RealVec dlny = sp.derivative(ln_eta, 1, 1);

  RealVec phip(n);
  for (std::size_t i = 0; i < n; ++i) phip[i] = fn.dphi(q[i]);
  RealVec dpx = sp.derivative(phip, 0, 1);
  RealVec dpy = sp.derivative(phip, 1, 1);

  RealVec div_u = sp.derivative(s.ux, 0, 1);
  RealVec duy_dy = sp.derivative(s.uy, 1, 1);
  for (std::size_t i = 0; i < n; ++i) div_u[i] += duy_dy[i];

  RealVec f1(n), f2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double vx = s.ux[i] - p.kappa * dlnx[i];
    const double vy = s.uy[i] - p.kappa * dlny[i];
    const double r1x = s.eta[i] * vx + dpy[i];   // zhat x grad f = (-f_y, f_x)
    const double r1y = s.eta[i] * vy - dpx[i];
    f1[i] = r1x * r1x + r1y * r1y;
    const double r2 = 0.5 * (s.ux[i] * s.ux[i] + s.uy[i] * s.uy[i]) + p.kappa * div_u[i] +
                      p.g * s.eta[i] + fn.phi(q[i]) - q[i] * fn.dphi(q[i]);
    f2[i] = r2 * r2;
  }
  const double da = g.dx * g.dy;
  return {std::sqrt(quadrature(f1, da)), std::sqrt(quadrature(f2, da))};
}

}  // namespace bkbk
