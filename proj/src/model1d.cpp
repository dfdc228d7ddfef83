#include "bkbk/model1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bkbk/errors.hpp"

namespace bkbk {

void check_depth(const RealVec& eta, double floor_) {
  double mn = eta.empty() ? 0.0 : eta[0];
  std::size_t at = 0;
  for (std::size_t i = 1; i < eta.size(); ++i)
    if (eta[i] < mn) { mn = eta[i]; at = i; }
  if (!(mn > floor_)) throw DepthUnderflow(mn, at);
}

namespace {
double quadrature(const RealVec& f, double dx) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * dx;
}
}  // namespace

Tendency1D rhs_1d(const Spectral1D& sp, const State1D& s, const Params1D& p) {
  const Grid1D& g = sp.grid();
  require_finite(s.u, "rhs_1d u");
  require_finite(s.eta, "rhs_1d eta");
  check_depth(s.eta, p.eta_floor);

  const int n = g.n;
  RealVec uu(n), ue(n);
  for (int i = 0; i < n; ++i) {
    uu[i] = 0.5 * s.u[i] * s.u[i];
    ue[i] = s.u[i] * s.eta[i];
  }
  SpecVec uh = sp.forward(s.u);
  SpecVec eh = sp.forward(s.eta);
  SpecVec flux_u = sp.forward_dealiased(uu);
  SpecVec flux_e = sp.forward_dealiased(ue);

  // -d_x(u^2/2 + g*eta + kappa*u_x) - nu*k^4*u ; -d_x(u*eta - kappa*eta_x) - nu*k^4*eta.
  const int nh = g.nhalf();
  SpecVec du(nh), de(nh);
  for (int j = 0; j < nh; ++j) {
    const double k = g.k[j];
    const double k4 = k * k * k * k;
    const cplx ik(0.0, k);
    du[j] = -ik * (flux_u[j] + p.g * eh[j] + ik * p.kappa * uh[j]) - p.nu * k4 * uh[j];
    de[j] = -ik * (flux_e[j] - ik * p.kappa * eh[j]) - p.nu * k4 * eh[j];
  }
  // Zero the odd-derivative part at Nyquist; only the even nu*k^4 term survives.
  du[nh - 1] = cplx(du[nh - 1].real(), 0.0);
  de[nh - 1] = cplx(de[nh - 1].real(), 0.0);
  return {sp.inverse(du), sp.inverse(de)};
}

Tendency1D rhs_1d_vform(const Spectral1D& sp, const VState1D& s, double kappa_sq,
                        const Params1D& p) {
  const Grid1D& g = sp.grid();
  require_finite(s.v, "rhs_1d_vform v");
  require_finite(s.eta, "rhs_1d_vform eta");
  check_depth(s.eta, p.eta_floor);

  const int n = g.n;
  SpecVec eh = sp.forward(s.eta);
  SpecVec vh = sp.forward(s.v);
  SpecVec ex_h = eh, exx_h = eh;
  sp.derivative_hat(ex_h, 1);
  sp.derivative_hat(exx_h, 2);
  RealVec ex = sp.inverse(ex_h);
  RealVec exx = sp.inverse(exx_h);

  RealVec flux(n), ev(n);
  for (int i = 0; i < n; ++i) {
    const double r = ex[i] / s.eta[i];
    flux[i] = 0.5 * s.v[i] * s.v[i] - 0.5 * kappa_sq * r * r + kappa_sq * exx[i] / s.eta[i];
    ev[i] = s.eta[i] * s.v[i];
  }
  SpecVec flux_h = sp.forward_dealiased(flux);
  SpecVec ev_h = sp.forward_dealiased(ev);

  const int nh = g.nhalf();
  SpecVec dv(nh), de(nh);
  for (int j = 0; j < nh; ++j) {
    const double k = g.k[j];
    const cplx ik(0.0, k);
    dv[j] = -ik * (flux_h[j] + p.g * eh[j]) - p.nu * (k * k * k * k) * vh[j];
    de[j] = -ik * ev_h[j] - p.nu * (k * k * k * k) * eh[j];
  }
  dv[nh - 1] = cplx(dv[nh - 1].real(), 0.0);
  de[nh - 1] = cplx(de[nh - 1].real(), 0.0);
  return {sp.inverse(dv), sp.inverse(de)};
}

VState1D chart_u_to_v(const Spectral1D& sp, const State1D& s, const Params1D& p) {
  check_depth(s.eta, p.eta_floor);
  const int n = sp.grid().n;
  RealVec ln_eta(n);
  for (int i = 0; i < n; ++i) ln_eta[i] = std::log(s.eta[i]);
  RealVec dln = sp.derivative(ln_eta, 1);
  VState1D out{s.u, s.eta};
  for (int i = 0; i < n; ++i) out.v[i] = s.u[i] - p.kappa * dln[i];
  return out;
}

State1D chart_v_to_u(const Spectral1D& sp, const VState1D& s, const Params1D& p) {
  check_depth(s.eta, p.eta_floor);
  const int n = sp.grid().n;
  RealVec ln_eta(n);
  for (int i = 0; i < n; ++i) ln_eta[i] = std::log(s.eta[i]);
  RealVec dln = sp.derivative(ln_eta, 1);
  State1D out{s.v, s.eta};
  for (int i = 0; i < n; ++i) out.u[i] = s.v[i] + p.kappa * dln[i];
  return out;
}

std::pair<RealVec, RealVec> chart_u_to_m(const State1D& s) {
  RealVec m(s.u.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = s.eta[i] * s.u[i];
  return {m, s.eta};
}

State1D chart_m_to_u(const RealVec& m, const RealVec& eta, double eta_floor) {
  check_depth(eta, eta_floor);
  State1D s{RealVec(m.size()), eta};
  for (std::size_t i = 0; i < m.size(); ++i) s.u[i] = m[i] / eta[i];
  return s;
}

std::array<cplx, 2> dispersion_omega(double k, const Params1D& p) {
  const double disc = p.g * p.eta0 - p.kappa * p.kappa * k * k;
  cplx root;
  if (disc >= 0.0)
    root = cplx(std::sqrt(disc), 0.0);
  else
    root = cplx(0.0, std::sqrt(-disc));  // positive imaginary branch
  const cplx damp(0.0, -p.nu * k * k * k * k);
  return {damp + k * root, damp - k * root};
}

double critical_wavenumber(const Params1D& p) {
  if (p.kappa == 0.0)
    throw std::invalid_argument("critical_wavenumber: dispersionless (kappa = 0), no finite cutoff");
  return std::sqrt(p.g * p.eta0) / std::abs(p.kappa);
}

double critical_nu(const Params1D& p) {
  const double ak = std::abs(p.kappa);
  return 2.0 * ak * ak * ak / (3.0 * std::sqrt(3.0) * p.g * p.eta0);
}

State1D travelling_wave(const RealVec& x, double t, const TravellingWaveParams& tw) {
  const double ak = std::abs(tw.kappa);
  const double amp = 0.5 * tw.lambda * tw.lambda * ak * (ak + tw.kappa);
  State1D s{RealVec(x.size()), RealVec(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = 0.5 * tw.lambda * (x[i] - tw.c * t + tw.phi);
    const double th = std::tanh(z);
    s.u[i] = tw.c - tw.lambda * ak * th;
    s.eta[i] = amp * (1.0 - th * th);  // sech^2
  }
  return s;
}

double hamiltonian_1d(const Spectral1D& sp, const State1D& s, const Params1D& p) {
  const Grid1D& g = sp.grid();
  RealVec ex = sp.derivative(s.eta, 1);
  RealVec integrand(g.n);
  for (int i = 0; i < g.n; ++i)
    integrand[i] = 0.5 * s.eta[i] * s.u[i] * s.u[i] - p.kappa * s.u[i] * ex[i] +
                   0.5 * p.g * s.eta[i] * s.eta[i];
  return quadrature(integrand, g.dx);
}

double hamiltonian_1d_vform(const Spectral1D& sp, const VState1D& s, double kappa_sq,
                            const Params1D& p) {
  const Grid1D& g = sp.grid();
  check_depth(s.eta, p.eta_floor);
  RealVec ex = sp.derivative(s.eta, 1);
  RealVec sqrt_eta(g.n);
  for (int i = 0; i < g.n; ++i) sqrt_eta[i] = std::sqrt(s.eta[i]);
  RealVec dsq = sp.derivative(sqrt_eta, 1);

  RealVec fa(g.n), fb(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double common = 0.5 * s.eta[i] * s.v[i] * s.v[i] + 0.5 * p.g * s.eta[i] * s.eta[i];
    fa[i] = common - 0.5 * kappa_sq * ex[i] * ex[i] / s.eta[i];
    fb[i] = common - 2.0 * kappa_sq * dsq[i] * dsq[i];
  }
  const double ha = quadrature(fa, g.dx);
  const double hb = quadrature(fb, g.dx);
  const double scale = std::max({std::abs(ha), std::abs(hb), 1e-30});
  if (std::abs(ha - hb) > 1e-10 * scale)
    throw SpectralError("hamiltonian_1d_vform: the two algebraic forms disagree");
  return ha;
}

double second_variation_symbol_1d(double u_e, double eta_e, double kappa, double k) {
  return eta_e - (u_e * u_e + kappa * kappa * k * k);
}

}  // namespace bkbk
