#include "bkbk/nls.hpp"

#include <cmath>
#include <stdexcept>

#include "bkbk/errors.hpp"

namespace bkbk {

void nls_strang_step(const Spectral1D& sp, std::vector<cplx>& psi, double dt,
                     const NlsParams& p) {
  const Grid1D& g = sp.grid();
  if (int(psi.size()) != g.n) throw SpectralError("nls_strang_step: size mismatch");

  auto half_phase = [&](std::vector<cplx>& f) {
    for (cplx& z : f) {
      const double phase = -0.5 * dt * p.sign * p.g_nls * std::norm(z);
      z *= cplx(std::cos(phase), std::sin(phase));
    }
  };

  half_phase(psi);
  std::vector<cplx> ph = sp.forward_c(psi);
  for (int j = 0; j < g.n; ++j) {
    const double phase = -0.5 * dt * g.k[j] * g.k[j];
    ph[j] *= cplx(std::cos(phase), std::sin(phase));
  }
  psi = sp.inverse_c(ph);
  half_phase(psi);
}

std::vector<cplx> nls_run(const Spectral1D& sp, std::vector<cplx> psi, double dt,
                          double t_end, const NlsParams& p) {
  if (!(dt > 0.0)) throw std::invalid_argument("nls_run: dt must be positive");
  const long n = std::lround(t_end / dt);
  if (std::abs(n * dt - t_end) > 1e-9 * std::max(1.0, t_end))
    throw std::invalid_argument("nls_run: t_end is not a whole number of steps");
  for (long i = 0; i < n; ++i) nls_strang_step(sp, psi, dt, p);
  return psi;
}

VState1D madelung(const Spectral1D& sp, const std::vector<cplx>& psi, double eta_floor) {
  const Grid1D& g = sp.grid();
  std::vector<cplx> dpsi = sp.derivative_c(psi, 1);
  VState1D out{RealVec(g.n), RealVec(g.n)};
  for (int i = 0; i < g.n; ++i) out.eta[i] = std::norm(psi[i]);
  check_depth(out.eta, eta_floor);
  for (int i = 0; i < g.n; ++i)
    out.v[i] = std::imag(std::conj(psi[i]) * dpsi[i]) / out.eta[i];
  return out;
}

double nls_hamiltonian(const Spectral1D& sp, const std::vector<cplx>& psi,
                       const NlsParams& p) {
  const Grid1D& g = sp.grid();
  std::vector<cplx> dpsi = sp.derivative_c(psi, 1);
  double h = 0.0;
  for (int i = 0; i < g.n; ++i)
    h += 0.5 * std::norm(dpsi[i]) + 0.5 * p.sign * p.g_nls * std::norm(psi[i]) * std::norm(psi[i]);
  return h * g.dx;
}

double bogoliubov_omega(double k, double eta0, double g_nls) {
  return std::abs(k) * std::sqrt(g_nls * eta0 + 0.25 * k * k);
}

double vform_residual(const Spectral1D& sp, const VState1D& prev, const VState1D& mid,
                      const VState1D& next, double dt, const Params1D& p) {
  const Grid1D& g = sp.grid();
  Tendency1D rhs = rhs_1d_vform(sp, mid, -0.25, p);
  double num = 0.0, den_rhs = 0.0, den_state = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double dv = (next.v[i] - prev.v[i]) / (2.0 * dt) - rhs.du[i];
    const double de = (next.eta[i] - prev.eta[i]) / (2.0 * dt) - rhs.deta[i];
    num += dv * dv + de * de;
    den_rhs += rhs.du[i] * rhs.du[i] + rhs.deta[i] * rhs.deta[i];
    den_state += mid.v[i] * mid.v[i] + mid.eta[i] * mid.eta[i];
  }
  return std::sqrt(num) / (std::sqrt(den_rhs) + std::sqrt(den_state));
}

}  // namespace bkbk
