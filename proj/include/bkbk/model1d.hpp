#ifndef BKBK_MODEL1D_HPP
#define BKBK_MODEL1D_HPP

#include <array>
#include <vector>

#include "bkbk/spectral.hpp"

namespace bkbk {

struct Params1D {
  double kappa = 0.5;      // dispersive transport-velocity parameter
  double g = 1.0;          // gravity (nondimensional scaling sets g = 1)
  double nu = 0.0;         // fourth-order dissipation coefficient
  double eta0 = 1.0;       // background depth used by linear theory / IMEX split
  double eta_floor = 1e-8; // depth values at or below this are an error
};

struct State1D {
  RealVec u, eta;
};

// State in the modified-transport-velocity chart, v = u - kappa*d_x(ln eta).
struct VState1D {
  RealVec v, eta;
};

struct Tendency1D {
  RealVec du, deta;
};

struct TravellingWaveParams {
  double kappa = 0.5;  // must be positive for a nontrivial depth
  double lambda = 2.0; // inverse-length steepness
  double c = 2.0;      // wave speed
  double phi = 0.0;    // phase offset
};

// Throws DepthUnderflow if min(eta) <= floor.
void check_depth(const RealVec& eta, double floor_);

// Tendency of the regularised system in conservative form,
//   u_t   = -d_x( u^2/2 + g*eta + kappa*u_x + nu*u_xxx ),
//   eta_t = -d_x( u*eta - kappa*eta_x + nu*eta_xxx ).
// Quadratic products are dealiased by the 2/3 rule. Both tendencies have
// exactly zero spatial mean.
Tendency1D rhs_1d(const Spectral1D& sp, const State1D& s, const Params1D& p);

// v-form tendency,
//   v_t   = -d_x( v^2/2 - (ks/2)(eta_x/eta)^2 + ks*eta_xx/eta + g*eta ) - nu*d_x^4 v,
//   eta_t = -d_x( eta*v ) - nu*d_x^4 eta,
// where ks stands in for kappa^2 and may be negative (ks = -1/4 is the
// NLS/Madelung case).
Tendency1D rhs_1d_vform(const Spectral1D& sp, const VState1D& s, double kappa_sq,
                        const Params1D& p);

VState1D chart_u_to_v(const Spectral1D& sp, const State1D& s, const Params1D& p);
State1D chart_v_to_u(const Spectral1D& sp, const VState1D& s, const Params1D& p);

// (u,eta) <-> (m = eta*u, eta), pointwise.
std::pair<RealVec, RealVec> chart_u_to_m(const State1D& s);
State1D chart_m_to_u(const RealVec& m, const RealVec& eta, double eta_floor);

// Roots omega_{+,-}(k) = -i*nu*k^4 +- k*sqrt(g*eta0 - kappa^2 k^2), with the
// square root on the positive imaginary branch inside the unstable band so
// that omega_plus carries the growing sign. Returns {omega_plus, omega_minus}.
std::array<cplx, 2> dispersion_omega(double k, const Params1D& p);

// k_c = sqrt(g*eta0)/|kappa|; throws std::invalid_argument for kappa = 0.
double critical_wavenumber(const Params1D& p);

// nu_cr = 2|kappa|^3 / (3*sqrt(3)*g*eta0).
double critical_nu(const Params1D& p);

// Exact travelling wave of the unregularised system sampled at x (single
// kink on the line; periodicisation lives in the scenario builder):
//   u   = c - lambda*|kappa|*tanh(lambda*(x - c t + phi)/2),
//   eta = (lambda^2/2)*|kappa|*(|kappa|+kappa)*sech^2(lambda*(x - c t + phi)/2).
State1D travelling_wave(const RealVec& x, double t, const TravellingWaveParams& tw);

// H(u,eta) = integral of eta*u^2/2 - kappa*u*eta_x + g*eta^2/2.
double hamiltonian_1d(const Spectral1D& sp, const State1D& s, const Params1D& p);

// h(v,eta) = integral of eta*v^2/2 - (ks/(2 eta))*eta_x^2 + g*eta^2/2.
// The Fisher-Rao form (with (d_x sqrt(eta))^2) is evaluated as a self-check
// and must agree to 1e-10 relative.
double hamiltonian_1d_vform(const Spectral1D& sp, const VState1D& s, double kappa_sq,
                            const Params1D& p);

// sigma(k^2) = eta_e - u_e^2 - kappa^2 k^2.
double second_variation_symbol_1d(double u_e, double eta_e, double kappa, double k);

}  // namespace bkbk

#endif
