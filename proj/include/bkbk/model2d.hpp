#ifndef BKBK_MODEL2D_HPP
#define BKBK_MODEL2D_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bkbk/spectral.hpp"

namespace bkbk {

struct Params2D {
  double kappa = -0.05;
  double g = 1.0;
  double alpha = 0.0;       // slope-penalty length; 0 recovers the plain Hamiltonian
  double eta0 = 4.0;
  double eta_floor = 1e-8;
};

struct State2D {
  RealVec ux, uy, eta;
};

struct Tendency2D {
  RealVec dux, duy, deta;
};

// Variational derivatives of the regularised Hamiltonian:
// v = u - kappa*grad(ln eta), B = |u|^2/2 - (kappa/eta)*div(eta u) - g(1 - alpha^2 Lap)eta.
struct VarDerivs2D {
  RealVec vx, vy, bern;
};

// Casimir density function Phi with its analytic derivative.
struct CasimirFn {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
};
CasimirFn casimir_one();
CasimirFn casimir_q();
CasimirFn casimir_q2();
CasimirFn casimir_const(double value);

VarDerivs2D variational_derivatives_2d(const Spectral2D& sp, const State2D& s, const Params2D& p);

// u_t = -(v.grad)u - u_j grad v^j + grad B,  eta_t = -div(eta v).
// The depth tendency has exactly zero mean (divergence form).
Tendency2D rhs_2d(const Spectral2D& sp, const State2D& s, const Params2D& p);

// Modal-in/modal-out variant used by the time stepper; s_hat and out are
// {ux_hat, uy_hat, eta_hat} half-spectra. eta must stay above the floor.
void rhs_2d_modal(const Spectral2D& sp, const SpecVec s_hat[3], const Params2D& p,
                  SpecVec out[3]);

// q = (d_x u_y - d_y u_x)/eta.
RealVec potential_vorticity(const Spectral2D& sp, const State2D& s, double eta_floor);

// C_Phi = integral of eta*Phi(q).
double casimir_2d(const Spectral2D& sp, const State2D& s, const CasimirFn& fn, double eta_floor);

// Regularised Hamiltonian in the (m = eta*u, eta) chart:
//   h = integral of |m|^2/(2 eta) - kappa*m.grad(ln eta) + (g/2)(eta^2 + alpha^2|grad eta|^2).
// For alpha = 0 the (u,eta)-chart form (kappa*u.grad(eta) term) is evaluated
// as a self-check; the two must agree to 1e-10 relative.
double hamiltonian_2d(const Spectral2D& sp, const State2D& s, const Params2D& p);

// sigma(|k|^2) = eta_e - |u_e|^2 - kappa^2 |k|^2.
double stability_symbol_2d(double ue_x, double ue_y, double eta_e, double kappa, double kmag);

// Cutoff |k|* = sqrt(eta_e - |u_e|^2)/|kappa| where it exists.
std::optional<double> stability_cutoff_2d(double ue_x, double ue_y, double eta_e, double kappa);

// L2 norms of the two first-variation equilibrium residuals:
//   r1: eta*v - zhat x grad(Phi'(q)),
//   r2: |u|^2/2 + kappa*div(u) + g*eta + Phi(q) - q*Phi'(q).
std::pair<double, double> equilibrium_residual_2d(const Spectral2D& sp, const State2D& s,
                                                  const CasimirFn& fn, const Params2D& p);

}  // namespace bkbk

#endif
