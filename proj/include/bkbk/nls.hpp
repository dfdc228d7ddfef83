#ifndef BKBK_NLS_HPP
#define BKBK_NLS_HPP

#include <vector>

#include "bkbk/model1d.hpp"
#include "bkbk/spectral.hpp"

namespace bkbk {

struct NlsParams {
  int sign = +1;        // +1 defocusing, -1 focusing
  double g_nls = 1.0;   // cubic coupling strength
};

// One Strang step of i psi_t = -psi_xx/2 + sign*g|psi|^2 psi:
// half nonlinear phase, full Fourier kinetic flight, half nonlinear phase.
void nls_strang_step(const Spectral1D& sp, std::vector<cplx>& psi, double dt,
                     const NlsParams& p);

// Integrate to t_end with fixed dt (t_end must be an integer number of steps).
std::vector<cplx> nls_run(const Spectral1D& sp, std::vector<cplx> psi, double dt,
                          double t_end, const NlsParams& p);

// Madelung variables eta = |psi|^2, v = Im(conj(psi) psi_x)/|psi|^2.
// Throws DepthUnderflow when |psi|^2 dips to the floor.
VState1D madelung(const Spectral1D& sp, const std::vector<cplx>& psi, double eta_floor);

// H_nls = integral of |psi_x|^2/2 + sign*(g/2)|psi|^4; conserved by the flow
// (the splitting preserves it to O(dt^2)).
double nls_hamiltonian(const Spectral1D& sp, const std::vector<cplx>& psi,
                       const NlsParams& p);

// Bogoliubov frequency of a plane-wave background of density eta0:
// omega(k)^2 = k^2 (g*eta0 + k^2/4), for the defocusing sign.
double bogoliubov_omega(double k, double eta0, double g_nls);

// How well a Madelung-mapped NLS trajectory satisfies the hydrodynamic v-form
// with kappa^2 = -1/4: given three consecutive Madelung states at spacing dt,
// returns ||centred d/dt - rhs||_2 / (||rhs||_2 + ||state||_2) evaluated at
// the middle state.
double vform_residual(const Spectral1D& sp, const VState1D& prev, const VState1D& mid,
                      const VState1D& next, double dt, const Params1D& p);

}  // namespace bkbk

#endif
