#ifndef BKBK_SPECTRAL_HPP
#define BKBK_SPECTRAL_HPP

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "bkbk/grid.hpp"

namespace bkbk {

using cplx = std::complex<double>;
using SpecVec = std::vector<cplx>;     // half spectrum of a real field
using RealVec = std::vector<double>;

// Fourier collocation on a periodic 1D grid. Forward transforms carry the
// 1/n normalisation so that inverse(forward(f)) == f to round-off and the
// stored coefficients are resolution-independent mode amplitudes.
//
// Instances own FFTW plans and scratch buffers; a single instance is not
// safe for concurrent use, distinct instances are.
class Spectral1D {
 public:
  explicit Spectral1D(const Grid1D& grid);
  ~Spectral1D();
  Spectral1D(const Spectral1D&) = delete;
  Spectral1D& operator=(const Spectral1D&) = delete;

  const Grid1D& grid() const { return grid_; }

  SpecVec forward(const RealVec& f) const;
  RealVec inverse(const SpecVec& fh) const;

  // Exact Fourier-collocation derivative of a real field. The Nyquist mode
  // of odd derivatives is zeroed to keep the result real.
  RealVec derivative(const RealVec& f, int order) const;
  void derivative_hat(SpecVec& fh, int order) const;

  // 2/3-rule dealiasing: zero modes with |j| > floor(n/3).
  void dealias(SpecVec& fh) const;
  SpecVec forward_dealiased(const RealVec& f) const;

  // Full-spectrum transforms of complex fields (NLS wavefunction path).
  std::vector<cplx> forward_c(const std::vector<cplx>& f) const;
  std::vector<cplx> inverse_c(const std::vector<cplx>& fh) const;
  std::vector<cplx> derivative_c(const std::vector<cplx>& f, int order) const;

 private:
  Grid1D grid_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// 2D counterpart on the half spectrum ny x (nx/2+1), mode (jx,jy) stored at
// jy*(nx/2+1)+jx. Physical fields are row-major ny x nx.
class Spectral2D {
 public:
  explicit Spectral2D(const Grid2D& grid);
  ~Spectral2D();
  Spectral2D(const Spectral2D&) = delete;
  Spectral2D& operator=(const Spectral2D&) = delete;

  const Grid2D& grid() const { return grid_; }

  SpecVec forward(const RealVec& f) const;
  RealVec inverse(const SpecVec& fh) const;

  RealVec derivative(const RealVec& f, int axis, int order) const;  // axis: 0=x, 1=y
  void derivative_hat(SpecVec& fh, int axis, int order) const;

  void dealias(SpecVec& fh) const;
  SpecVec forward_dealiased(const RealVec& f) const;

 private:
  Grid2D grid_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Per-mode 2x2 complex solve used by the 1D IMEX stage. Throws SpectralError
// naming the wavenumber index when a mode matrix has condition number > 1e12.
struct Mat2c {
  cplx a11, a12, a21, a22;
};
std::vector<std::array<cplx, 2>> mode_solve_1d(const std::vector<Mat2c>& a,
                                               const std::vector<std::array<cplx, 2>>& rhs);

void require_finite(const RealVec& f, const char* what);

}  // namespace bkbk

#endif
