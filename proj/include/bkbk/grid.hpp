#ifndef BKBK_GRID_HPP
#define BKBK_GRID_HPP

#include <vector>

namespace bkbk {

// Uniform periodic 1D grid with signed FFT wavenumbers.
// k[j] = 2*pi*j_signed/L; the Nyquist mode (j = n/2) carries -pi*n/L.
struct Grid1D {
  double length = 0.0;
  int n = 0;
  double dx = 0.0;
  std::vector<double> k;       // size n, signed layout matching FFT ordering
  std::vector<double> x;       // sample positions, x[j] = j*dx

  static Grid1D make(double length, int n);
  int nhalf() const { return n / 2 + 1; }   // modes stored in a real-field spectrum
};

// Uniform periodic 2D grid. Fields are row-major: sample (ix,iy) at iy*nx+ix.
struct Grid2D {
  double lx = 0.0, ly = 0.0;
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  std::vector<double> kx;      // size nx, signed
  std::vector<double> ky;      // size ny, signed
  std::vector<double> k2;      // |k|^2 on the stored half spectrum, ny*(nx/2+1)
  std::vector<double> x, y;    // sample positions

  static Grid2D make(double lx, double ly, int nx, int ny);
  int nxh() const { return nx / 2 + 1; }
  std::size_t nsamples() const { return std::size_t(nx) * ny; }
  std::size_t nmodes() const { return std::size_t(nxh()) * ny; }
};

}  // namespace bkbk

#endif
