#include "bkbk/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bkbk {

namespace {
// Signed wavenumber ladder for n points on length L. The Nyquist mode is
// assigned the negative frequency -pi*n/L.
std::vector<double> signed_wavenumbers(double length, int n) {
  const double dk = 2.0 * std::numbers::pi / length;
  std::vector<double> k(n);
  for (int j = 0; j < n; ++j) {
    int js = (j <= n / 2 - 1) ? j : j - n;
    if (j == n / 2) js = -n / 2;
    k[j] = dk * js;
  }
  return k;
}
}  // namespace

Grid1D Grid1D::make(double length, int n) {
  if (length <= 0.0) throw std::invalid_argument("Grid1D: length must be positive");
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("Grid1D: n must be even and >= 8");
  Grid1D g;
  g.length = length;
  g.n = n;
  g.dx = length / n;
  g.k = signed_wavenumbers(length, n);
  g.x.resize(n);
  for (int j = 0; j < n; ++j) g.x[j] = g.dx * j;
  return g;
}

Grid2D Grid2D::make(double lx, double ly, int nx, int ny) {
  if (lx <= 0.0 || ly <= 0.0) throw std::invalid_argument("Grid2D: lengths must be positive");
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
    throw std::invalid_argument("Grid2D: nx, ny must be even and >= 8");
  Grid2D g;
  g.lx = lx; g.ly = ly; g.nx = nx; g.ny = ny;
  g.dx = lx / nx; g.dy = ly / ny;
  g.kx = signed_wavenumbers(lx, nx);
  g.ky = signed_wavenumbers(ly, ny);
  g.x.resize(nx); g.y.resize(ny);
  for (int j = 0; j < nx; ++j) g.x[j] = g.dx * j;
  for (int j = 0; j < ny; ++j) g.y[j] = g.dy * j;
  const int nxh = g.nxh();
  g.k2.assign(std::size_t(nxh) * ny, 0.0);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nxh; ++ix)
      g.k2[std::size_t(iy) * nxh + ix] = g.kx[ix] * g.kx[ix] + g.ky[iy] * g.ky[iy];
  return g;
}

}  // namespace bkbk
