#include "bkbk/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <string>

#include "bkbk/errors.hpp"

namespace bkbk {

namespace {
// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// (ik)^order for a signed wavenumber.
cplx ik_pow(double k, int order) {
  cplx ik(0.0, k);
  cplx r(1.0, 0.0);
  for (int i = 0; i < order; ++i) r *= ik;
  return r;
}
}  // namespace

void require_finite(const RealVec& f, const char* what) {
  for (double v : f)
    if (!std::isfinite(v)) throw SpectralError(std::string("non-finite field: ") + what);
}

// ---------------------------------------------------------------- Spectral1D

struct Spectral1D::Impl {
  int n;
  double* real_buf;
  fftw_complex* cplx_buf;
  fftw_complex* c_in;
  fftw_complex* c_out;
  fftw_plan fwd, bwd, cfwd, cbwd;

  explicit Impl(int n_) : n(n_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    real_buf = fftw_alloc_real(n);
    cplx_buf = fftw_alloc_complex(n / 2 + 1);
    c_in = fftw_alloc_complex(n);
    c_out = fftw_alloc_complex(n);
    fwd = fftw_plan_dft_r2c_1d(n, real_buf, cplx_buf, FFTW_MEASURE);
    bwd = fftw_plan_dft_c2r_1d(n, cplx_buf, real_buf, FFTW_MEASURE);
    cfwd = fftw_plan_dft_1d(n, c_in, c_out, FFTW_FORWARD, FFTW_MEASURE);
    cbwd = fftw_plan_dft_1d(n, c_in, c_out, FFTW_BACKWARD, FFTW_MEASURE);
  }
  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_destroy_plan(cfwd);
    fftw_destroy_plan(cbwd);
    fftw_free(real_buf);
    fftw_free(cplx_buf);
    fftw_free(c_in);
    fftw_free(c_out);
  }
};

Spectral1D::Spectral1D(const Grid1D& grid) : grid_(grid), impl_(std::make_unique<Impl>(grid.n)) {}
Spectral1D::~Spectral1D() = default;

SpecVec Spectral1D::forward(const RealVec& f) const {
  if (int(f.size()) != grid_.n) throw SpectralError("forward: size mismatch");
  std::memcpy(impl_->real_buf, f.data(), sizeof(double) * grid_.n);
  fftw_execute(impl_->fwd);
  const int nh = grid_.nhalf();
  SpecVec fh(nh);
  const double scale = 1.0 / grid_.n;
  for (int j = 0; j < nh; ++j)
    fh[j] = cplx(impl_->cplx_buf[j][0], impl_->cplx_buf[j][1]) * scale;
  return fh;
}

RealVec Spectral1D::inverse(const SpecVec& fh) const {
  if (int(fh.size()) != grid_.nhalf()) throw SpectralError("inverse: size mismatch");
  for (int j = 0; j < grid_.nhalf(); ++j) {
    impl_->cplx_buf[j][0] = fh[j].real();
    impl_->cplx_buf[j][1] = fh[j].imag();
  }
  fftw_execute(impl_->bwd);
  return RealVec(impl_->real_buf, impl_->real_buf + grid_.n);
}

void Spectral1D::derivative_hat(SpecVec& fh, int order) const {
  if (order < 1 || order > 4) throw SpectralError("derivative: order must be in 1..4");
  const int nh = grid_.nhalf();
  for (int j = 0; j < nh; ++j) fh[j] *= ik_pow(grid_.k[j], order);
  if (order % 2 == 1) fh[nh - 1] = 0.0;  // Nyquist, keeps odd derivatives real
}

RealVec Spectral1D::derivative(const RealVec& f, int order) const {
  require_finite(f, "spectral_derivative input");
  SpecVec fh = forward(f);
  derivative_hat(fh, order);
  return inverse(fh);
}

void Spectral1D::dealias(SpecVec& fh) const {
  const int cutoff = grid_.n / 3;
  for (int j = cutoff + 1; j < grid_.nhalf(); ++j) fh[j] = 0.0;
}

SpecVec Spectral1D::forward_dealiased(const RealVec& f) const {
  SpecVec fh = forward(f);
  dealias(fh);
  return fh;
}

std::vector<cplx> Spectral1D::forward_c(const std::vector<cplx>& f) const {
  if (int(f.size()) != grid_.n) throw SpectralError("forward_c: size mismatch");
  std::memcpy(impl_->c_in, f.data(), sizeof(cplx) * grid_.n);
  fftw_execute(impl_->cfwd);
  std::vector<cplx> fh(grid_.n);
  const double scale = 1.0 / grid_.n;
  for (int j = 0; j < grid_.n; ++j)
    fh[j] = cplx(impl_->c_out[j][0], impl_->c_out[j][1]) * scale;
  return fh;
}

std::vector<cplx> Spectral1D::inverse_c(const std::vector<cplx>& fh) const {
  if (int(fh.size()) != grid_.n) throw SpectralError("inverse_c: size mismatch");
  std::memcpy(impl_->c_in, fh.data(), sizeof(cplx) * grid_.n);
  fftw_execute(impl_->cbwd);
  return std::vector<cplx>(reinterpret_cast<cplx*>(impl_->c_out),
                           reinterpret_cast<cplx*>(impl_->c_out) + grid_.n);
}

std::vector<cplx> Spectral1D::derivative_c(const std::vector<cplx>& f, int order) const {
  std::vector<cplx> fh = forward_c(f);
  for (int j = 0; j < grid_.n; ++j) fh[j] *= ik_pow(grid_.k[j], order);
  return inverse_c(fh);
}

// ---------------------------------------------------------------- Spectral2D

struct Spectral2D::Impl {
  int nx, ny;
  double* real_buf;
  fftw_complex* cplx_buf;
  fftw_plan fwd, bwd;

  Impl(int nx_, int ny_) : nx(nx_), ny(ny_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    real_buf = fftw_alloc_real(std::size_t(nx) * ny);
    cplx_buf = fftw_alloc_complex(std::size_t(nx / 2 + 1) * ny);
    // FFTW wants the slowest-varying dimension first: rows are y.
    fwd = fftw_plan_dft_r2c_2d(ny, nx, real_buf, cplx_buf, FFTW_MEASURE);
    bwd = fftw_plan_dft_c2r_2d(ny, nx, cplx_buf, real_buf, FFTW_MEASURE);
  }
  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real_buf);
    fftw_free(cplx_buf);
  }
};

Spectral2D::Spectral2D(const Grid2D& grid)
    : grid_(grid), impl_(std::make_unique<Impl>(grid.nx, grid.ny)) {}
Spectral2D::~Spectral2D() = default;

SpecVec Spectral2D::forward(const RealVec& f) const {
  if (f.size() != grid_.nsamples()) throw SpectralError("forward: size mismatch");
  std::memcpy(impl_->real_buf, f.data(), sizeof(double) * grid_.nsamples());
  fftw_execute(impl_->fwd);
  const std::size_t nm = grid_.nmodes();
  SpecVec fh(nm);
  const double scale = 1.0 / double(grid_.nsamples());
  for (std::size_t j = 0; j < nm; ++j)
    fh[j] = cplx(impl_->cplx_buf[j][0], impl_->cplx_buf[j][1]) * scale;
  return fh;
}

RealVec Spectral2D::inverse(const SpecVec& fh) const {
  if (fh.size() != grid_.nmodes()) throw SpectralError("inverse: size mismatch");
  for (std::size_t j = 0; j < grid_.nmodes(); ++j) {
    impl_->cplx_buf[j][0] = fh[j].real();
    impl_->cplx_buf[j][1] = fh[j].imag();
  }
  fftw_execute(impl_->bwd);
  return RealVec(impl_->real_buf, impl_->real_buf + grid_.nsamples());
}

void Spectral2D::derivative_hat(SpecVec& fh, int axis, int order) const {
  if (order < 1 || order > 4) throw SpectralError("derivative: order must be in 1..4");
  if (axis != 0 && axis != 1) throw SpectralError("derivative: axis must be 0 or 1");
  const int nxh = grid_.nxh();
  const bool odd = order % 2 == 1;
  for (int iy = 0; iy < grid_.ny; ++iy) {
    const double ky = grid_.ky[iy];
    for (int ix = 0; ix < nxh; ++ix) {
      const double k = axis == 0 ? grid_.kx[ix] : ky;
      cplx m = ik_pow(k, order);
      if (odd && ((axis == 0 && ix == nxh - 1) || (axis == 1 && iy == grid_.ny / 2)))
        m = 0.0;
      fh[std::size_t(iy) * nxh + ix] *= m;
    }
  }
}

RealVec Spectral2D::derivative(const RealVec& f, int axis, int order) const {
  require_finite(f, "spectral_derivative input");
  SpecVec fh = forward(f);
  derivative_hat(fh, axis, order);
  return inverse(fh);
}

void Spectral2D::dealias(SpecVec& fh) const {
  const int cx = grid_.nx / 3;
  const int cy = grid_.ny / 3;
  const int nxh = grid_.nxh();
  for (int iy = 0; iy < grid_.ny; ++iy) {
    const int jy = iy <= grid_.ny / 2 ? iy : grid_.ny - iy;
    for (int ix = 0; ix < nxh; ++ix) {
      if (ix > cx || jy > cy) fh[std::size_t(iy) * nxh + ix] = 0.0;
    }
  }
}

SpecVec Spectral2D::forward_dealiased(const RealVec& f) const {
  SpecVec fh = forward(f);
  dealias(fh);
  return fh;
}

// -------------------------------------------------------------- mode solves

std::vector<std::array<cplx, 2>> mode_solve_1d(const std::vector<Mat2c>& a,
                                               const std::vector<std::array<cplx, 2>>& rhs) {
  if (a.size() != rhs.size()) throw SpectralError("mode_solve_1d: size mismatch");
  std::vector<std::array<cplx, 2>> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Mat2c& m = a[j];
    const cplx det = m.a11 * m.a22 - m.a12 * m.a21;
    // Exact 2x2 condition number from the singular values:
    // s1^2 + s2^2 = ||A||_F^2, s1*s2 = |det|.
    const double fro2 = std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) + std::norm(m.a22);
    const double d = std::abs(det);
    double cond = std::numeric_limits<double>::infinity();
    if (d > 0.0) {
      const double h = fro2 / 2.0;
      const double r = std::sqrt(std::max(h * h - d * d, 0.0));
      cond = (h + r) / std::max(h - r, d * d / (h + r));  // s1^2 / s2^2
      cond = std::sqrt(cond);
    }
    if (!(cond <= 1e12))
      throw SpectralError("mode_solve_1d: ill-conditioned mode matrix at wavenumber index " +
                          std::to_string(j));
    out[j][0] = (m.a22 * rhs[j][0] - m.a12 * rhs[j][1]) / det;
    out[j][1] = (m.a11 * rhs[j][1] - m.a21 * rhs[j][0]) / det;
  }
  return out;
}

}  // namespace bkbk
