#include "bkbk/timestep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bkbk/errors.hpp"

namespace bkbk {

namespace {

using Modal = std::vector<SpecVec>;

long step_count(double t0, const Schedule& sched) {
  if (!(sched.dt > 0.0)) throw std::invalid_argument("schedule: dt must be positive");
  const long n = std::lround((sched.t_end - t0) / sched.dt);
  if (n < 1) throw std::invalid_argument("schedule: t_end must lie at least one step past t0");
  return n;
}

// Row-major nc x nc complex inverse by Gauss-Jordan with partial pivoting.
void invert_small(std::vector<cplx>& m, int nc, std::size_t mode) {
  std::vector<cplx> inv(std::size_t(nc) * nc, cplx(0.0));
  for (int i = 0; i < nc; ++i) inv[std::size_t(i) * nc + i] = 1.0;
  for (int col = 0; col < nc; ++col) {
    int piv = col;
    for (int r = col + 1; r < nc; ++r)
      if (std::abs(m[std::size_t(r) * nc + col]) > std::abs(m[std::size_t(piv) * nc + col]))
        piv = r;
    if (std::abs(m[std::size_t(piv) * nc + col]) < 1e-300)
      throw SpectralError("singular implicit matrix at mode " + std::to_string(mode));
    if (piv != col)
      for (int c = 0; c < nc; ++c) {
        std::swap(m[std::size_t(piv) * nc + c], m[std::size_t(col) * nc + c]);
        std::swap(inv[std::size_t(piv) * nc + c], inv[std::size_t(col) * nc + c]);
      }
    const cplx d = m[std::size_t(col) * nc + col];
    for (int c = 0; c < nc; ++c) {
      m[std::size_t(col) * nc + c] /= d;
      inv[std::size_t(col) * nc + c] /= d;
    }
    for (int r = 0; r < nc; ++r) {
      if (r == col) continue;
      const cplx f = m[std::size_t(r) * nc + col];
      if (f == cplx(0.0)) continue;
      for (int c = 0; c < nc; ++c) {
        m[std::size_t(r) * nc + c] -= f * m[std::size_t(col) * nc + c];
        inv[std::size_t(r) * nc + c] -= f * inv[std::size_t(col) * nc + c];
      }
    }
  }
  m = std::move(inv);
}

// Per-mode nc x nc matrices, stored contiguously.
struct ModeMats {
  std::vector<cplx> a;  // nmodes * nc * nc
  int nc = 0;
  std::size_t nmodes = 0;

  const cplx* at(std::size_t mode) const { return a.data() + mode * nc * nc; }
  cplx* at(std::size_t mode) { return a.data() + mode * nc * nc; }
};

ModeMats gather_linear(const ModalSystem& sys) {
  ModeMats l;
  l.nc = sys.ncomp();
  l.nmodes = sys.nmodes();
  l.a.resize(l.nmodes * l.nc * l.nc);
  for (std::size_t j = 0; j < l.nmodes; ++j) sys.linear_op(j, l.at(j));
  return l;
}

// (sigma*I - L)^-1 for every mode.
ModeMats shifted_inverse(const ModeMats& l, double sigma) {
  ModeMats m = l;
  std::vector<cplx> block(std::size_t(m.nc) * m.nc);
  for (std::size_t j = 0; j < m.nmodes; ++j) {
    cplx* b = m.at(j);
    for (int r = 0; r < m.nc; ++r)
      for (int c = 0; c < m.nc; ++c) {
        const std::size_t idx = std::size_t(r) * m.nc + c;
        block[idx] = (r == c ? cplx(sigma) : cplx(0.0)) - b[idx];
      }
    invert_small(block, m.nc, j);
    for (std::size_t idx = 0; idx < block.size(); ++idx) b[idx] = block[idx];
  }
  return m;
}

void apply_mats(const ModeMats& m, const Modal& s, Modal& out) {
  const int nc = m.nc;
  for (std::size_t j = 0; j < m.nmodes; ++j) {
    const cplx* b = m.at(j);
    for (int r = 0; r < nc; ++r) {
      cplx acc(0.0);
      for (int c = 0; c < nc; ++c) acc += b[std::size_t(r) * nc + c] * s[c][j];
      out[r][j] = acc;
    }
  }
}

Modal make_modal(int nc, std::size_t nmodes) {
  return Modal(nc, SpecVec(nmodes, cplx(0.0)));
}

void check_shape(const ModalSystem& sys, const Modal& s) {
  if (int(s.size()) != sys.ncomp())
    throw std::invalid_argument("modal state: wrong component count");
  for (const SpecVec& c : s)
    if (c.size() != sys.nmodes())
      throw std::invalid_argument("modal state: wrong mode count");
}

void rhs_with_context(const ModalSystem& sys, const Modal& s, Modal& out, int step, double t) {
  try {
    sys.rhs(s, out);
  } catch (const DepthUnderflow& e) {
    throw DepthUnderflow(e.min_eta, e.index, step, t);
  }
}

}  // namespace

void sbdf2_run(const ModalSystem& sys, Modal& s, double t0, const Schedule& sched,
               const StepSink& sink) {
  check_shape(sys, s);
  const long nsteps = step_count(t0, sched);
  const int nc = sys.ncomp();
  const std::size_t nm = sys.nmodes();
  const double dt = sched.dt;

  const ModeMats l = gather_linear(sys);
  const ModeMats euler_inv = shifted_inverse(l, 1.0 / dt);
  const ModeMats bdf2_inv = shifted_inverse(l, 1.5 / dt);

  Modal f = make_modal(nc, nm), ls = make_modal(nc, nm);
  Modal n_cur = make_modal(nc, nm), n_prev = make_modal(nc, nm);
  Modal b = make_modal(nc, nm), s_prev = s, s_next = make_modal(nc, nm);

  if (sink) sink(0, t0, s);

  // Bootstrap: one IMEX-Euler step, (I/dt - L) s1 = s0/dt + N(s0).
  rhs_with_context(sys, s, f, 0, t0);
  apply_mats(l, s, ls);
  for (int c = 0; c < nc; ++c)
    for (std::size_t j = 0; j < nm; ++j) {
      n_prev[c][j] = f[c][j] - ls[c][j];
      b[c][j] = s[c][j] / dt + n_prev[c][j];
    }
  s_prev = s;
  apply_mats(euler_inv, b, s);
  if (sink) sink(1, t0 + dt, s);

  for (long step = 2; step <= nsteps; ++step) {
    rhs_with_context(sys, s, f, int(step - 1), t0 + (step - 1) * dt);
    apply_mats(l, s, ls);
    for (int c = 0; c < nc; ++c)
      for (std::size_t j = 0; j < nm; ++j) {
        n_cur[c][j] = f[c][j] - ls[c][j];
        b[c][j] = (4.0 * s[c][j] - s_prev[c][j]) / (2.0 * dt) +
                  2.0 * n_cur[c][j] - n_prev[c][j];
      }
    apply_mats(bdf2_inv, b, s_next);
    s_prev.swap(s);
    s.swap(s_next);
    n_prev.swap(n_cur);
    if (sink) sink(int(step), t0 + step * dt, s);
  }
}

void rk4_run(const ModalSystem& sys, Modal& s, double t0, const Schedule& sched,
             const StepSink& sink) {
  check_shape(sys, s);
  const long nsteps = step_count(t0, sched);
  const int nc = sys.ncomp();
  const std::size_t nm = sys.nmodes();
  const double dt = sched.dt;

  Modal k1 = make_modal(nc, nm), k2 = k1, k3 = k1, k4 = k1, tmp = k1;

  if (sink) sink(0, t0, s);
  for (long step = 1; step <= nsteps; ++step) {
    const double t = t0 + (step - 1) * dt;
    rhs_with_context(sys, s, k1, int(step - 1), t);
    for (int c = 0; c < nc; ++c)
      for (std::size_t j = 0; j < nm; ++j) tmp[c][j] = s[c][j] + 0.5 * dt * k1[c][j];
    rhs_with_context(sys, tmp, k2, int(step - 1), t);
    for (int c = 0; c < nc; ++c)
      for (std::size_t j = 0; j < nm; ++j) tmp[c][j] = s[c][j] + 0.5 * dt * k2[c][j];
    rhs_with_context(sys, tmp, k3, int(step - 1), t);
    for (int c = 0; c < nc; ++c)
      for (std::size_t j = 0; j < nm; ++j) tmp[c][j] = s[c][j] + dt * k3[c][j];
    rhs_with_context(sys, tmp, k4, int(step - 1), t);
    for (int c = 0; c < nc; ++c)
      for (std::size_t j = 0; j < nm; ++j)
        s[c][j] += (dt / 6.0) * (k1[c][j] + 2.0 * k2[c][j] + 2.0 * k3[c][j] + k4[c][j]);
    if (sink) sink(int(step), t0 + step * dt, s);
  }
}

double split_defect(const ModalSystem& sys, const Modal& s) {
  check_shape(sys, s);
  Modal f = make_modal(sys.ncomp(), sys.nmodes());
  Modal ls = f;
  sys.rhs(s, f);
  apply_mats(gather_linear(sys), s, ls);
  double num = 0.0, den = 0.0;
  for (int c = 0; c < sys.ncomp(); ++c)
    for (std::size_t j = 0; j < sys.nmodes(); ++j) {
      num += std::norm(f[c][j] - ls[c][j]);
      den += std::norm(s[c][j]);
    }
  return std::sqrt(num) / std::sqrt(den > 0.0 ? den : 1.0);
}

// --------------------------------------------------------------- Bkbk1dSystem

void Bkbk1dSystem::rhs(const Modal& s, Modal& out) const {
  State1D st{sp_.inverse(s[0]), sp_.inverse(s[1])};
  Tendency1D t = rhs_1d(sp_, st, p_);
  out[0] = sp_.forward(t.du);
  out[1] = sp_.forward(t.deta);
}

void Bkbk1dSystem::linear_op(std::size_t mode, cplx* l) const {
  const Grid1D& g = sp_.grid();
  const double k = g.k[mode];
  const double ke = mode + 1 == std::size_t(g.nhalf()) ? 0.0 : k;  // odd-derivative factor
  const double k2 = k * k, k4 = k2 * k2;
  l[0] = p_.kappa * k2 - p_.nu * k4;
  l[1] = cplx(0.0, -p_.g * ke);
  l[2] = cplx(0.0, -p_.eta0 * ke);
  l[3] = -p_.kappa * k2 - p_.nu * k4;
}

Modal Bkbk1dSystem::to_modal(const State1D& s) const {
  return {sp_.forward(s.u), sp_.forward(s.eta)};
}

State1D Bkbk1dSystem::to_state(const Modal& s) const {
  return {sp_.inverse(s[0]), sp_.inverse(s[1])};
}

// ---------------------------------------------------------- Bkbk1dVformSystem

void Bkbk1dVformSystem::rhs(const Modal& s, Modal& out) const {
  VState1D st{sp_.inverse(s[0]), sp_.inverse(s[1])};
  Tendency1D t = rhs_1d_vform(sp_, st, ks_, p_);
  out[0] = sp_.forward(t.du);
  out[1] = sp_.forward(t.deta);
}

void Bkbk1dVformSystem::linear_op(std::size_t mode, cplx* l) const {
  const Grid1D& g = sp_.grid();
  const double k = g.k[mode];
  const double ke = mode + 1 == std::size_t(g.nhalf()) ? 0.0 : k;
  const double k2 = k * k, k4 = k2 * k2;
  l[0] = -p_.nu * k4;
  l[1] = cplx(0.0, -ke * (p_.g - ks_ * k2 / p_.eta0));
  l[2] = cplx(0.0, -p_.eta0 * ke);
  l[3] = -p_.nu * k4;
}

Modal Bkbk1dVformSystem::to_modal(const VState1D& s) const {
  return {sp_.forward(s.v), sp_.forward(s.eta)};
}

VState1D Bkbk1dVformSystem::to_state(const Modal& s) const {
  return {sp_.inverse(s[0]), sp_.inverse(s[1])};
}

// --------------------------------------------------------------- Bkbk2dSystem

void Bkbk2dSystem::rhs(const Modal& s, Modal& out) const {
  const SpecVec sh[3] = {s[0], s[1], s[2]};
  SpecVec oh[3];
  rhs_2d_modal(sp_, sh, p_, oh);
  out[0] = std::move(oh[0]);
  out[1] = std::move(oh[1]);
  out[2] = std::move(oh[2]);
}

void Bkbk2dSystem::linear_op(std::size_t mode, cplx* l) const {
  const Grid2D& g = sp_.grid();
  const int nxh = g.nxh();
  const int ix = int(mode % nxh);
  const int iy = int(mode / nxh);
  const double kx = g.kx[ix], ky = g.ky[iy];
  const double kxe = ix == nxh - 1 ? 0.0 : kx;       // odd-derivative factors drop
  const double kye = iy == g.ny / 2 ? 0.0 : ky;      // the Nyquist lines
  const double k2 = g.k2[mode];
  const double gm = p_.g * (1.0 + p_.alpha * p_.alpha * k2);  // even operator, full k

  // d/dt ux = kappa*kxe*(ke.u) - i*kxe*gm*eta
  l[0] = p_.kappa * kxe * kxe;
  l[1] = p_.kappa * kxe * kye;
  l[2] = cplx(0.0, -kxe * gm);
  // d/dt uy
  l[3] = p_.kappa * kye * kxe;
  l[4] = p_.kappa * kye * kye;
  l[5] = cplx(0.0, -kye * gm);
  // d/dt eta = -i*eta0*(ke.u) - kappa*(ke.ke)*eta
  l[6] = cplx(0.0, -p_.eta0 * kxe);
  l[7] = cplx(0.0, -p_.eta0 * kye);
  l[8] = -p_.kappa * (kxe * kxe + kye * kye);
}

Modal Bkbk2dSystem::to_modal(const State2D& s) const {
  return {sp_.forward(s.ux), sp_.forward(s.uy), sp_.forward(s.eta)};
}

State2D Bkbk2dSystem::to_state(const Modal& s) const {
  return {sp_.inverse(s[0]), sp_.inverse(s[1]), sp_.inverse(s[2])};
}

}  // namespace bkbk
