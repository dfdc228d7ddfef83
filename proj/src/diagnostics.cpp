#include "bkbk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace bkbk {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DiagRow1D record_1d(const Spectral1D& sp, const State1D& s, const Params1D& p, double t,
                    double crest_threshold) {
  const Grid1D& g = sp.grid();
  DiagRow1D r;
  r.t = t;
  double mass = 0.0, mom = 0.0;
  double min_eta = s.eta[0], max_speed = 0.0;
  for (int i = 0; i < g.n; ++i) {
    mass += s.eta[i];
    mom += s.eta[i] * s.u[i];
    min_eta = std::min(min_eta, s.eta[i]);
    max_speed = std::max(max_speed, std::abs(s.u[i]));
  }
  r.mass = mass * g.dx;
  r.momentum_x = mom * g.dx;
  r.hamiltonian = hamiltonian_1d(sp, s, p);
  r.min_eta = min_eta;
  r.max_speed = max_speed;
  r.crest_count = int(track_crests(g, s.eta, crest_threshold).size());
  return r;
}

DiagRow2D record_2d(const Spectral2D& sp, const State2D& s, const Params2D& p, double t,
                    double crest_threshold) {
  const Grid2D& g = sp.grid();
  DiagRow2D r;
  r.t = t;
  double mass = 0.0, momx = 0.0, momy = 0.0;
  double min_eta = s.eta[0], max_speed = 0.0;
  for (std::size_t i = 0; i < g.nsamples(); ++i) {
    mass += s.eta[i];
    momx += s.eta[i] * s.ux[i];
    momy += s.eta[i] * s.uy[i];
    min_eta = std::min(min_eta, s.eta[i]);
    max_speed = std::max(max_speed, std::hypot(s.ux[i], s.uy[i]));
  }
  const double da = g.dx * g.dy;
  r.mass = mass * da;
  r.momentum_x = momx * da;
  r.momentum_y = momy * da;
  r.hamiltonian = hamiltonian_2d(sp, s, p);
  r.min_eta = min_eta;
  r.max_speed = max_speed;
  r.casimir_q = casimir_2d(sp, s, casimir_q(), p.eta_floor);
  r.casimir_q2 = casimir_2d(sp, s, casimir_q2(), p.eta_floor);
  RealVec q = potential_vorticity(sp, s, p.eta_floor);
  double mq = 0.0;
  for (double v : q) mq = std::max(mq, std::abs(v));
  r.max_abs_q = mq;
  r.crest_count = count_crests_2d(g, s.eta, crest_threshold);
  return r;
}

std::string csv_header_1d() {
  return "t,mass,momentum_x,hamiltonian,min_eta,max_speed,crest_count";
}

std::string csv_header_2d() {
  return "t,mass,momentum_x,momentum_y,hamiltonian,min_eta,max_speed,"
         "casimir_q,casimir_q2,max_abs_q,crest_count";
}

std::string csv_line(const DiagRow1D& r) {
  return fmt17(r.t) + "," + fmt17(r.mass) + "," + fmt17(r.momentum_x) + "," +
         fmt17(r.hamiltonian) + "," + fmt17(r.min_eta) + "," + fmt17(r.max_speed) + "," +
         std::to_string(r.crest_count);
}

std::string csv_line(const DiagRow2D& r) {
  return fmt17(r.t) + "," + fmt17(r.mass) + "," + fmt17(r.momentum_x) + "," +
         fmt17(r.momentum_y) + "," + fmt17(r.hamiltonian) + "," + fmt17(r.min_eta) + "," +
         fmt17(r.max_speed) + "," + fmt17(r.casimir_q) + "," + fmt17(r.casimir_q2) + "," +
         fmt17(r.max_abs_q) + "," + std::to_string(r.crest_count);
}

std::vector<double> track_crests(const Grid1D& g, const RealVec& eta, double threshold) {
  std::vector<double> out;
  for (int i = 0; i < g.n; ++i) {
    const double l = eta[(i + g.n - 1) % g.n];
    const double c = eta[i];
    const double r = eta[(i + 1) % g.n];
    if (c <= threshold) continue;
    // Strict max to the left, nonstrict to the right, so a two-sample plateau
    // counts once.
    if (c > l && c >= r && !(c == r && c == l)) {
      // Vertex of the parabola through the three points.
      const double denom = l - 2.0 * c + r;
      double shift = 0.0;
      if (denom != 0.0) shift = std::clamp(0.5 * (l - r) / denom, -0.5, 0.5);
      double x = g.x[i] + shift * g.dx;
      if (x < 0.0) x += g.length;
      if (x >= g.length) x -= g.length;
      out.push_back(x);
    }
  }
  return out;
}

int count_crests_2d(const Grid2D& g, const RealVec& eta, double threshold) {
  int count = 0;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const double c = eta[std::size_t(iy) * g.nx + ix];
      if (c <= threshold) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int jx = (ix + dx + g.nx) % g.nx;
          const int jy = (iy + dy + g.ny) % g.ny;
          if (eta[std::size_t(jy) * g.nx + jx] >= c) {
            is_max = false;
            break;
          }
        }
      if (is_max) ++count;
    }
  }
  return count;
}

ModeFit fit_mode(const std::vector<double>& t, const std::vector<cplx>& a) {
  const std::size_t n = t.size();
  if (n < 3 || a.size() != n)
    throw std::invalid_argument("fit_mode: need at least 3 matching samples");
  std::vector<double> lr(n), li(n);
  double prev_phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a[i]) < 1e-14)
      throw std::invalid_argument("fit_mode: sample magnitude below 1e-14");
    lr[i] = std::log(std::abs(a[i]));
    double ph = std::arg(a[i]);
    if (i > 0) {  // unwrap onto the branch nearest the previous sample
      while (ph - prev_phase > std::numbers::pi) ph -= 2.0 * std::numbers::pi;
      while (ph - prev_phase < -std::numbers::pi) ph += 2.0 * std::numbers::pi;
    }
    li[i] = ph;
    prev_phase = ph;
  }

  // Ordinary least squares for log a = log a0 + lambda t, real and imaginary
  // parts independently.
  double st = 0.0, stt = 0.0;
  for (double v : t) { st += v; stt += v * v; }
  const double det = n * stt - st * st;
  if (det <= 0.0) throw std::invalid_argument("fit_mode: degenerate sample times");
  auto line = [&](const std::vector<double>& y) {
    double sy = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < n; ++i) { sy += y[i]; sty += t[i] * y[i]; }
    const double slope = (n * sty - st * sy) / det;
    const double icpt = (sy - slope * st) / n;
    return std::pair<double, double>{slope, icpt};
  };
  auto [sr, ir] = line(lr);
  auto [si, ii] = line(li);

  ModeFit f;
  f.lambda = cplx(sr, si);
  f.log_a0 = cplx(ir, ii);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double er = lr[i] - (ir + sr * t[i]);
    const double ei = li[i] - (ii + si * t[i]);
    rss += er * er + ei * ei;
  }
  f.residual = std::sqrt(rss / n);
  return f;
}

}  // namespace bkbk
