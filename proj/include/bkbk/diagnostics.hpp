#ifndef BKBK_DIAGNOSTICS_HPP
#define BKBK_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "bkbk/model1d.hpp"
#include "bkbk/model2d.hpp"
#include "bkbk/spectral.hpp"

namespace bkbk {

// One row of the 1D diagnostics table. The CSV column order is fixed:
// t,mass,momentum_x,hamiltonian,min_eta,max_speed,crest_count
struct DiagRow1D {
  double t = 0.0;
  double mass = 0.0;
  double momentum_x = 0.0;
  double hamiltonian = 0.0;
  double min_eta = 0.0;
  double max_speed = 0.0;
  int crest_count = 0;
};

// 2D row; column order:
// t,mass,momentum_x,momentum_y,hamiltonian,min_eta,max_speed,
// casimir_q,casimir_q2,max_abs_q,crest_count
struct DiagRow2D {
  double t = 0.0;
  double mass = 0.0;
  double momentum_x = 0.0;
  double momentum_y = 0.0;
  double hamiltonian = 0.0;
  double min_eta = 0.0;
  double max_speed = 0.0;
  double casimir_q = 0.0;
  double casimir_q2 = 0.0;
  double max_abs_q = 0.0;
  int crest_count = 0;
};

DiagRow1D record_1d(const Spectral1D& sp, const State1D& s, const Params1D& p, double t,
                    double crest_threshold);
DiagRow2D record_2d(const Spectral2D& sp, const State2D& s, const Params2D& p, double t,
                    double crest_threshold);

std::string csv_header_1d();
std::string csv_header_2d();
std::string csv_line(const DiagRow1D& r);   // 17 significant digits
std::string csv_line(const DiagRow2D& r);

// Positions of local maxima of eta exceeding the threshold, refined by the
// quadratic through each maximum and its periodic neighbours.
std::vector<double> track_crests(const Grid1D& grid, const RealVec& eta, double threshold);

// Count of strict local maxima over the 8 periodic neighbours above threshold.
int count_crests_2d(const Grid2D& grid, const RealVec& eta, double threshold);

// Least-squares fit of a single complex exponential a(t) = a0*exp(lambda*t)
// through samples of one Fourier mode, via a line fit to the unwrapped
// complex logarithm. residual is the rms misfit of log a. Throws
// std::invalid_argument when fewer than 3 samples are given or any
// |a_i| < 1e-14 (the log is then meaningless).
struct ModeFit {
  cplx lambda;      // growth rate Re, -frequency Im
  cplx log_a0;
  double residual = 0.0;
};
ModeFit fit_mode(const std::vector<double>& t, const std::vector<cplx>& a);

}  // namespace bkbk

#endif
