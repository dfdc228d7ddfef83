#ifndef BKBK_TIMESTEP_HPP
#define BKBK_TIMESTEP_HPP

#include <functional>
#include <vector>

#include "bkbk/model1d.hpp"
#include "bkbk/model2d.hpp"
#include "bkbk/spectral.hpp"

namespace bkbk {

struct Schedule {
  double dt = 1e-3;
  double t_end = 1.0;
};

// A semilinear system in modal (half-spectrum) coordinates. The Fourier modes
// decouple in the linearisation about the rest state, so the implicit part of
// an IMEX step reduces to one small dense solve per mode.
class ModalSystem {
 public:
  virtual ~ModalSystem() = default;

  virtual int ncomp() const = 0;
  virtual std::size_t nmodes() const = 0;

  // Full (nonlinear) tendency, modal in, modal out.
  virtual void rhs(const std::vector<SpecVec>& s, std::vector<SpecVec>& out) const = 0;

  // Row-major ncomp x ncomp linearisation of the tendency about the rest
  // state at the given mode. Must match the exact linearisation of rhs(),
  // including the Nyquist treatment of odd derivatives.
  virtual void linear_op(std::size_t mode, cplx* l) const = 0;
};

// Called after every accepted step, and once with step = 0 for the initial
// state, with the current modal state.
using StepSink = std::function<void(int step, double t, const std::vector<SpecVec>& s)>;

// Semi-implicit BDF2 (implicit linear part, explicit extrapolated remainder),
// bootstrapped with one IMEX-Euler step. DepthUnderflow thrown by the system
// is rethrown with the failing step and time attached.
void sbdf2_run(const ModalSystem& sys, std::vector<SpecVec>& s, double t0,
               const Schedule& sched, const StepSink& sink = nullptr);

// Fully explicit classical RK4 on the same modal tendency.
void rk4_run(const ModalSystem& sys, std::vector<SpecVec>& s, double t0,
             const Schedule& sched, const StepSink& sink = nullptr);

// Max over modes of ||rhs(s) - L s|| / ||s|| for a state s_eps = rest + eps *
// perturbation; used to verify that linear_op matches the rhs linearisation.
double split_defect(const ModalSystem& sys, const std::vector<SpecVec>& s);

// ---- concrete systems ------------------------------------------------------

class Bkbk1dSystem : public ModalSystem {
 public:
  Bkbk1dSystem(const Spectral1D& sp, const Params1D& p) : sp_(sp), p_(p) {}

  int ncomp() const override { return 2; }
  std::size_t nmodes() const override { return sp_.grid().nhalf(); }
  void rhs(const std::vector<SpecVec>& s, std::vector<SpecVec>& out) const override;
  void linear_op(std::size_t mode, cplx* l) const override;

  std::vector<SpecVec> to_modal(const State1D& s) const;
  State1D to_state(const std::vector<SpecVec>& s) const;

 private:
  const Spectral1D& sp_;
  Params1D p_;
};

class Bkbk1dVformSystem : public ModalSystem {
 public:
  Bkbk1dVformSystem(const Spectral1D& sp, double kappa_sq, const Params1D& p)
      : sp_(sp), ks_(kappa_sq), p_(p) {}

  int ncomp() const override { return 2; }
  std::size_t nmodes() const override { return sp_.grid().nhalf(); }
  void rhs(const std::vector<SpecVec>& s, std::vector<SpecVec>& out) const override;
  void linear_op(std::size_t mode, cplx* l) const override;

  std::vector<SpecVec> to_modal(const VState1D& s) const;
  VState1D to_state(const std::vector<SpecVec>& s) const;

 private:
  const Spectral1D& sp_;
  double ks_;
  Params1D p_;
};

class Bkbk2dSystem : public ModalSystem {
 public:
  Bkbk2dSystem(const Spectral2D& sp, const Params2D& p) : sp_(sp), p_(p) {}

  int ncomp() const override { return 3; }
  std::size_t nmodes() const override { return sp_.grid().nmodes(); }
  void rhs(const std::vector<SpecVec>& s, std::vector<SpecVec>& out) const override;
  void linear_op(std::size_t mode, cplx* l) const override;

  std::vector<SpecVec> to_modal(const State2D& s) const;
  State2D to_state(const std::vector<SpecVec>& s) const;

 private:
  const Spectral2D& sp_;
  Params2D p_;
};

}  // namespace bkbk

#endif
