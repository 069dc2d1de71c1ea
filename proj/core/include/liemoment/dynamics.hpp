#pragma once

#include <string>
#include <vector>

#include "liemoment/constraints.hpp"
#include "liemoment/qpoisson.hpp"

namespace liemoment {

struct SystemVariable {
  bool is_eps = false;
  std::size_t x_index = 0;
  MultiIndex eps_index;
  std::string name() const;
};

// Order-N effective equations of motion: one right-hand side per truncated
// phase-space variable, all equal to the truncated bracket with H_Q.
struct EffectiveSystem {
  int order = 0;
  std::size_t nvars = 0;
  std::vector<SystemVariable> vars;
  std::vector<MomentPoly> rhs;
  MomentPoly hamiltonian;  // H_Q = Trunc_N <H-hat>
};

// order >= 1; order 1 carries no moment variables and yields the classical
// flow of the classical Hamiltonian
EffectiveSystem build_system(const BracketTable& table, const NCPoly& hamiltonian, int order);

struct Trajectory {
  std::vector<std::string> names;  // matches the variable order of the system
  std::vector<double> t;
  std::vector<std::vector<double>> values;  // [step][variable]
  double dt = 0.0;
  double hbar = 0.0;
  bool diverged = false;
  double last_valid_time = 0.0;
  // largest imaginary part encountered in any RHS evaluation; values far
  // above rounding noise indicate a Hamiltonian that is not Hermitian
  double max_imag_residual = 0.0;
};

// fixed-step fourth-order Runge-Kutta; a non-finite state aborts the run and
// keeps the last valid time
Trajectory integrate(const EffectiveSystem& sys, const PhasePoint& initial, double dt,
                     double t_end);

PhasePoint state_to_point(const EffectiveSystem& sys, const std::vector<double>& state,
                          double hbar);

struct ConservationReport {
  std::vector<std::string> names;              // one per tower entry
  std::vector<std::vector<double>> residuals;  // [step][entry], real parts
  std::vector<double> max_drift;               // per entry, |value(t) - value(0)|
  std::vector<double> h_values;
  double hamiltonian_drift = 0.0;
};

// evaluates the constraint tower (optional) and H_Q along a trajectory
ConservationReport conserve_check(const EffectiveSystem& sys, const ConstraintTower* tower,
                                  const Trajectory& traj);

}  // namespace liemoment
