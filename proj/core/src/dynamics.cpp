#include "liemoment/dynamics.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

namespace liemoment {

namespace {

struct CompiledTerm {
  std::complex<double> coeff;
  unsigned hbar_pow = 0;
  std::vector<std::pair<std::size_t, unsigned>> factors;  // (state slot, exponent)
};

struct CompiledPoly {
  std::vector<CompiledTerm> terms;

  std::complex<double> eval(const std::vector<double>& state, double hbar) const {
    std::complex<double> sum = 0.0;
    for (const CompiledTerm& t : terms) {
      std::complex<double> v = t.coeff;
      for (unsigned e = 0; e < t.hbar_pow; ++e) v *= hbar;
      for (const auto& [slot, exp] : t.factors)
        for (unsigned e = 0; e < exp; ++e) v *= state[slot];
      sum += v;
    }
    return sum;
  }
};

CompiledPoly compile(const MomentPoly& p, const std::map<MultiIndex, std::size_t>& eps_slot,
                     std::size_t nx) {
  CompiledPoly out;
  for (const auto& [k, c] : p.terms()) {
    CompiledTerm t;
    t.coeff = c.to_complex();
    t.hbar_pow = k.hbar;
    for (std::size_t i = 0; i < nx; ++i)
      if (k.x[i] > 0) t.factors.emplace_back(i, k.x[i]);
    for (const auto& [idx, pow] : k.eps) {
      auto it = eps_slot.find(idx);
      if (it == eps_slot.end())
        throw std::logic_error("right-hand side references moment " + idx.str() +
                               " outside the system variables");
      t.factors.emplace_back(it->second, pow);
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::string SystemVariable::name() const {
  return is_eps ? "eps" + eps_index.str() : "x" + std::to_string(x_index + 1);
}

EffectiveSystem build_system(const BracketTable& table, const NCPoly& hamiltonian, int order) {
  if (order < 1) throw std::invalid_argument("truncation order must be at least 1");
  const EnvelopingAlgebra& alg = table.algebra();
  const std::size_t m = alg.dimension();

  MomentPoly hq_full = alg.expectation(hamiltonian);
  MomentPoly hq = hq_full.truncate(order);

  EffectiveSystem sys;
  sys.order = order;
  sys.nvars = m;
  sys.hamiltonian = hq;
  for (std::size_t i = 0; i < m; ++i) sys.vars.push_back({false, i, {}});
  for (const MultiIndex& idx : indices_up_to_degree(m, static_cast<unsigned>(order)))
    if (idx.degree() >= 2) sys.vars.push_back({true, 0, idx});

  for (const SystemVariable& v : sys.vars) {
    MomentPoly vp = v.is_eps ? MomentPoly::eps(m, v.eps_index) : MomentPoly::x(m, v.x_index);
    MomentPoly r = table.truncated_bracket(vp, hq, order);
    // truncating H_Q before bracketing must not change the truncated flow
    if (!(r == table.truncated_bracket(vp, hq_full, order)))
      throw std::logic_error("truncation consistency violated for " + v.name());
    sys.rhs.push_back(std::move(r));
  }
  return sys;
}

PhasePoint state_to_point(const EffectiveSystem& sys, const std::vector<double>& state,
                          double hbar) {
  if (state.size() != sys.vars.size())
    throw std::invalid_argument("state vector does not match the system variables");
  PhasePoint p;
  p.hbar = hbar;
  p.x.assign(sys.nvars, 0.0);
  for (std::size_t i = 0; i < sys.vars.size(); ++i) {
    if (sys.vars[i].is_eps)
      p.eps[sys.vars[i].eps_index] = state[i];
    else
      p.x[sys.vars[i].x_index] = state[i];
  }
  return p;
}

Trajectory integrate(const EffectiveSystem& sys, const PhasePoint& initial, double dt,
                     double t_end) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("t_end must be non-negative");
  if (initial.x.size() != sys.nvars)
    throw std::invalid_argument("initial point has wrong dimension");

  std::map<MultiIndex, std::size_t> eps_slot;
  for (std::size_t i = 0; i < sys.vars.size(); ++i)
    if (sys.vars[i].is_eps) eps_slot[sys.vars[i].eps_index] = i;

  std::vector<double> state;
  state.reserve(sys.vars.size());
  for (const SystemVariable& v : sys.vars) {
    if (v.is_eps) {
      auto it = initial.eps.find(v.eps_index);
      if (it == initial.eps.end())
        throw std::out_of_range("initial point missing moment eps" + v.eps_index.str());
      state.push_back(it->second);
    } else {
      state.push_back(initial.x[v.x_index]);
    }
  }

  std::vector<CompiledPoly> rhs;
  rhs.reserve(sys.rhs.size());
  for (const MomentPoly& p : sys.rhs) rhs.push_back(compile(p, eps_slot, sys.nvars));

  Trajectory traj;
  traj.dt = dt;
  traj.hbar = initial.hbar;
  for (const SystemVariable& v : sys.vars) traj.names.push_back(v.name());

  const double hbar = initial.hbar;
  double max_imag = 0.0;
  auto deriv = [&](const std::vector<double>& s, std::vector<double>& out) {
    out.resize(s.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      std::complex<double> v = rhs[i].eval(s, hbar);
      max_imag = std::max(max_imag, std::abs(v.imag()));
      out[i] = v.real();
    }
  };

  const auto steps = static_cast<std::size_t>(std::floor(t_end / dt + 0.5));
  traj.t.push_back(0.0);
  traj.values.push_back(state);

  std::vector<double> k1, k2, k3, k4, tmp(state.size());
  for (std::size_t s = 0; s < steps; ++s) {
    deriv(state, k1);
    for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
    deriv(tmp, k2);
    for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
    deriv(tmp, k3);
    for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + dt * k3[i];
    deriv(tmp, k4);
    for (std::size_t i = 0; i < state.size(); ++i)
      state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    bool finite = true;
    for (double v : state)
      if (!std::isfinite(v)) finite = false;
    if (!finite) {
      traj.diverged = true;
      break;
    }
    traj.t.push_back(static_cast<double>(s + 1) * dt);
    traj.values.push_back(state);
  }
  traj.last_valid_time = traj.t.back();
  traj.max_imag_residual = max_imag;
  return traj;
}

ConservationReport conserve_check(const EffectiveSystem& sys, const ConstraintTower* tower,
                                  const Trajectory& traj) {
  ConservationReport rep;
  if (tower) {
    for (const MultiIndex& idx : tower->indices) rep.names.push_back("C" + idx.str());
    rep.max_drift.assign(tower->size(), 0.0);
  }

  std::vector<std::complex<double>> first_c;
  std::complex<double> first_h = 0.0;
  for (std::size_t s = 0; s < traj.values.size(); ++s) {
    PhasePoint p = state_to_point(sys, traj.values[s], traj.hbar);
    std::complex<double> h = sys.hamiltonian.evaluate(p);
    if (s == 0) first_h = h;
    rep.h_values.push_back(h.real());
    rep.hamiltonian_drift = std::max(rep.hamiltonian_drift, std::abs(h - first_h));

    if (tower) {
      std::vector<double> row;
      row.reserve(tower->size());
      for (std::size_t e = 0; e < tower->size(); ++e) {
        std::complex<double> v = tower->entries[e].evaluate(p);
        if (s == 0) first_c.push_back(v);
        rep.max_drift[e] = std::max(rep.max_drift[e], std::abs(v - first_c[e]));
        row.push_back(v.real());
      }
      rep.residuals.push_back(std::move(row));
    }
  }
  return rep;
}

}  // namespace liemoment
