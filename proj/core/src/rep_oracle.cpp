#include "liemoment/rep_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace liemoment {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double state_norm2(const Eigen::VectorXcd& psi) {
  double n = psi.squaredNorm();
  if (n <= 0.0) throw std::invalid_argument("state vector is zero");
  return n;
}

std::complex<double> sandwich(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& a) {
  return (psi.adjoint() * a * psi)(0) / state_norm2(psi);
}

// exp(-i theta A) for Hermitian A, by spectral decomposition
Eigen::MatrixXcd hermitian_rotation(const Eigen::MatrixXcd& a, double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(-kI * theta * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

MatrixRep su2_rep(double j, double hbar) {
  const long twoj = std::lround(2.0 * j);
  if (twoj < 0 || std::abs(2.0 * j - static_cast<double>(twoj)) > 1e-9)
    throw std::invalid_argument("spin must be a non-negative half-integer");
  const Eigen::Index d = static_cast<Eigen::Index>(twoj) + 1;

  Eigen::MatrixXcd jplus = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double m = j - static_cast<double>(i);
    jz(i, i) = m;
    if (i > 0) jplus(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  Eigen::MatrixXcd jminus = jplus.adjoint();

  MatrixRep rep;
  rep.hbar = hbar;
  rep.label = "su2-spin";
  rep.gens.push_back(hbar * 0.5 * (jplus + jminus));
  rep.gens.push_back(hbar * (jplus - jminus) / (2.0 * kI));
  rep.gens.push_back(hbar * jz);
  return rep;
}

MatrixRep diagonal_rep(const std::vector<std::vector<double>>& eigenvalues, double hbar) {
  if (eigenvalues.empty()) throw std::invalid_argument("need at least one generator");
  const std::size_t d = eigenvalues[0].size();
  if (d == 0) throw std::invalid_argument("need at least one eigenvalue");
  MatrixRep rep;
  rep.hbar = hbar;
  rep.label = "abelian-diagonal";
  for (const auto& spectrum : eigenvalues) {
    if (spectrum.size() != d) throw std::invalid_argument("generator spectra differ in length");
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = spectrum[i];
    rep.gens.push_back(std::move(g));
  }
  return rep;
}

double commutator_residual(const MatrixRep& rep, const LieAlgebraSpec& spec) {
  if (rep.num_gens() != spec.dimension())
    throw std::invalid_argument("representation size does not match the algebra");
  const std::size_t m = rep.num_gens();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Eigen::MatrixXcd r = rep.gens[i] * rep.gens[j] - rep.gens[j] * rep.gens[i];
      for (std::size_t k = 0; k < m; ++k) {
        const double a = spec.alpha(i, j, k).get_d();
        if (a != 0.0) r -= kI * rep.hbar * a * rep.gens[k];
      }
      worst = std::max(worst, r.norm());
    }
  return worst;
}

Eigen::VectorXcd highest_weight_state(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("empty representation");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  psi(0) = 1.0;
  return psi;
}

Eigen::VectorXcd coherent_state(const MatrixRep& rep, const std::vector<double>& n) {
  if (rep.num_gens() != 3) throw std::invalid_argument("coherent states need the three spin generators");
  if (n.size() != 3) throw std::invalid_argument("direction must have three components");
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (len <= 0.0) throw std::invalid_argument("direction must be nonzero");
  const double nx = n[0] / len, ny = n[1] / len, nz = n[2] / len;

  Eigen::VectorXcd top = highest_weight_state(rep.dim());
  const double theta = std::acos(std::clamp(nz, -1.0, 1.0));
  if (theta < 1e-14) return top;

  // rotation axis z cross n; at the south pole any equatorial axis works
  double ax = -ny, ay = nx;
  double alen = std::sqrt(ax * ax + ay * ay);
  if (alen < 1e-14) {
    ax = 0.0;
    ay = 1.0;
    alen = 1.0;
  }
  ax /= alen;
  ay /= alen;
  Eigen::MatrixXcd axis_j = (ax * rep.gens[0] + ay * rep.gens[1]) / rep.hbar;
  return hermitian_rotation(axis_j, theta) * top;
}

std::complex<double> exact_moment(const MatrixRep& rep, const Eigen::VectorXcd& psi,
                                  const MultiIndex& idx) {
  if (idx.size() != rep.num_gens())
    throw std::invalid_argument("moment index size does not match the representation");
  const unsigned deg = idx.degree();
  if (deg > 8) throw std::invalid_argument("moment degree cap is 8");
  if (deg == 0) return 1.0;

  const double norm2 = state_norm2(psi);
  std::vector<Eigen::MatrixXcd> centered;
  centered.reserve(rep.num_gens());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(
      static_cast<Eigen::Index>(rep.dim()), static_cast<Eigen::Index>(rep.dim()));
  for (std::size_t k = 0; k < rep.num_gens(); ++k)
    centered.push_back(rep.gens[k] - sandwich(psi, rep.gens[k]) * id);

  std::vector<std::size_t> letters;
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (unsigned e = 0; e < idx[k]; ++e) letters.push_back(k);

  const double weight =
      idx.factorial().get_d() / factorial(deg).get_d();  // per distinct permutation
  std::complex<double> sum = 0.0;
  do {
    Eigen::VectorXcd v = psi;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) v = centered[*it] * v;
    sum += (psi.adjoint() * v)(0);
  } while (std::next_permutation(letters.begin(), letters.end()));
  return weight * sum / norm2;
}

Eigen::MatrixXcd matrix_realization(const MatrixRep& rep, const NCPoly& p,
                                    const std::vector<double>& xbar) {
  if (p.nvars() != rep.num_gens())
    throw std::invalid_argument("polynomial does not match the representation");
  const Eigen::Index d = static_cast<Eigen::Index>(rep.dim());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

  const bool centered = p.kind() == GenKind::DX;
  if (xbar.empty()) {
    if (centered && p.degree() > 0)
      throw std::invalid_argument("centered words need classical values xbar");
    for (const auto& [w, c] : p.terms())
      for (const auto& [k, v] : c.terms())
        if (k.x.degree() > 0)
          throw std::invalid_argument("x-dependent coefficients need classical values xbar");
  } else if (xbar.size() != rep.num_gens()) {
    throw std::invalid_argument("xbar size does not match the representation");
  }

  const std::vector<double> evalx = xbar.empty() ? std::vector<double>(rep.num_gens(), 0.0) : xbar;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [w, c] : p.terms()) {
    Eigen::MatrixXcd prod = id;
    for (std::uint8_t letter : w) {
      Eigen::MatrixXcd g = rep.gens[letter];
      if (centered) g -= evalx[letter] * id;
      prod = prod * g;
    }
    out += c.eval(evalx, rep.hbar) * prod;
  }
  return out;
}

PhasePoint extract_phase_point(const MatrixRep& rep, const Eigen::VectorXcd& psi,
                               unsigned max_degree) {
  PhasePoint p;
  p.hbar = rep.hbar;
  for (std::size_t k = 0; k < rep.num_gens(); ++k)
    p.x.push_back(sandwich(psi, rep.gens[k]).real());
  for (unsigned d = 2; d <= max_degree; ++d)
    for (const MultiIndex& idx : indices_of_degree(rep.num_gens(), d))
      p.eps[idx] = exact_moment(rep, psi, idx).real();
  return p;
}

OracleTrajectory schrodinger_evolve(const MatrixRep& rep, const Eigen::MatrixXcd& h,
                                    const Eigen::VectorXcd& psi0, double dt, double t_end) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  const double scale = std::max(1.0, h.norm());
  if ((h - h.adjoint()).norm() > 1e-12 * scale)
    throw std::domain_error("Hamiltonian matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd coef = v.adjoint() * psi0;

  OracleTrajectory traj;
  traj.x.assign(rep.num_gens(), {});
  const auto steps = static_cast<std::size_t>(std::floor(t_end / dt + 0.5));
  for (std::size_t s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) * dt;
    Eigen::VectorXcd phased(coef.size());
    for (Eigen::Index i = 0; i < coef.size(); ++i)
      phased(i) = std::exp(-kI * es.eigenvalues()(i) * t / rep.hbar) * coef(i);
    Eigen::VectorXcd psi = v * phased;
    traj.t.push_back(t);
    for (std::size_t k = 0; k < rep.num_gens(); ++k)
      traj.x[k].push_back(sandwich(psi, rep.gens[k]).real());
  }
  return traj;
}

}  // namespace liemoment
