#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "liemoment/algebra.hpp"
#include "liemoment/moment_poly.hpp"
#include "liemoment/nc_poly.hpp"

namespace liemoment {

// Exact finite-dimensional matrix realization of the generators, used as an
// independent numerical back end for moments, commutators and evolution.
struct MatrixRep {
  std::vector<Eigen::MatrixXcd> gens;
  double hbar = 1.0;
  std::string label;

  std::size_t dim() const { return gens.empty() ? 0 : static_cast<std::size_t>(gens[0].rows()); }
  std::size_t num_gens() const { return gens.size(); }
};

// spin-j matrices scaled by hbar; 2j must be a non-negative integer
MatrixRep su2_rep(double j, double hbar);

// commuting diagonal generators (abelian algebras); eigenvalues[i] lists the
// spectrum of generator i
MatrixRep diagonal_rep(const std::vector<std::vector<double>>& eigenvalues, double hbar);

// max over pairs of ||[X_i,X_j] - i hbar sum_k alpha_ij^k X_k||_F
double commutator_residual(const MatrixRep& rep, const LieAlgebraSpec& spec);

// |j, j> in the m-descending basis
Eigen::VectorXcd highest_weight_state(std::size_t dim);

// spin coherent state pointing along the unit direction n (su(2) reps only):
// the rotated highest-weight state
Eigen::VectorXcd coherent_state(const MatrixRep& rep, const std::vector<double>& n);

// centered Weyl moment <psi| sym prod (X_k - <X_k>)^{i_k} |psi>; degree <= 8
std::complex<double> exact_moment(const MatrixRep& rep, const Eigen::VectorXcd& psi,
                                  const MultiIndex& idx);

// matrix image of a noncommutative polynomial; coefficients are evaluated at
// the classical values xbar (empty requires x-free coefficients).  Centered
// words use X_i - xbar_i * I.
Eigen::MatrixXcd matrix_realization(const MatrixRep& rep, const NCPoly& p,
                                    const std::vector<double>& xbar = {});

// expectation values and centered moments of psi up to the given degree
PhasePoint extract_phase_point(const MatrixRep& rep, const Eigen::VectorXcd& psi,
                               unsigned max_degree);

struct OracleTrajectory {
  std::vector<double> t;
  // x[i][step] = <X_i>(t_step)
  std::vector<std::vector<double>> x;
};

// spectral-decomposition propagation; h must be Hermitian within 1e-12
OracleTrajectory schrodinger_evolve(const MatrixRep& rep, const Eigen::MatrixXcd& h,
                                    const Eigen::VectorXcd& psi0, double dt, double t_end);

}  // namespace liemoment
