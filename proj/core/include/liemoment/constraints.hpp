#pragma once

#include <map>
#include <string>
#include <vector>

#include "liemoment/exact_linalg.hpp"
#include "liemoment/moment_poly.hpp"
#include "liemoment/nc_poly.hpp"

namespace liemoment {

// Truncated Casimir constraint tower: C_i = Trunc_N <e_i C-hat> for every
// multi-index with |i| <= N-1, in graded (degree, lex) order.
struct ConstraintTower {
  int order = 0;
  std::size_t nvars = 0;
  std::vector<MultiIndex> indices;
  std::vector<MomentPoly> entries;
  CoeffPoly classical_constraint;            // C(x) = P(x) - r
  std::vector<CoeffPoly> classical_gradient;  // dC/dx_k

  std::size_t size() const { return indices.size(); }
  const MomentPoly& at(const MultiIndex& idx) const;
};

// Throws std::domain_error when the Weyl-lifted Casimir is not central and
// std::invalid_argument for N < 2.
ConstraintTower generate_tower(const EnvelopingAlgebra& alg, int N);

// One tower entry on its own, usable beyond |idx| <= N-1 (entries with
// |idx| >= N truncate to zero).
MomentPoly constraint_entry(const EnvelopingAlgebra& alg, const MultiIndex& idx, int N);

// (number of moments of degree exactly N, number of constraints added when
// the truncation order is raised from N-1 to N)
struct MomentCensus {
  mpz_class moments_at_order;
  mpz_class constraints_increment;
};
MomentCensus count_nontrivial(std::size_t m, int n);

// hbar-free part of the eps-gradient: rows are constraints 1 <= |i| <= N-1,
// columns are moment directions 2 <= |j| <= N, entries exact polynomials in x.
struct SymbolicGradient {
  std::vector<MultiIndex> rows;
  std::vector<MultiIndex> cols;
  std::vector<std::vector<CoeffPoly>> entries;
};
SymbolicGradient symmetric_gradient(const ConstraintTower& tower);

struct GradientReport {
  bool exact = false;
  std::vector<Rational> point_exact;
  std::vector<double> point_double;
  double hbar = 0.0;

  std::vector<MultiIndex> row_index;
  int rank = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool deficient() const { return rank < static_cast<int>(std::min(rows, cols)); }

  std::vector<std::vector<Rational>> kernel_exact;  // left kernel over the rows
  std::vector<std::vector<double>> kernel_double;

  bool dc_zero = false;     // every dC/dx_k vanishes at the point
  bool on_surface = false;  // C vanishes at the point
  Rational c_value_exact;
  double c_value = 0.0;

  // d^{N-2}(1/C)/dx_k^{N-2} per direction k with dC/dx_k != 0 (off-surface only)
  std::map<std::size_t, Rational> invc_exact;
  std::map<std::size_t, double> invc_double;

  // full-gradient diagnostics at numeric hbar (floating path only)
  bool has_full = false;
  int eps_rank_full = -1;  // eps columns including hbar-reordering terms
  int full_rank = -1;      // additionally with x-direction columns (needs eps values)
};

// exact path (rational expectation values; hbar plays no role in the
// symmetric part)
GradientReport independence_check(const ConstraintTower& tower, const std::vector<Rational>& x);

// floating path; singular values below tolerance * sigma_max count as zero
GradientReport independence_check(const ConstraintTower& tower, const PhasePoint& point,
                                  double tolerance);

// d^m (1/C) / dx_k^m at the point, via the binomial recursion
// D_m = -(1/C) sum_{n<m} binom(m,n) (d^{m-n}C/dx_k^{m-n}) D_n.
// Throws std::domain_error when C vanishes at the point.
Rational inv_c_derivative(const CoeffPoly& c, const std::vector<Rational>& x, std::size_t k,
                          unsigned m);
double inv_c_derivative(const CoeffPoly& c, const std::vector<double>& x, std::size_t k,
                        unsigned m);

// Audit of a rank-deficient off-surface point: every kernel vector's
// single-direction components gamma_(k)^m must reproduce the 1/C-derivative
// recursion and its closure sum.
struct KernelRecursionCheck {
  bool applicable = false;  // deficient and off-surface
  bool ok = true;
  std::vector<std::string> failures;
};
KernelRecursionCheck kernel_recursion_check(const ConstraintTower& tower,
                                            const std::vector<Rational>& x);

}  // namespace liemoment
