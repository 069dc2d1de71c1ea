#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "liemoment/coeff_poly.hpp"
#include "liemoment/rational.hpp"

namespace liemoment {

struct AntisymmetryViolation {
  std::size_t i, j, k;
  Rational value;  // alpha_ij^k + alpha_ji^k
};

struct JacobiViolation {
  std::size_t i, j, k, l;
  Rational residual;  // cyclic sum coefficient of x_l
};

struct ValidationReport {
  std::vector<AntisymmetryViolation> antisymmetry;
  std::vector<JacobiViolation> jacobi;
  std::vector<std::string> name_problems;
  bool ok() const { return antisymmetry.empty() && jacobi.empty() && name_problems.empty(); }
};

// Finite-dimensional Lie algebra given by exact structure constants
// [x_i, x_j] = i*hbar * sum_k alpha_ij^k x_k, together with the classical
// polynomial P whose Weyl lift is the candidate Casimir and the constraint
// level r (the constraint itself is C = P - r).
class LieAlgebraSpec {
 public:
  LieAlgebraSpec(std::vector<std::string> generator_names,
                 std::vector<Rational> structure_constants,  // flattened M*M*M, [i][j][k]
                 CoeffPoly casimir_poly, Rational casimir_level);

  std::size_t dimension() const { return names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const Rational& alpha(std::size_t i, std::size_t j, std::size_t k) const;
  const std::vector<Rational>& structure_constants() const { return alpha_; }

  const CoeffPoly& casimir() const { return casimir_; }            // P, real and hbar-free
  const Rational& casimir_level() const { return level_; }         // r
  CoeffPoly constraint_poly() const;                               // C = P - r

  ValidationReport validate() const;

 private:
  std::vector<std::string> names_;
  std::vector<Rational> alpha_;
  CoeffPoly casimir_;
  Rational level_;
};

// alpha builder convenience: zero-initialized flattened array with set(i,j,k)
class StructureConstants {
 public:
  explicit StructureConstants(std::size_t m) : m_(m), a_(m * m * m, Rational(0)) {}
  // sets alpha_ij^k = v and alpha_ji^k = -v
  void set_antisymmetric(std::size_t i, std::size_t j, std::size_t k, Rational v);
  void set_raw(std::size_t i, std::size_t j, std::size_t k, Rational v);
  const std::vector<Rational>& flat() const { return a_; }

 private:
  std::size_t m_;
  std::vector<Rational> a_;
};

// su(2) with P = x1^2 + x2^2 + x3^2 and level r (the sphere of radius sqrt r)
LieAlgebraSpec su2_algebra(Rational r);
// commuting generators x1..xM with a caller-supplied classical Casimir
LieAlgebraSpec abelian_algebra(std::size_t m, CoeffPoly casimir_poly, Rational r);

}  // namespace liemoment
