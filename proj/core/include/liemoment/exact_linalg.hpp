#pragma once

#include <Eigen/Dense>
#include <vector>

#include "liemoment/rational.hpp"

namespace liemoment {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix transpose(const RationalMatrix& m);

// exact rank via fraction-free (Bareiss) elimination
int exact_rank(const RationalMatrix& m);

// basis of { v : m v = 0 }, each vector scaled so its first nonzero entry is 1
std::vector<std::vector<Rational>> right_null_space(const RationalMatrix& m);

// basis of { v : v^T m = 0 } with the same normalization
std::vector<std::vector<Rational>> left_null_space(const RationalMatrix& m);

// floating rank: singular values below tol * sigma_max are treated as zero
int floating_rank(const Eigen::MatrixXcd& m, double tol);
int floating_rank(const Eigen::MatrixXd& m, double tol);

// orthonormal basis of the numerical left null space of a real matrix
std::vector<std::vector<double>> floating_left_null_space(const Eigen::MatrixXd& m, double tol);

}  // namespace liemoment
