#include "liemoment/algebra.hpp"

#include <set>
#include <stdexcept>

namespace liemoment {

LieAlgebraSpec::LieAlgebraSpec(std::vector<std::string> generator_names,
                               std::vector<Rational> structure_constants, CoeffPoly casimir_poly,
                               Rational casimir_level)
    : names_(std::move(generator_names)),
      alpha_(std::move(structure_constants)),
      casimir_(std::move(casimir_poly)),
      level_(std::move(casimir_level)) {
  std::size_t m = names_.size();
  if (m == 0) throw std::invalid_argument("algebra needs at least one generator");
  if (alpha_.size() != m * m * m)
    throw std::invalid_argument("structure constant array must have M^3 entries");
  if (casimir_.nvars() != m)
    throw std::invalid_argument("casimir polynomial over wrong number of variables");
  if (!casimir_.is_real() || !casimir_.is_hbar_free())
    throw std::invalid_argument("casimir polynomial must be real and hbar-free");
}

const Rational& LieAlgebraSpec::alpha(std::size_t i, std::size_t j, std::size_t k) const {
  std::size_t m = dimension();
  return alpha_[(i * m + j) * m + k];
}

CoeffPoly LieAlgebraSpec::constraint_poly() const {
  return casimir_ - CoeffPoly::constant(dimension(), GaussianRational(level_));
}

ValidationReport LieAlgebraSpec::validate() const {
  ValidationReport rep;
  std::size_t m = dimension();

  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) rep.name_problems.push_back("empty generator name");
    // these characters collide with the point/grid assignment grammar
    if (n.find_first_of(" \t,=:()") != std::string::npos)
      rep.name_problems.push_back("generator name contains separator characters: " + n);
    if (!seen.insert(n).second) rep.name_problems.push_back("duplicate generator name: " + n);
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        Rational s = alpha(i, j, k) + alpha(j, i, k);
        if (s != 0) rep.antisymmetry.push_back({i, j, k, s});
      }

  // coefficient of x_l in [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          Rational s = 0;
          for (std::size_t n = 0; n < m; ++n)
            s += alpha(i, j, n) * alpha(n, k, l) + alpha(j, k, n) * alpha(n, i, l) +
                 alpha(k, i, n) * alpha(n, j, l);
          if (s != 0) rep.jacobi.push_back({i, j, k, l, s});
        }

  return rep;
}

void StructureConstants::set_antisymmetric(std::size_t i, std::size_t j, std::size_t k,
                                           Rational v) {
  a_[(i * m_ + j) * m_ + k] = v;
  a_[(j * m_ + i) * m_ + k] = -v;
}

void StructureConstants::set_raw(std::size_t i, std::size_t j, std::size_t k, Rational v) {
  a_[(i * m_ + j) * m_ + k] = std::move(v);
}

LieAlgebraSpec su2_algebra(Rational r) {
  StructureConstants a(3);
  a.set_antisymmetric(0, 1, 2, 1);
  a.set_antisymmetric(1, 2, 0, 1);
  a.set_antisymmetric(2, 0, 1, 1);
  CoeffPoly p(3);
  for (std::size_t i = 0; i < 3; ++i) {
    MultiIndex e(3);
    e[i] = 2;
    p.add_term(0, e, GaussianRational(1));
  }
  return LieAlgebraSpec({"x1", "x2", "x3"}, a.flat(), p, std::move(r));
}

LieAlgebraSpec abelian_algebra(std::size_t m, CoeffPoly casimir_poly, Rational r) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
  return LieAlgebraSpec(std::move(names), std::vector<Rational>(m * m * m, Rational(0)),
                        std::move(casimir_poly), std::move(r));
}

}  // namespace liemoment
