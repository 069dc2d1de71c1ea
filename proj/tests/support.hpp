#pragma once

#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "liemoment/algebra.hpp"
#include "liemoment/exact_linalg.hpp"
#include "liemoment/moment_poly.hpp"
#include "liemoment/multi_index.hpp"

namespace testsupport {

using liemoment::CoeffPoly;
using liemoment::GaussianRational;
using liemoment::LieAlgebraSpec;
using liemoment::MomentPoly;
using liemoment::MultiIndex;
using liemoment::Rational;
using liemoment::RationalMatrix;

using Rng = std::mt19937_64;

inline Rational small_rational(Rng& rng, int lo = -4, int hi = 4, int den_max = 3) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();  // mpq comparison assumes reduced form
  return q;
}

inline GaussianRational small_gaussian(Rng& rng) {
  GaussianRational g(small_rational(rng));
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
    g = g + GaussianRational::i() * GaussianRational(small_rational(rng, -2, 2, 2));
  return g;
}

// Gauss-Jordan inverse; throws on singular input
inline RationalMatrix rational_inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix work = a;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("singular matrix");
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = work[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || work[row][col] == 0) continue;
      const Rational f = work[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        work[row][j] -= f * work[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// substitutes x_k -> sum_c A[k][c] y_c into a real hbar-free polynomial
inline CoeffPoly substitute_linear(const CoeffPoly& p, const RationalMatrix& a) {
  const std::size_t m = p.nvars();
  std::vector<CoeffPoly> linear;
  for (std::size_t k = 0; k < m; ++k) {
    CoeffPoly l(m);
    for (std::size_t c = 0; c < m; ++c)
      l += GaussianRational(a[k][c]) * CoeffPoly::variable(m, c);
    linear.push_back(l);
  }
  CoeffPoly out(m);
  for (const auto& [key, coeff] : p.terms()) {
    CoeffPoly term = CoeffPoly::monomial(m, key.hbar, MultiIndex(m), coeff);
    for (std::size_t k = 0; k < m; ++k)
      for (unsigned e = 0; e < key.x[k]; ++e) term *= linear[k];
    out += term;
  }
  return out;
}

// the algebra seen through the invertible change of basis y_a = sum_i S[a][i] x_i
inline LieAlgebraSpec basis_changed_algebra(const LieAlgebraSpec& spec,
                                            const RationalMatrix& s) {
  const std::size_t m = spec.dimension();
  RationalMatrix sinv = rational_inverse(s);
  std::vector<Rational> beta(m * m * m, Rational(0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c) {
        Rational v(0);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
              v += s[a][i] * s[b][j] * spec.alpha(i, j, k) * sinv[k][c];
        beta[(a * m + b) * m + c] = v;
      }
  std::vector<std::string> names;
  for (std::size_t a = 0; a < m; ++a) names.push_back("y" + std::to_string(a + 1));
  return LieAlgebraSpec(std::move(names), std::move(beta),
                        substitute_linear(spec.casimir(), sinv), spec.casimir_level());
}

inline RationalMatrix random_invertible(Rng& rng, std::size_t m) {
  for (;;) {
    RationalMatrix s(m, std::vector<Rational>(m));
    for (auto& row : s)
      for (auto& v : row) v = small_rational(rng, -3, 3, 2);
    if (liemoment::exact_rank(s) == static_cast<int>(m)) return s;
  }
}

// plain (untagged) random moment polynomial with every term of semiclassical
// order at most max_order
inline MomentPoly random_moment_poly(Rng& rng, std::size_t nvars, int max_order,
                                     int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(nvars) - 1);
  MomentPoly p(nvars);
  const int count = nterms(rng);
  for (int t = 0; t < count; ++t) {
    MomentPoly::Key key;
    key.hbar = static_cast<unsigned>(std::uniform_int_distribution<int>(0, 1)(rng));
    int budget = max_order - 2 * static_cast<int>(key.hbar);
    const int factors = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int f = 0; f < factors; ++f) {
      std::uniform_int_distribution<int> degree_dist(2, 3);
      const int deg = degree_dist(rng);
      if (budget < deg) break;
      MultiIndex eps_idx(nvars);
      for (int d = 0; d < deg; ++d) eps_idx[static_cast<std::size_t>(pick(rng))] += 1;
      key.eps[eps_idx] += 1;
      budget -= deg;
    }
    MultiIndex xexp(nvars);
    const int xdeg = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int d = 0; d < xdeg; ++d) xexp[static_cast<std::size_t>(pick(rng))] += 1;
    key.x = xexp;
    GaussianRational c = small_gaussian(rng);
    if (!c.is_zero()) p.add_term(key, c);
  }
  return p;
}

// numerator N_m of d^m(1/C)/dx_k^m = N_m / C^(m+1), by product-rule recursion
inline CoeffPoly inv_c_numerator(const CoeffPoly& c, std::size_t k, unsigned m) {
  CoeffPoly num = CoeffPoly::constant(c.nvars(), GaussianRational(1));
  for (unsigned step = 0; step < m; ++step) {
    num = num.derivative(k) * c -
          GaussianRational(Rational(static_cast<long>(step) + 1)) * (num * c.derivative(k));
  }
  return num;
}

// rational point on the unit sphere via stereographic projection from the pole
inline std::vector<Rational> sphere_point(const Rational& u, const Rational& v) {
  Rational d = 1 + u * u + v * v;
  return {2 * u / d, 2 * v / d, (1 - u * u - v * v) / d};
}

inline LieAlgebraSpec cubic_abelian_spec() {
  CoeffPoly p(1);
  p.add_term(0, MultiIndex({3}), GaussianRational(1));
  p.add_term(0, MultiIndex({2}), GaussianRational(-1));
  p.add_term(0, MultiIndex({1}), GaussianRational(1));
  return liemoment::abelian_algebra(1, p, Rational(1));
}

inline LieAlgebraSpec abelian2_spec() {
  CoeffPoly p(2);
  p.add_term(0, MultiIndex({2, 0}), GaussianRational(1));
  p.add_term(0, MultiIndex({0, 2}), GaussianRational(1));
  return liemoment::abelian_algebra(2, p, Rational(1));
}

// su(2) extended by a central generator x4, with the sphere Casimir padded by
// the central square
inline LieAlgebraSpec su2_plus_center_spec() {
  liemoment::StructureConstants sc(4);
  sc.set_antisymmetric(0, 1, 2, Rational(1));
  sc.set_antisymmetric(1, 2, 0, Rational(1));
  sc.set_antisymmetric(2, 0, 1, Rational(1));
  CoeffPoly p(4);
  for (std::size_t k = 0; k < 4; ++k) {
    MultiIndex e(4);
    e[k] = 2;
    p.add_term(0, e, GaussianRational(1));
  }
  return LieAlgebraSpec({"x1", "x2", "x3", "x4"}, sc.flat(), p, Rational(1));
}

// sl(2): [h,e] = 2e, [h,f] = -2f, [e,f] = h with the quadratic Casimir
inline LieAlgebraSpec sl2_spec() {
  liemoment::StructureConstants sc(3);
  sc.set_antisymmetric(0, 1, 1, Rational(2));
  sc.set_antisymmetric(0, 2, 2, Rational(-2));
  sc.set_antisymmetric(1, 2, 0, Rational(1));
  CoeffPoly p(3);
  p.add_term(0, MultiIndex({2, 0, 0}), GaussianRational(1));
  p.add_term(0, MultiIndex({0, 1, 1}), GaussianRational(4));
  return LieAlgebraSpec({"h", "e", "f"}, sc.flat(), p, Rational(1));
}

// su(2) constants plus an extra alpha_12^1 = 1: still antisymmetric but the
// Jacobi identity fails
inline LieAlgebraSpec jacobi_violation_spec() {
  liemoment::StructureConstants sc(3);
  sc.set_antisymmetric(0, 1, 2, Rational(1));
  sc.set_antisymmetric(1, 2, 0, Rational(1));
  sc.set_antisymmetric(2, 0, 1, Rational(1));
  sc.set_antisymmetric(0, 1, 0, Rational(1));
  CoeffPoly p(3);
  p.add_term(0, MultiIndex({2, 0, 0}), GaussianRational(1));
  return LieAlgebraSpec({"x1", "x2", "x3"}, sc.flat(), p, Rational(0));
}

}  // namespace testsupport
