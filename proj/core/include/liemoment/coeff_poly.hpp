#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "liemoment/multi_index.hpp"
#include "liemoment/rational.hpp"

namespace liemoment {

// Commutative polynomial in the classical variables x_1..x_M and hbar, with
// Gaussian-rational coefficients.  Serves both as the coefficient ring of the
// noncommutative algebra and (restricted to real, hbar-free elements) as the
// home of classical polynomials like the Casimir constraint.
class CoeffPoly {
 public:
  struct Key {
    unsigned hbar = 0;
    MultiIndex x;
    auto operator<=>(const Key&) const = default;
  };

  CoeffPoly() : nvars_(0) {}
  explicit CoeffPoly(std::size_t nvars) : nvars_(nvars) {}

  static CoeffPoly constant(std::size_t nvars, GaussianRational c);
  static CoeffPoly variable(std::size_t nvars, std::size_t i);
  static CoeffPoly hbar(std::size_t nvars, unsigned power = 1);
  static CoeffPoly monomial(std::size_t nvars, unsigned hbar_pow, MultiIndex xexp,
                            GaussianRational c);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  bool is_hbar_free() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Key, GaussianRational>& terms() const { return terms_; }

  // total degree in x (ignoring hbar); -1 for the zero polynomial
  int x_degree() const;

  GaussianRational coefficient(unsigned hbar_pow, const MultiIndex& xexp) const;

  CoeffPoly& operator+=(const CoeffPoly& o);
  CoeffPoly& operator-=(const CoeffPoly& o);
  CoeffPoly operator-() const;
  CoeffPoly& operator*=(const CoeffPoly& o);
  CoeffPoly& operator*=(const GaussianRational& c);

  void add_term(unsigned hbar_pow, const MultiIndex& xexp, const GaussianRational& c);

  CoeffPoly derivative(std::size_t i) const;  // d/dx_i
  // exact division by (i*hbar); throws std::domain_error unless every term carries hbar
  CoeffPoly divide_by_i_hbar() const;

  std::complex<double> eval(const std::vector<double>& x, double hbar_value) const;
  // exact evaluation; requires is_real() && is_hbar_free()
  Rational eval_rational(const std::vector<Rational>& x) const;

  std::string str(const std::vector<std::string>* names = nullptr) const;

  bool operator==(const CoeffPoly& o) const;

 private:
  std::size_t nvars_;
  std::map<Key, GaussianRational> terms_;  // zero coefficients never stored
  void check_compatible(const CoeffPoly& o) const;
};

CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b);
CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b);
CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b);
CoeffPoly operator*(const GaussianRational& c, CoeffPoly p);

}  // namespace liemoment
