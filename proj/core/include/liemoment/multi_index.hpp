#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "liemoment/rational.hpp"

namespace liemoment {

// Exponent tuple (i_1, ..., i_M) over a fixed variable set.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t size) : exp_(size, 0) {}
  MultiIndex(std::initializer_list<unsigned> e) : exp_(e) {}

  static MultiIndex unit(std::size_t size, std::size_t i);

  std::size_t size() const { return exp_.size(); }
  unsigned operator[](std::size_t i) const { return exp_[i]; }
  unsigned& operator[](std::size_t i) { return exp_[i]; }

  unsigned degree() const;
  bool is_zero() const { return degree() == 0; }

  // componentwise other <= this
  bool dominates(const MultiIndex& other) const;

  MultiIndex plus(const MultiIndex& o) const;
  MultiIndex minus(const MultiIndex& o) const;  // requires dominates(o)

  mpz_class factorial() const;  // product of componentwise factorials

  std::string str() const;  // "(2,0,1)"

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<unsigned> exp_;
};

// (degree, lexicographic) order used everywhere rows/columns/variables are listed
bool graded_less(const MultiIndex& a, const MultiIndex& b);

std::vector<MultiIndex> indices_of_degree(std::size_t nvars, unsigned degree);
std::vector<MultiIndex> indices_up_to_degree(std::size_t nvars, unsigned degree);

mpz_class binomial(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

}  // namespace liemoment
