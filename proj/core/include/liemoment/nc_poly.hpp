#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "liemoment/algebra.hpp"
#include "liemoment/coeff_poly.hpp"
#include "liemoment/moment_poly.hpp"

namespace liemoment {

// Generator flavor of a word: plain generators or generators centered on
// their expectation values (Delta x_i = x_i-hat minus x_i * 1).
enum class GenKind : std::uint8_t { X, DX };

using Word = std::vector<std::uint8_t>;

// Element of the (extended) universal enveloping algebra: a finite sum of
// words in one generator flavor with commutative CoeffPoly coefficients.
class NCPoly {
 public:
  NCPoly() : kind_(GenKind::X), nvars_(0) {}
  NCPoly(GenKind kind, std::size_t nvars) : kind_(kind), nvars_(nvars) {}

  GenKind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Word, CoeffPoly>& terms() const { return terms_; }

  // word degree of the longest stored word; -1 for zero
  int degree() const;
  bool in_normal_form() const { return normal_; }

  void add_term(const Word& w, const CoeffPoly& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator-() const;
  NCPoly& operator*=(const GaussianRational& c);
  NCPoly& operator*=(const CoeffPoly& c);  // scalars commute with every word

  NCPoly divide_by_i_hbar() const;

  std::string str(const std::vector<std::string>* names = nullptr) const;
  bool operator==(const NCPoly& o) const;

 private:
  friend class EnvelopingAlgebra;
  GenKind kind_;
  std::size_t nvars_;
  bool normal_ = false;  // true once every word is sorted via the rewriting path
  std::map<Word, CoeffPoly> terms_;
  void check_compatible(const NCPoly& o) const;
};

NCPoly operator+(NCPoly a, const NCPoly& b);
NCPoly operator-(NCPoly a, const NCPoly& b);

// d/dx_i: acts on coefficients, and in the centered flavor each letter
// Delta x_i differentiates to -1.
NCPoly partial_derivative(const NCPoly& p, std::size_t i);

// Operation context for a fixed algebra.  Holds the memoized rewriting and
// Weyl change-of-basis tables; those caches are the only shared mutable
// state and are guarded for concurrent use.
class EnvelopingAlgebra {
 public:
  explicit EnvelopingAlgebra(LieAlgebraSpec spec, unsigned max_degree = 16);

  const LieAlgebraSpec& spec() const { return spec_; }
  std::size_t dimension() const { return spec_.dimension(); }
  unsigned max_degree() const { return max_degree_; }

  NCPoly zero(GenKind kind) const { return NCPoly(kind, dimension()); }
  NCPoly one(GenKind kind) const;
  NCPoly generator(GenKind kind, std::size_t i) const;
  NCPoly constant(GenKind kind, CoeffPoly c) const;

  NCPoly multiply(const NCPoly& a, const NCPoly& b) const;
  NCPoly normal_form(const NCPoly& p) const;
  // normal_form(ab - ba); always divisible by hbar, which is verified
  NCPoly commutator(const NCPoly& a, const NCPoly& b) const;
  bool is_central(const NCPoly& p) const;

  // Weyl-symmetrized product with multiplicity idx, in the requested flavor
  NCPoly weyl_symmetrize(const MultiIndex& idx, GenKind kind) const;
  // normal form of the centered Weyl basis element e_idx (cached)
  const NCPoly& weyl_normal_form(const MultiIndex& idx) const;

  // centered polynomial written over the Weyl basis: p = sum_k coeff_k e_k
  std::map<MultiIndex, CoeffPoly> weyl_basis_decompose(const NCPoly& p) const;
  NCPoly weyl_basis_recompose(const std::map<MultiIndex, CoeffPoly>& parts) const;

  NCPoly to_centered(const NCPoly& p) const;  // X -> DX
  NCPoly to_plain(const NCPoly& p) const;     // DX -> X

  // semiclassical order: min over monomials of word length + 2 * hbar power
  int ext_order(const NCPoly& p) const;

  // Weyl lift of the classical Casimir polynomial minus r * 1
  NCPoly casimir_element() const;

  // expectation-value map onto moment polynomials (kills degree-1 moments)
  MomentPoly expectation(const NCPoly& p) const;

  // <e_i * e_k> with memoization; the workhorse of constraint generation
  const MomentPoly& weyl_product_expectation(const MultiIndex& i, const MultiIndex& k) const;

 private:
  LieAlgebraSpec spec_;
  unsigned max_degree_;

  const NCPoly& word_normal_form(const Word& w, GenKind kind) const;
  void check_degree(std::size_t d) const;

  mutable std::mutex mutex_;
  mutable std::map<Word, NCPoly> word_nf_[2];
  mutable std::map<MultiIndex, NCPoly> weyl_nf_;
  mutable std::map<std::pair<MultiIndex, MultiIndex>, MomentPoly> weyl_prod_exp_;
};

NCPoly casimir_element(const EnvelopingAlgebra& alg);

// Weyl lift of a classical polynomial: each x-monomial becomes the
// symmetrized generator product, hbar powers stay scalar
NCPoly weyl_lift(const EnvelopingAlgebra& alg, const CoeffPoly& p);

}  // namespace liemoment
