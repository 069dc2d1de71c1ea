#pragma once

#include <complex>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "liemoment/coeff_poly.hpp"
#include "liemoment/multi_index.hpp"
#include "liemoment/rational.hpp"

namespace liemoment {

inline constexpr int kOrderInfinite = std::numeric_limits<int>::max();

enum class OrderMode { plain, constraint };

// Numeric assignment to the truncated phase-space coordinates: expectation
// values x_i, centered Weyl moments eps_i (degree >= 2) and hbar.
struct PhasePoint {
  std::vector<double> x;
  std::map<MultiIndex, double> eps;
  double hbar = 0.0;
};

// Polynomial over Q(i) in the expectation values x_i, the moment variables
// eps_i with |i| >= 2, and hbar.  Monomials carry a provenance flag marking
// terms proportional to the classical constraint C; the flag is set by the
// constraint generator and contributes +2 to the semiclassical order when
// requested, it is never re-derived by factoring.
class MomentPoly {
 public:
  struct Key {
    unsigned hbar = 0;
    MultiIndex x;
    std::map<MultiIndex, unsigned> eps;
    bool ctag = false;
    auto operator<=>(const Key&) const = default;
  };

  MomentPoly() : nvars_(0) {}
  explicit MomentPoly(std::size_t nvars) : nvars_(nvars) {}

  static MomentPoly constant(std::size_t nvars, GaussianRational c);
  static MomentPoly x(std::size_t nvars, std::size_t i);
  static MomentPoly eps(std::size_t nvars, const MultiIndex& idx);  // requires degree >= 2
  static MomentPoly hbar(std::size_t nvars, unsigned power = 1);
  static MomentPoly from_coeff_poly(const CoeffPoly& p);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Key, GaussianRational>& terms() const { return terms_; }

  MomentPoly& operator+=(const MomentPoly& o);
  MomentPoly& operator-=(const MomentPoly& o);
  MomentPoly operator-() const;
  MomentPoly& operator*=(const MomentPoly& o);
  MomentPoly& operator*=(const GaussianRational& c);

  void add_term(Key k, const GaussianRational& c);

  // provenance flag handling
  MomentPoly with_ctag() const;  // marks every monomial C-proportional
  bool tag_aware() const { return tag_aware_; }
  bool has_tagged_terms() const;
  MomentPoly tagged_part() const;
  MomentPoly untagged_part() const;
  MomentPoly without_tags() const;  // clears flags (merging equal monomials)

  static int term_order(const Key& k, OrderMode mode);
  // min term order; kOrderInfinite for zero.  Constraint mode on a polynomial
  // that never went through the tagging generator signals misuse.
  int order(OrderMode mode = OrderMode::plain) const;
  MomentPoly truncate(int n, OrderMode mode = OrderMode::plain) const;

  MomentPoly derivative_x(std::size_t i) const;
  MomentPoly derivative_eps(const MultiIndex& idx) const;

  std::complex<double> evaluate(const PhasePoint& p) const;

  std::set<MultiIndex> eps_variables() const;
  bool is_linear_in_eps() const;
  // for polynomials linear in eps: the coefficient of eps_idx / the eps-free rest
  MomentPoly eps_coefficient(const MultiIndex& idx) const;
  MomentPoly eps_free_part() const;
  // keeps only hbar^0 monomials (the symmetric, non-reordering content)
  MomentPoly hbar_free_part() const;
  // conversion for eps-free polynomials
  CoeffPoly to_coeff_poly() const;

  std::string str(const std::vector<std::string>* names = nullptr) const;

  bool operator==(const MomentPoly& o) const;

 private:
  std::size_t nvars_;
  bool tag_aware_ = false;
  std::map<Key, GaussianRational> terms_;
  void check_compatible(const MomentPoly& o) const;
};

MomentPoly operator+(MomentPoly a, const MomentPoly& b);
MomentPoly operator-(MomentPoly a, const MomentPoly& b);
MomentPoly operator*(const MomentPoly& a, const MomentPoly& b);
MomentPoly operator*(const GaussianRational& c, MomentPoly p);

}  // namespace liemoment
