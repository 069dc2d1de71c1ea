#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "liemoment/moment_poly.hpp"
#include "liemoment/nc_poly.hpp"

namespace liemoment {

// One truncated phase-space coordinate: an expectation value x_i or a
// centered moment eps_idx with |idx| >= 2.
struct BracketAtom {
  bool is_eps = false;
  std::size_t x_index = 0;
  MultiIndex eps_index;

  static BracketAtom x(std::size_t i) { return {false, i, {}}; }
  static BracketAtom eps(MultiIndex idx) { return {true, 0, std::move(idx)}; }

  auto operator<=>(const BracketAtom&) const = default;
};

// Exact quantum Poisson bracket of two extended-algebra elements:
//   {<f>,<g>} = (1/i hbar) <[f,g]>
//             + <df/dx_i> <dg/dx_j> {x_i,x_j}
//             + (1/i hbar) <df/dx_i> <[x_i, g]>
//             + (1/i hbar) <dg/dx_i> <[f, x_i]>
MomentPoly bracket_ext(const EnvelopingAlgebra& alg, const NCPoly& f, const NCPoly& g);

// Memoized atom-pair brackets, extended to arbitrary moment polynomials by
// bilinearity and the Leibniz rule.  Entries are exact; concurrent lookups
// of a missing entry may duplicate work but land on identical values.
class BracketTable {
 public:
  explicit BracketTable(const EnvelopingAlgebra& alg) : alg_(alg) {}

  const EnvelopingAlgebra& algebra() const { return alg_; }

  MomentPoly entry(const BracketAtom& a, const BracketAtom& b) const;
  MomentPoly bracket(const MomentPoly& f, const MomentPoly& g) const;
  MomentPoly truncated_bracket(const MomentPoly& f, const MomentPoly& g, int n) const;

  std::size_t cached_entries() const;

 private:
  const EnvelopingAlgebra& alg_;
  NCPoly lift(const BracketAtom& a) const;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<BracketAtom, BracketAtom>, MomentPoly> cache_;
};

}  // namespace liemoment
