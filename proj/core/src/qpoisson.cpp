#include "liemoment/qpoisson.hpp"

#include <stdexcept>
#include <vector>

namespace liemoment {

namespace {

// classical bracket {x_i, x_j} = sum_k alpha_ij^k x_k
MomentPoly classical_xx_bracket(const LieAlgebraSpec& spec, std::size_t i, std::size_t j) {
  const std::size_t m = spec.dimension();
  MomentPoly out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Rational& a = spec.alpha(i, j, k);
    if (a != 0) out += GaussianRational(a) * MomentPoly::x(m, k);
  }
  return out;
}

}  // namespace

MomentPoly bracket_ext(const EnvelopingAlgebra& alg, const NCPoly& f, const NCPoly& g) {
  const std::size_t m = alg.dimension();
  const NCPoly fc = f.kind() == GenKind::DX ? f : alg.to_centered(f);
  const NCPoly gc = g.kind() == GenKind::DX ? g : alg.to_centered(g);

  MomentPoly out = alg.expectation(alg.commutator(fc, gc).divide_by_i_hbar());

  std::vector<NCPoly> df, dg;
  std::vector<MomentPoly> edf, edg;
  df.reserve(m);
  dg.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    df.push_back(partial_derivative(fc, i));
    dg.push_back(partial_derivative(gc, i));
    edf.push_back(alg.expectation(df.back()));
    edg.push_back(alg.expectation(dg.back()));
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (edf[i].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (edg[j].is_zero()) continue;
      MomentPoly cls = classical_xx_bracket(alg.spec(), i, j);
      if (cls.is_zero()) continue;
      out += edf[i] * edg[j] * cls;
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    // x_i-hat in the centered flavor: Delta x_i + x_i * 1
    NCPoly xi = alg.generator(GenKind::DX, i);
    xi += alg.constant(GenKind::DX, CoeffPoly::variable(m, i));
    if (!edf[i].is_zero()) {
      NCPoly com = alg.commutator(xi, gc);
      if (!com.is_zero()) out += edf[i] * alg.expectation(com.divide_by_i_hbar());
    }
    if (!edg[i].is_zero()) {
      NCPoly com = alg.commutator(fc, xi);
      if (!com.is_zero()) out += edg[i] * alg.expectation(com.divide_by_i_hbar());
    }
  }

  return out;
}

NCPoly BracketTable::lift(const BracketAtom& a) const {
  if (a.is_eps) return alg_.weyl_normal_form(a.eps_index);
  NCPoly xi = alg_.generator(GenKind::DX, a.x_index);
  xi += alg_.constant(GenKind::DX, CoeffPoly::variable(alg_.dimension(), a.x_index));
  return xi;
}

MomentPoly BracketTable::entry(const BracketAtom& a, const BracketAtom& b) const {
  if (a == b) return MomentPoly(alg_.dimension());
  if (b < a) {
    MomentPoly r = entry(b, a);
    return -r;
  }
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find({a, b});
    if (it != cache_.end()) return it->second;
  }
  MomentPoly value = bracket_ext(alg_, lift(a), lift(b));
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = cache_.try_emplace({a, b}, std::move(value));
  (void)inserted;
  return it->second;
}

std::size_t BracketTable::cached_entries() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

MomentPoly BracketTable::bracket(const MomentPoly& f, const MomentPoly& g) const {
  const std::size_t m = alg_.dimension();
  if (f.nvars() != m || g.nvars() != m)
    throw std::invalid_argument("bracket: operand dimension does not match algebra");

  auto atoms_of = [m](const MomentPoly& p) {
    std::vector<BracketAtom> atoms;
    for (std::size_t i = 0; i < m; ++i)
      if (!p.derivative_x(i).is_zero()) atoms.push_back(BracketAtom::x(i));
    for (const MultiIndex& idx : p.eps_variables()) atoms.push_back(BracketAtom::eps(idx));
    return atoms;
  };

  MomentPoly out(m);
  for (const BracketAtom& a : atoms_of(f)) {
    MomentPoly dfa = a.is_eps ? f.derivative_eps(a.eps_index) : f.derivative_x(a.x_index);
    if (dfa.is_zero()) continue;
    for (const BracketAtom& b : atoms_of(g)) {
      MomentPoly dgb = b.is_eps ? g.derivative_eps(b.eps_index) : g.derivative_x(b.x_index);
      if (dgb.is_zero()) continue;
      MomentPoly e = entry(a, b);
      if (e.is_zero()) continue;
      out += dfa * dgb * e;
    }
  }
  return out;
}

MomentPoly BracketTable::truncated_bracket(const MomentPoly& f, const MomentPoly& g,
                                           int n) const {
  return bracket(f, g).truncate(n, OrderMode::plain);
}

}  // namespace liemoment
