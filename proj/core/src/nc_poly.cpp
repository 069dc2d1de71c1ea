#include "liemoment/nc_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace liemoment {

int NCPoly::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

void NCPoly::check_compatible(const NCPoly& o) const {
  if (kind_ != o.kind_) throw std::invalid_argument("mixed generator flavors in one operation");
  if (nvars_ != o.nvars_) throw std::invalid_argument("operands over different algebras");
}

void NCPoly::add_term(const Word& w, const CoeffPoly& c) {
  if (c.is_zero()) return;
  normal_ = false;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  check_compatible(o);
  bool keep = normal_ && o.normal_;
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  normal_ = keep;
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  check_compatible(o);
  bool keep = normal_ && o.normal_;
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  normal_ = keep;
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly r(kind_, nvars_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  r.normal_ = normal_;
  return r;
}

NCPoly& NCPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NCPoly& NCPoly::operator*=(const CoeffPoly& c) {
  bool keep = normal_;
  std::map<Word, CoeffPoly> old;
  old.swap(terms_);
  for (const auto& [w, v] : old) add_term(w, v * c);
  normal_ = keep;
  return *this;
}

NCPoly NCPoly::divide_by_i_hbar() const {
  NCPoly r(kind_, nvars_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, c.divide_by_i_hbar());
  r.normal_ = normal_;
  return r;
}

std::string NCPoly::str(const std::vector<std::string>* names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  const char* prefix = kind_ == GenKind::DX ? "d" : "";
  for (const auto& [w, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    std::string cs = c.str(names);
    if (c.term_count() > 1) cs = "(" + cs + ")";
    out += cs;
    for (auto l : w) {
      out += " * ";
      out += prefix;
      out += names ? (*names)[l] : "x" + std::to_string(l + 1);
    }
  }
  return out;
}

bool NCPoly::operator==(const NCPoly& o) const {
  return kind_ == o.kind_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

NCPoly partial_derivative(const NCPoly& p, std::size_t i) {
  if (i >= p.nvars()) throw std::out_of_range("variable index out of range");
  NCPoly r(p.kind(), p.nvars());
  for (const auto& [w, c] : p.terms()) {
    r.add_term(w, c.derivative(i));
    if (p.kind() == GenKind::DX) {
      for (std::size_t pos = 0; pos < w.size(); ++pos) {
        if (w[pos] != i) continue;
        Word shorter = w;
        shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(pos));
        r.add_term(shorter, -c);
      }
    }
  }
  return r;
}

EnvelopingAlgebra::EnvelopingAlgebra(LieAlgebraSpec spec, unsigned max_degree)
    : spec_(std::move(spec)), max_degree_(max_degree) {
  if (spec_.dimension() > 255) throw std::invalid_argument("too many generators for word encoding");
}

void EnvelopingAlgebra::check_degree(std::size_t d) const {
  if (d > max_degree_)
    throw std::length_error("word degree " + std::to_string(d) + " exceeds configured cap " +
                            std::to_string(max_degree_));
}

NCPoly EnvelopingAlgebra::one(GenKind kind) const {
  NCPoly p(kind, dimension());
  p.add_term({}, CoeffPoly::constant(dimension(), GaussianRational(1)));
  p.normal_ = true;
  return p;
}

NCPoly EnvelopingAlgebra::generator(GenKind kind, std::size_t i) const {
  if (i >= dimension()) throw std::out_of_range("generator index out of range");
  NCPoly p(kind, dimension());
  p.add_term({static_cast<std::uint8_t>(i)}, CoeffPoly::constant(dimension(), GaussianRational(1)));
  p.normal_ = true;
  return p;
}

NCPoly EnvelopingAlgebra::constant(GenKind kind, CoeffPoly c) const {
  if (c.nvars() != dimension()) throw std::invalid_argument("coefficient over wrong variable set");
  NCPoly p(kind, dimension());
  p.add_term({}, c);
  p.normal_ = true;
  return p;
}

NCPoly EnvelopingAlgebra::multiply(const NCPoly& a, const NCPoly& b) const {
  a.check_compatible(b);
  NCPoly r(a.kind(), dimension());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      check_degree(wa.size() + wb.size());
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  return r;
}

const NCPoly& EnvelopingAlgebra::word_normal_form(const Word& w, GenKind kind) const {
  auto slot = static_cast<std::size_t>(kind);
  {
    std::lock_guard lock(mutex_);
    auto it = word_nf_[slot].find(w);
    if (it != word_nf_[slot].end()) return it->second;
  }

  NCPoly res(kind, dimension());
  auto inversion = std::adjacent_find(w.begin(), w.end(), std::greater<std::uint8_t>());
  if (inversion == w.end()) {
    res.add_term(w, CoeffPoly::constant(dimension(), GaussianRational(1)));
  } else {
    std::size_t p = static_cast<std::size_t>(inversion - w.begin());
    std::uint8_t j = w[p], i = w[p + 1];  // j > i

    Word swapped = w;
    std::swap(swapped[p], swapped[p + 1]);
    res = word_normal_form(swapped, kind);

    // x_j x_i = x_i x_j + i hbar alpha_ji^k x_k, and in the centered flavor
    // the correction generator additionally splits off its classical part.
    for (std::size_t k = 0; k < dimension(); ++k) {
      const Rational& a = spec_.alpha(j, i, k);
      if (a == 0) continue;
      CoeffPoly scale =
          CoeffPoly::monomial(dimension(), 1, MultiIndex(dimension()), GaussianRational(Rational(0), a));
      Word contracted(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
      contracted.push_back(static_cast<std::uint8_t>(k));
      contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(p) + 2, w.end());
      const NCPoly& sub = word_normal_form(contracted, kind);
      for (const auto& [ws, cs] : sub.terms()) res.add_term(ws, cs * scale);
      if (kind == GenKind::DX) {
        CoeffPoly xscale = CoeffPoly::monomial(dimension(), 1, MultiIndex::unit(dimension(), k),
                                               GaussianRational(Rational(0), a));
        Word removed(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
        removed.insert(removed.end(), w.begin() + static_cast<std::ptrdiff_t>(p) + 2, w.end());
        const NCPoly& sub0 = word_normal_form(removed, kind);
        for (const auto& [ws, cs] : sub0.terms()) res.add_term(ws, cs * xscale);
      }
    }
  }
  res.normal_ = true;

  std::lock_guard lock(mutex_);
  auto [it, fresh] = word_nf_[slot].try_emplace(w, std::move(res));
  return it->second;
}

NCPoly EnvelopingAlgebra::normal_form(const NCPoly& p) const {
  if (p.in_normal_form()) return p;
  NCPoly out(p.kind(), dimension());
  for (const auto& [w, c] : p.terms()) {
    const NCPoly& nf = word_normal_form(w, p.kind());
    for (const auto& [wn, cn] : nf.terms()) out.add_term(wn, c * cn);
  }
  out.normal_ = true;
  return out;
}

NCPoly EnvelopingAlgebra::commutator(const NCPoly& a, const NCPoly& b) const {
  NCPoly c = normal_form(multiply(a, b) - multiply(b, a));
  for (const auto& [w, coeff] : c.terms())
    for (const auto& [k, v] : coeff.terms())
      if (k.hbar == 0)
        throw std::logic_error("commutator produced an hbar-free term; structure constants inconsistent");
  return c;
}

bool EnvelopingAlgebra::is_central(const NCPoly& p) const {
  for (std::size_t i = 0; i < dimension(); ++i)
    if (!commutator(p, generator(p.kind(), i)).is_zero()) return false;
  return true;
}

NCPoly EnvelopingAlgebra::weyl_symmetrize(const MultiIndex& idx, GenKind kind) const {
  if (idx.size() != dimension()) throw std::invalid_argument("multi-index size mismatch");
  check_degree(idx.degree());
  Word letters;
  for (std::size_t i = 0; i < idx.size(); ++i)
    letters.insert(letters.end(), idx[i], static_cast<std::uint8_t>(i));

  Rational weight(idx.factorial(), factorial(idx.degree()));
  weight.canonicalize();
  CoeffPoly w = CoeffPoly::constant(dimension(), GaussianRational(weight));

  NCPoly out(kind, dimension());
  do {
    out.add_term(letters, w);
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

const NCPoly& EnvelopingAlgebra::weyl_normal_form(const MultiIndex& idx) const {
  {
    std::lock_guard lock(mutex_);
    auto it = weyl_nf_.find(idx);
    if (it != weyl_nf_.end()) return it->second;
  }
  NCPoly nf = normal_form(weyl_symmetrize(idx, GenKind::DX));
  std::lock_guard lock(mutex_);
  auto [it, fresh] = weyl_nf_.try_emplace(idx, std::move(nf));
  return it->second;
}

std::map<MultiIndex, CoeffPoly> EnvelopingAlgebra::weyl_basis_decompose(const NCPoly& p) const {
  if (p.kind() != GenKind::DX)
    throw std::invalid_argument("Weyl basis decomposition needs the centered flavor");
  NCPoly rem = normal_form(p);
  std::map<MultiIndex, CoeffPoly> out;
  while (!rem.is_zero()) {
    auto top = rem.terms().begin();
    for (auto it = rem.terms().begin(); it != rem.terms().end(); ++it)
      if (it->first.size() > top->first.size()) top = it;

    MultiIndex idx(dimension());
    for (auto l : top->first) idx[l] += 1;
    CoeffPoly c = top->second;

    // e_idx normal-forms to the sorted word plus strictly shorter corrections,
    // so subtracting c * e_idx cancels the chosen term exactly.
    const NCPoly& e = weyl_normal_form(idx);
    for (const auto& [w, cc] : e.terms()) rem.add_term(w, -(c * cc));
    out.emplace(idx, std::move(c));
  }
  return out;
}

NCPoly EnvelopingAlgebra::weyl_basis_recompose(const std::map<MultiIndex, CoeffPoly>& parts) const {
  NCPoly out(GenKind::DX, dimension());
  for (const auto& [idx, c] : parts) {
    const NCPoly& e = weyl_normal_form(idx);
    for (const auto& [w, cc] : e.terms()) out.add_term(w, c * cc);
  }
  out.normal_ = true;
  return out;
}

NCPoly EnvelopingAlgebra::to_centered(const NCPoly& p) const {
  if (p.kind() == GenKind::DX) return p;
  NCPoly res(GenKind::DX, dimension());
  for (const auto& [w, c] : p.terms()) {
    NCPoly acc(GenKind::DX, dimension());
    acc.add_term({}, c);
    for (auto l : w) {
      NCPoly next(GenKind::DX, dimension());
      CoeffPoly xl = CoeffPoly::variable(dimension(), l);
      for (const auto& [w2, c2] : acc.terms()) {
        Word ext = w2;
        ext.push_back(l);
        next.add_term(ext, c2);
        next.add_term(w2, c2 * xl);
      }
      acc = std::move(next);
    }
    res += acc;
  }
  res.normal_ = p.in_normal_form();
  return res;
}

NCPoly EnvelopingAlgebra::to_plain(const NCPoly& p) const {
  if (p.kind() == GenKind::X) return p;
  NCPoly res(GenKind::X, dimension());
  for (const auto& [w, c] : p.terms()) {
    NCPoly acc(GenKind::X, dimension());
    acc.add_term({}, c);
    for (auto l : w) {
      NCPoly next(GenKind::X, dimension());
      CoeffPoly xl = CoeffPoly::variable(dimension(), l);
      for (const auto& [w2, c2] : acc.terms()) {
        Word ext = w2;
        ext.push_back(l);
        next.add_term(ext, c2);
        next.add_term(w2, -(c2 * xl));
      }
      acc = std::move(next);
    }
    res += acc;
  }
  res.normal_ = p.in_normal_form();
  return res;
}

int EnvelopingAlgebra::ext_order(const NCPoly& p) const {
  if (p.kind() != GenKind::DX)
    throw std::invalid_argument("semiclassical order is defined on the centered flavor");
  NCPoly nf = normal_form(p);
  int best = kOrderInfinite;
  for (const auto& [w, c] : nf.terms())
    for (const auto& [k, v] : c.terms())
      best = std::min(best, static_cast<int>(w.size()) + 2 * static_cast<int>(k.hbar));
  return best;
}

NCPoly EnvelopingAlgebra::casimir_element() const {
  auto report = spec_.validate();
  if (!report.ok())
    throw std::domain_error("algebra fails validation; refusing to build a Casimir element");
  NCPoly sum = zero(GenKind::X);
  for (const auto& [k, c] : spec_.casimir().terms()) {
    NCPoly part = weyl_symmetrize(k.x, GenKind::X);
    part *= c;
    sum += part;
  }
  NCPoly r_term = one(GenKind::X);
  r_term *= GaussianRational(spec_.casimir_level());
  return normal_form(sum - r_term);
}

MomentPoly EnvelopingAlgebra::expectation(const NCPoly& p) const {
  NCPoly centered = p.kind() == GenKind::X ? to_centered(p) : p;
  auto parts = weyl_basis_decompose(centered);
  MomentPoly out(dimension());
  for (const auto& [idx, c] : parts) {
    unsigned deg = idx.degree();
    if (deg == 1) continue;  // first-order centered moments vanish identically
    MomentPoly base = MomentPoly::from_coeff_poly(c);
    if (deg >= 2) base *= MomentPoly::eps(dimension(), idx);
    out += base;
  }
  return out;
}

const MomentPoly& EnvelopingAlgebra::weyl_product_expectation(const MultiIndex& i,
                                                              const MultiIndex& k) const {
  auto key = std::make_pair(i, k);
  {
    std::lock_guard lock(mutex_);
    auto it = weyl_prod_exp_.find(key);
    if (it != weyl_prod_exp_.end()) return it->second;
  }
  MomentPoly val = expectation(multiply(weyl_normal_form(i), weyl_normal_form(k)));
  std::lock_guard lock(mutex_);
  auto [it, fresh] = weyl_prod_exp_.try_emplace(std::move(key), std::move(val));
  return it->second;
}

NCPoly casimir_element(const EnvelopingAlgebra& alg) { return alg.casimir_element(); }

NCPoly weyl_lift(const EnvelopingAlgebra& alg, const CoeffPoly& p) {
  if (p.nvars() != alg.dimension())
    throw std::invalid_argument("polynomial does not match the algebra dimension");
  NCPoly out = alg.zero(GenKind::X);
  for (const auto& [k, c] : p.terms()) {
    NCPoly part = alg.weyl_symmetrize(k.x, GenKind::X);
    part *= CoeffPoly::monomial(p.nvars(), k.hbar, MultiIndex(p.nvars()), c);
    out += part;
  }
  return alg.normal_form(out);
}

}  // namespace liemoment
