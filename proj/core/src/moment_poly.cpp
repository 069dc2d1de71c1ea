#include "liemoment/moment_poly.hpp"

#include <stdexcept>

namespace liemoment {

MomentPoly MomentPoly::constant(std::size_t nvars, GaussianRational c) {
  MomentPoly p(nvars);
  p.add_term(Key{0, MultiIndex(nvars), {}, false}, c);
  return p;
}

MomentPoly MomentPoly::x(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  MomentPoly p(nvars);
  p.add_term(Key{0, MultiIndex::unit(nvars, i), {}, false}, GaussianRational(1));
  return p;
}

MomentPoly MomentPoly::eps(std::size_t nvars, const MultiIndex& idx) {
  if (idx.size() != nvars) throw std::invalid_argument("moment index size mismatch");
  if (idx.degree() < 2)
    throw std::invalid_argument("moment variables exist only for degree >= 2");
  MomentPoly p(nvars);
  p.add_term(Key{0, MultiIndex(nvars), {{idx, 1}}, false}, GaussianRational(1));
  return p;
}

MomentPoly MomentPoly::hbar(std::size_t nvars, unsigned power) {
  MomentPoly p(nvars);
  p.add_term(Key{power, MultiIndex(nvars), {}, false}, GaussianRational(1));
  return p;
}

MomentPoly MomentPoly::from_coeff_poly(const CoeffPoly& p) {
  MomentPoly r(p.nvars());
  for (const auto& [k, c] : p.terms()) r.add_term(Key{k.hbar, k.x, {}, false}, c);
  return r;
}

void MomentPoly::check_compatible(const MomentPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("moment polynomials over different variable sets");
}

void MomentPoly::add_term(Key k, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(std::move(k), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MomentPoly& MomentPoly::operator+=(const MomentPoly& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  tag_aware_ = tag_aware_ || o.tag_aware_;
  return *this;
}

MomentPoly& MomentPoly::operator-=(const MomentPoly& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  tag_aware_ = tag_aware_ || o.tag_aware_;
  return *this;
}

MomentPoly MomentPoly::operator-() const {
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

MomentPoly& MomentPoly::operator*=(const MomentPoly& o) {
  check_compatible(o);
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_ || o.tag_aware_;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      Key k;
      k.hbar = ka.hbar + kb.hbar;
      k.x = ka.x.plus(kb.x);
      k.eps = ka.eps;
      for (const auto& [idx, pow] : kb.eps) k.eps[idx] += pow;
      k.ctag = ka.ctag || kb.ctag;  // products of C-proportional terms stay C-proportional
      r.add_term(std::move(k), ca * cb);
    }
  *this = std::move(r);
  return *this;
}

MomentPoly& MomentPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

MomentPoly MomentPoly::with_ctag() const {
  MomentPoly r(nvars_);
  r.tag_aware_ = true;
  for (const auto& [k, c] : terms_) {
    Key t = k;
    t.ctag = true;
    r.add_term(std::move(t), c);
  }
  return r;
}

bool MomentPoly::has_tagged_terms() const {
  for (const auto& [k, c] : terms_)
    if (k.ctag) return true;
  return false;
}

MomentPoly MomentPoly::tagged_part() const {
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_)
    if (k.ctag) r.terms_.emplace(k, c);
  return r;
}

MomentPoly MomentPoly::untagged_part() const {
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_)
    if (!k.ctag) r.terms_.emplace(k, c);
  return r;
}

MomentPoly MomentPoly::without_tags() const {
  MomentPoly r(nvars_);
  for (const auto& [k, c] : terms_) {
    Key t = k;
    t.ctag = false;
    r.add_term(std::move(t), c);
  }
  return r;
}

int MomentPoly::term_order(const Key& k, OrderMode mode) {
  int o = 2 * static_cast<int>(k.hbar);
  for (const auto& [idx, pow] : k.eps) o += static_cast<int>(idx.degree() * pow);
  if (mode == OrderMode::constraint && k.ctag) o += 2;
  return o;
}

int MomentPoly::order(OrderMode mode) const {
  if (mode == OrderMode::constraint && !tag_aware_)
    throw std::logic_error("constraint-mode order on a polynomial without constraint provenance");
  int best = kOrderInfinite;
  for (const auto& [k, c] : terms_) best = std::min(best, term_order(k, mode));
  return best;
}

MomentPoly MomentPoly::truncate(int n, OrderMode mode) const {
  if (mode == OrderMode::constraint && !tag_aware_)
    throw std::logic_error("constraint-mode truncation on a polynomial without constraint provenance");
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_)
    if (term_order(k, mode) <= n) r.terms_.emplace(k, c);
  return r;
}

MomentPoly MomentPoly::derivative_x(std::size_t i) const {
  if (i >= nvars_) throw std::out_of_range("variable index out of range");
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_) {
    if (k.x[i] == 0) continue;
    Key t = k;
    GaussianRational f = c * GaussianRational(Rational(t.x[i]));
    t.x[i] -= 1;
    r.add_term(std::move(t), f);
  }
  return r;
}

MomentPoly MomentPoly::derivative_eps(const MultiIndex& idx) const {
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_) {
    auto it = k.eps.find(idx);
    if (it == k.eps.end()) continue;
    Key t = k;
    GaussianRational f = c * GaussianRational(Rational(it->second));
    auto tit = t.eps.find(idx);
    if (tit->second == 1)
      t.eps.erase(tit);
    else
      tit->second -= 1;
    r.add_term(std::move(t), f);
  }
  return r;
}

std::complex<double> MomentPoly::evaluate(const PhasePoint& p) const {
  if (p.x.size() != nvars_) throw std::invalid_argument("phase point has wrong dimension");
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : terms_) {
    std::complex<double> m = c.to_complex();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < k.x[i]; ++e) m *= p.x[i];
    for (unsigned e = 0; e < k.hbar; ++e) m *= p.hbar;
    for (const auto& [idx, pow] : k.eps) {
      auto it = p.eps.find(idx);
      if (it == p.eps.end())
        throw std::out_of_range("phase point missing moment eps" + idx.str());
      for (unsigned e = 0; e < pow; ++e) m *= it->second;
    }
    sum += m;
  }
  return sum;
}

std::set<MultiIndex> MomentPoly::eps_variables() const {
  std::set<MultiIndex> vars;
  for (const auto& [k, c] : terms_)
    for (const auto& [idx, pow] : k.eps) vars.insert(idx);
  return vars;
}

bool MomentPoly::is_linear_in_eps() const {
  for (const auto& [k, c] : terms_) {
    unsigned total = 0;
    for (const auto& [idx, pow] : k.eps) total += pow;
    if (total > 1) return false;
  }
  return true;
}

MomentPoly MomentPoly::eps_coefficient(const MultiIndex& idx) const {
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_) {
    if (k.eps.size() != 1) continue;
    auto it = k.eps.begin();
    if (it->first != idx || it->second != 1) continue;
    Key t = k;
    t.eps.clear();
    r.add_term(std::move(t), c);
  }
  return r;
}

MomentPoly MomentPoly::eps_free_part() const {
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_)
    if (k.eps.empty()) r.terms_.emplace(k, c);
  return r;
}

MomentPoly MomentPoly::hbar_free_part() const {
  MomentPoly r(nvars_);
  r.tag_aware_ = tag_aware_;
  for (const auto& [k, c] : terms_)
    if (k.hbar == 0) r.terms_.emplace(k, c);
  return r;
}

CoeffPoly MomentPoly::to_coeff_poly() const {
  CoeffPoly r(nvars_);
  for (const auto& [k, c] : terms_) {
    if (!k.eps.empty())
      throw std::domain_error("cannot convert a moment-dependent polynomial to coefficients");
    r.add_term(k.hbar, k.x, c);
  }
  return r;
}

std::string MomentPoly::str(const std::vector<std::string>* names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    GaussianRational shown = c;
    if (!first) {
      bool negative = (c.is_real() && c.re < 0) || (c.re == 0 && c.im < 0);
      out += negative ? " - " : " + ";
      if (negative) shown = -c;
    }
    first = false;
    std::string term = to_string(shown);
    if (k.hbar > 0) term += " * hbar^" + std::to_string(k.hbar);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (k.x[i] == 0) continue;
      term += " * " + (names ? (*names)[i] : "x" + std::to_string(i + 1));
      if (k.x[i] > 1) term += "^" + std::to_string(k.x[i]);
    }
    for (const auto& [idx, pow] : k.eps) {
      term += " * eps" + idx.str();
      if (pow > 1) term += "^" + std::to_string(pow);
    }
    if (k.ctag) term += " [C]";
    out += term;
  }
  return out;
}

bool MomentPoly::operator==(const MomentPoly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

MomentPoly operator+(MomentPoly a, const MomentPoly& b) { return a += b; }
MomentPoly operator-(MomentPoly a, const MomentPoly& b) { return a -= b; }
MomentPoly operator*(const MomentPoly& a, const MomentPoly& b) {
  MomentPoly r = a;
  return r *= b;
}
MomentPoly operator*(const GaussianRational& c, MomentPoly p) { return p *= c; }

}  // namespace liemoment
