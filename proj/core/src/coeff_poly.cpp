#include "liemoment/coeff_poly.hpp"

#include <stdexcept>

namespace liemoment {

CoeffPoly CoeffPoly::constant(std::size_t nvars, GaussianRational c) {
  CoeffPoly p(nvars);
  p.add_term(0, MultiIndex(nvars), c);
  return p;
}

CoeffPoly CoeffPoly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  CoeffPoly p(nvars);
  p.add_term(0, MultiIndex::unit(nvars, i), GaussianRational(1));
  return p;
}

CoeffPoly CoeffPoly::hbar(std::size_t nvars, unsigned power) {
  CoeffPoly p(nvars);
  p.add_term(power, MultiIndex(nvars), GaussianRational(1));
  return p;
}

CoeffPoly CoeffPoly::monomial(std::size_t nvars, unsigned hbar_pow, MultiIndex xexp,
                              GaussianRational c) {
  if (xexp.size() != nvars) throw std::invalid_argument("exponent size mismatch");
  CoeffPoly p(nvars);
  p.add_term(hbar_pow, xexp, c);
  return p;
}

bool CoeffPoly::is_real() const {
  for (const auto& [k, c] : terms_)
    if (!c.is_real()) return false;
  return true;
}

bool CoeffPoly::is_hbar_free() const {
  for (const auto& [k, c] : terms_)
    if (k.hbar != 0) return false;
  return true;
}

int CoeffPoly::x_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.x.degree()));
  return d;
}

GaussianRational CoeffPoly::coefficient(unsigned hbar_pow, const MultiIndex& xexp) const {
  auto it = terms_.find(Key{hbar_pow, xexp});
  return it == terms_.end() ? GaussianRational() : it->second;
}

void CoeffPoly::check_compatible(const CoeffPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("coefficient polynomials over different variable sets");
}

void CoeffPoly::add_term(unsigned hbar_pow, const MultiIndex& xexp, const GaussianRational& c) {
  if (c.is_zero()) return;
  Key k{hbar_pow, xexp};
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add_term(k.hbar, k.x, c);
  return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add_term(k.hbar, k.x, -c);
  return *this;
}

CoeffPoly CoeffPoly::operator-() const {
  CoeffPoly r(nvars_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

CoeffPoly& CoeffPoly::operator*=(const CoeffPoly& o) {
  check_compatible(o);
  CoeffPoly r(nvars_);
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_)
      r.add_term(ka.hbar + kb.hbar, ka.x.plus(kb.x), ca * cb);
  *this = std::move(r);
  return *this;
}

CoeffPoly& CoeffPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

CoeffPoly CoeffPoly::derivative(std::size_t i) const {
  if (i >= nvars_) throw std::out_of_range("variable index out of range");
  CoeffPoly r(nvars_);
  for (const auto& [k, c] : terms_) {
    if (k.x[i] == 0) continue;
    MultiIndex e = k.x;
    GaussianRational f = c * GaussianRational(Rational(e[i]));
    e[i] -= 1;
    r.add_term(k.hbar, e, f);
  }
  return r;
}

CoeffPoly CoeffPoly::divide_by_i_hbar() const {
  CoeffPoly r(nvars_);
  const GaussianRational minus_i{Rational(0), Rational(-1)};  // 1/i
  for (const auto& [k, c] : terms_) {
    if (k.hbar == 0)
      throw std::domain_error("polynomial not divisible by hbar");
    r.add_term(k.hbar - 1, k.x, c * minus_i);
  }
  return r;
}

std::complex<double> CoeffPoly::eval(const std::vector<double>& x, double hbar_value) const {
  if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : terms_) {
    double m = 1.0;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < k.x[i]; ++e) m *= x[i];
    for (unsigned e = 0; e < k.hbar; ++e) m *= hbar_value;
    sum += c.to_complex() * m;
  }
  return sum;
}

Rational CoeffPoly::eval_rational(const std::vector<Rational>& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [k, c] : terms_) {
    if (k.hbar != 0 || !c.is_real())
      throw std::domain_error("exact evaluation needs a real, hbar-free polynomial");
    Rational m = c.re;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < k.x[i]; ++e) m *= x[i];
    sum += m;
  }
  return sum;
}

std::string CoeffPoly::str(const std::vector<std::string>* names) const {
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
    std::string factors;
    if (k.hbar > 0) factors += " * hbar^" + std::to_string(k.hbar);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (k.x[i] == 0) continue;
      factors += " * " + (names ? (*names)[i] : "x" + std::to_string(i + 1));
      if (k.x[i] > 1) factors += "^" + std::to_string(k.x[i]);
    }
    out += to_string(shown) + factors;
  }
  return out;
}

bool CoeffPoly::operator==(const CoeffPoly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
  CoeffPoly r = a;
  return r *= b;
}
CoeffPoly operator*(const GaussianRational& c, CoeffPoly p) { return p *= c; }

}  // namespace liemoment
