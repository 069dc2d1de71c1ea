#include "liemoment/rational.hpp"

#include <stdexcept>

namespace liemoment {

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // decimal literal: shift the point away and divide by the matching power of ten
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits == "" || digits == "-" || digits == "+")
      throw std::invalid_argument("bad rational literal: " + s);
    mpz_class num;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q.get_mpq_t())) <= 0)
    throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  // direct mpq construction does not reduce, so normalize a copy before printing
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational n = o.re * o.re + o.im * o.im;
  if (n == 0) throw std::domain_error("division by zero Gaussian rational");
  Rational r = (re * o.re + im * o.im) / n;
  Rational i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  GaussianRational r = a;
  return r *= b;
}
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  GaussianRational r = a;
  return r /= b;
}
GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
bool operator==(const GaussianRational& a, const GaussianRational& b) {
  return a.re == b.re && a.im == b.im;
}
bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

std::string to_string(const GaussianRational& c) {
  if (c.im == 0) return c.re.get_str();
  std::string imag;
  if (c.im == 1)
    imag = "i";
  else if (c.im == -1)
    imag = "-i";
  else
    imag = c.im.get_str() + "*i";
  if (c.re == 0) return imag;
  std::string out = "(" + c.re.get_str();
  if (c.im > 0) out += "+";
  return out + imag + ")";
}

}  // namespace liemoment
