#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace liemoment {

using Rational = mpq_class;

// Parses "p", "-p/q" or a finite decimal like "-0.05" into an exact rational.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Element of Q(i), the exact coefficient field of the whole library.
struct GaussianRational {
  Rational re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(int n) : re(n), im(0) {}
  GaussianRational(long n) : re(n), im(0) {}
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
bool operator==(const GaussianRational& a, const GaussianRational& b);
bool operator!=(const GaussianRational& a, const GaussianRational& b);

// "3/2", "-i", "3/4*i", "(1/2-3/4*i)"
std::string to_string(const GaussianRational& c);

}  // namespace liemoment
