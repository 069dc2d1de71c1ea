#include "liemoment/multi_index.hpp"

#include <numeric>
#include <stdexcept>

namespace liemoment {

MultiIndex MultiIndex::unit(std::size_t size, std::size_t i) {
  MultiIndex m(size);
  m[i] = 1;
  return m;
}

unsigned MultiIndex::degree() const {
  return std::accumulate(exp_.begin(), exp_.end(), 0u);
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  if (other.size() != size()) throw std::invalid_argument("multi-index size mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    if (other.exp_[i] > exp_[i]) return false;
  return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
  if (o.size() != size()) throw std::invalid_argument("multi-index size mismatch");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.exp_[i] += o.exp_[i];
  return r;
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
  if (!dominates(o)) throw std::invalid_argument("multi-index subtraction would go negative");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.exp_[i] -= o.exp_[i];
  return r;
}

mpz_class MultiIndex::factorial() const {
  mpz_class f = 1;
  for (unsigned e : exp_) f *= liemoment::factorial(e);
  return f;
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exp_[i]);
  }
  return s + ")";
}

bool graded_less(const MultiIndex& a, const MultiIndex& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a < b;
}

std::vector<MultiIndex> indices_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(nvars);
  // lexicographic enumeration of compositions of `degree` into nvars parts
  auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
    if (pos + 1 == nvars) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back(cur);
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

std::vector<MultiIndex> indices_up_to_degree(std::size_t nvars, unsigned degree) {
  std::vector<MultiIndex> out;
  for (unsigned d = 0; d <= degree; ++d) {
    auto layer = indices_of_degree(nvars, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace liemoment
