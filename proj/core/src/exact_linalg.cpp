#include "liemoment/exact_linalg.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace liemoment {

namespace {

void check_rectangular(const RationalMatrix& m) {
  if (m.empty()) return;
  const std::size_t c = m[0].size();
  for (const auto& row : m)
    if (row.size() != c) throw std::invalid_argument("matrix rows have unequal lengths");
}

// integer matrix with the same rank: each row scaled by its denominator lcm
std::vector<std::vector<mpz_class>> clear_denominators(const RationalMatrix& m) {
  std::vector<std::vector<mpz_class>> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    mpz_class l = 1;
    for (const Rational& v : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<mpz_class> irow;
    irow.reserve(row.size());
    for (const Rational& v : row) {
      mpq_class scaled = v * Rational(l);
      irow.push_back(scaled.get_num());
    }
    out.push_back(std::move(irow));
  }
  return out;
}

}  // namespace

RationalMatrix transpose(const RationalMatrix& m) {
  check_rectangular(m);
  if (m.empty()) return {};
  RationalMatrix out(m[0].size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

int exact_rank(const RationalMatrix& mat) {
  check_rectangular(mat);
  if (mat.empty() || mat[0].empty()) return 0;
  auto a = clear_denominators(mat);
  const std::size_t rows = a.size(), cols = a[0].size();

  // Bareiss fraction-free elimination with column skipping: every interior
  // division by the previous pivot is exact
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class num = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

std::vector<std::vector<Rational>> right_null_space(const RationalMatrix& mat) {
  check_rectangular(mat);
  if (mat.empty()) return {};
  const std::size_t cols = mat[0].size();
  if (cols == 0) return {};

  RationalMatrix a = mat;
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;

  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    Rational inv = 1 / a[r][col];
    for (std::size_t j = col; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][free];
    // first nonzero entry scaled to 1
    for (const Rational& entry : v) {
      if (entry != 0) {
        Rational inv = 1 / entry;
        for (Rational& e : v) e *= inv;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Rational>> left_null_space(const RationalMatrix& m) {
  return right_null_space(transpose(m));
}

int floating_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

int floating_rank(const Eigen::MatrixXd& m, double tol) {
  return floating_rank(Eigen::MatrixXcd(m.cast<std::complex<double>>()), tol);
}

std::vector<std::vector<double>> floating_left_null_space(const Eigen::MatrixXd& m,
                                                          double tol) {
  if (m.rows() == 0) return {};
  // v^T m = 0  <=>  m^T v = 0: right singular vectors of m^T past the rank
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.transpose(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv(i) > tol * smax) ++rank;
  std::vector<std::vector<double>> basis;
  const Eigen::MatrixXd& v = svd.matrixV();
  for (Eigen::Index c = rank; c < v.cols(); ++c) {
    std::vector<double> vec(static_cast<std::size_t>(v.rows()));
    for (Eigen::Index r = 0; r < v.rows(); ++r) vec[static_cast<std::size_t>(r)] = v(r, c);
    // scale so the first entry of meaningful size is 1, matching the exact path
    for (double entry : vec) {
      if (std::abs(entry) > 1e-9) {
        for (double& e : vec) e /= entry;
        break;
      }
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

}  // namespace liemoment
