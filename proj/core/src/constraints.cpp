#include "liemoment/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace liemoment {

namespace {

// shared data for producing tower entries: the Weyl decomposition of the
// centered Casimir element and the classical constraint as a moment poly
struct TowerContext {
  const EnvelopingAlgebra& alg;
  std::map<MultiIndex, CoeffPoly> parts;
  MomentPoly c_classical;

  explicit TowerContext(const EnvelopingAlgebra& a) : alg(a) {
    NCPoly chat = a.casimir_element();
    if (!a.is_central(chat))
      throw std::domain_error("Weyl lift of the Casimir polynomial is not central");
    parts = a.weyl_basis_decompose(a.to_centered(chat));
    c_classical = MomentPoly::from_coeff_poly(a.spec().constraint_poly());
  }

  MomentPoly entry(const MultiIndex& idx, int n) const {
    const std::size_t m = alg.dimension();
    MomentPoly raw(m);
    for (const auto& [k, c] : parts)
      raw += MomentPoly::from_coeff_poly(c) * alg.weyl_product_expectation(idx, k);

    // The derivative-expansion term with j = i is C(x) * eps_i; it is
    // C-proportional by construction and carries the provenance tag from
    // birth.  Degree-1 basis elements have vanishing expectation, so the
    // spliced term is zero there (the tag awareness still propagates).
    MomentPoly basis(m);
    if (idx.degree() == 0)
      basis = MomentPoly::constant(m, GaussianRational(1));
    else if (idx.degree() >= 2)
      basis = MomentPoly::eps(m, idx);
    MomentPoly explicit_c = c_classical * basis;
    raw -= explicit_c;
    raw += explicit_c.with_ctag();

    return raw.truncate(n, OrderMode::constraint);
  }
};

std::vector<Rational> direction_derivatives(const CoeffPoly& c, const std::vector<Rational>& x,
                                            std::size_t k, unsigned maxn) {
  std::vector<Rational> out(maxn + 1);
  CoeffPoly cur = c;
  out[0] = cur.eval_rational(x);
  for (unsigned n = 1; n <= maxn; ++n) {
    cur = cur.derivative(k);
    out[n] = cur.eval_rational(x);
  }
  return out;
}

}  // namespace

const MomentPoly& ConstraintTower::at(const MultiIndex& idx) const {
  auto it = std::find(indices.begin(), indices.end(), idx);
  if (it == indices.end()) throw std::out_of_range("no tower entry for " + idx.str());
  return entries[static_cast<std::size_t>(it - indices.begin())];
}

ConstraintTower generate_tower(const EnvelopingAlgebra& alg, int n) {
  if (n < 2) throw std::invalid_argument("truncation order must be at least 2");
  TowerContext ctx(alg);

  ConstraintTower t;
  t.order = n;
  t.nvars = alg.dimension();
  t.classical_constraint = alg.spec().constraint_poly();
  for (std::size_t k = 0; k < t.nvars; ++k)
    t.classical_gradient.push_back(t.classical_constraint.derivative(k));

  for (const MultiIndex& idx : indices_up_to_degree(t.nvars, static_cast<unsigned>(n - 1))) {
    MomentPoly e = ctx.entry(idx, n);
    if (e.is_zero())
      throw std::logic_error("constraint " + idx.str() +
                             " truncated to zero; tower census violated");
    t.indices.push_back(idx);
    t.entries.push_back(std::move(e));
  }
  return t;
}

MomentPoly constraint_entry(const EnvelopingAlgebra& alg, const MultiIndex& idx, int n) {
  if (n < 2) throw std::invalid_argument("truncation order must be at least 2");
  if (idx.size() != alg.dimension())
    throw std::invalid_argument("multi-index size does not match the algebra dimension");
  return TowerContext(alg).entry(idx, n);
}

MomentCensus count_nontrivial(std::size_t m, int n) {
  if (m < 1 || n < 2) throw std::invalid_argument("census needs M >= 1 and N >= 2");
  const unsigned long mu = static_cast<unsigned long>(m);
  const unsigned long nu = static_cast<unsigned long>(n);
  return {binomial(nu + mu - 1, mu - 1), binomial(nu + mu - 2, mu - 1)};
}

SymbolicGradient symmetric_gradient(const ConstraintTower& tower) {
  SymbolicGradient g;
  for (const MultiIndex& idx : tower.indices)
    if (idx.degree() >= 1) g.rows.push_back(idx);
  for (const MultiIndex& idx : indices_up_to_degree(tower.nvars, static_cast<unsigned>(tower.order)))
    if (idx.degree() >= 2) g.cols.push_back(idx);

  for (const MultiIndex& row : g.rows) {
    const MomentPoly sym = tower.at(row).hbar_free_part();
    std::vector<CoeffPoly> line;
    line.reserve(g.cols.size());
    for (const MultiIndex& col : g.cols) line.push_back(sym.eps_coefficient(col).to_coeff_poly());
    g.entries.push_back(std::move(line));
  }
  return g;
}

GradientReport independence_check(const ConstraintTower& tower, const std::vector<Rational>& x) {
  if (x.size() != tower.nvars)
    throw std::invalid_argument("evaluation point has wrong dimension");
  SymbolicGradient g = symmetric_gradient(tower);

  RationalMatrix m(g.rows.size(), std::vector<Rational>(g.cols.size()));
  for (std::size_t r = 0; r < g.rows.size(); ++r)
    for (std::size_t c = 0; c < g.cols.size(); ++c) m[r][c] = g.entries[r][c].eval_rational(x);

  GradientReport rep;
  rep.exact = true;
  rep.point_exact = x;
  for (const Rational& v : x) rep.point_double.push_back(v.get_d());
  rep.row_index = g.rows;
  rep.rows = g.rows.size();
  rep.cols = g.cols.size();
  rep.rank = exact_rank(m);
  if (rep.deficient()) rep.kernel_exact = left_null_space(m);

  rep.dc_zero = true;
  std::vector<Rational> dc(tower.nvars);
  for (std::size_t k = 0; k < tower.nvars; ++k) {
    dc[k] = tower.classical_gradient[k].eval_rational(x);
    if (dc[k] != 0) rep.dc_zero = false;
  }
  rep.c_value_exact = tower.classical_constraint.eval_rational(x);
  rep.c_value = rep.c_value_exact.get_d();
  rep.on_surface = rep.c_value_exact == 0;

  if (!rep.on_surface) {
    const unsigned m_inv = static_cast<unsigned>(tower.order - 2);
    for (std::size_t k = 0; k < tower.nvars; ++k) {
      if (dc[k] == 0) continue;
      rep.invc_exact[k] = inv_c_derivative(tower.classical_constraint, x, k, m_inv);
      rep.invc_double[k] = rep.invc_exact[k].get_d();
    }
  }
  return rep;
}

GradientReport independence_check(const ConstraintTower& tower, const PhasePoint& point,
                                  double tolerance) {
  if (tolerance <= 0) throw std::invalid_argument("tolerance must be positive");
  if (point.x.size() != tower.nvars)
    throw std::invalid_argument("evaluation point has wrong dimension");
  SymbolicGradient g = symmetric_gradient(tower);

  Eigen::MatrixXd m(static_cast<Eigen::Index>(g.rows.size()),
                    static_cast<Eigen::Index>(g.cols.size()));
  for (std::size_t r = 0; r < g.rows.size(); ++r)
    for (std::size_t c = 0; c < g.cols.size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          g.entries[r][c].eval(point.x, 0.0).real();

  GradientReport rep;
  rep.exact = false;
  rep.point_double = point.x;
  rep.hbar = point.hbar;
  rep.row_index = g.rows;
  rep.rows = g.rows.size();
  rep.cols = g.cols.size();
  rep.rank = floating_rank(m, tolerance);
  if (rep.deficient()) rep.kernel_double = floating_left_null_space(m, tolerance);

  rep.dc_zero = true;
  std::vector<double> dc(tower.nvars);
  for (std::size_t k = 0; k < tower.nvars; ++k) {
    dc[k] = tower.classical_gradient[k].eval(point.x, 0.0).real();
    if (std::abs(dc[k]) > tolerance) rep.dc_zero = false;
  }
  rep.c_value = tower.classical_constraint.eval(point.x, 0.0).real();
  rep.on_surface = std::abs(rep.c_value) <= tolerance;

  if (!rep.on_surface) {
    const unsigned m_inv = static_cast<unsigned>(tower.order - 2);
    for (std::size_t k = 0; k < tower.nvars; ++k) {
      if (std::abs(dc[k]) <= tolerance) continue;
      rep.invc_double[k] = inv_c_derivative(tower.classical_constraint, point.x, k, m_inv);
    }
  }

  if (point.hbar != 0.0) {
    rep.has_full = true;
    Eigen::MatrixXcd me(static_cast<Eigen::Index>(g.rows.size()),
                        static_cast<Eigen::Index>(g.cols.size()));
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
      const MomentPoly& full = tower.at(g.rows[r]);
      for (std::size_t c = 0; c < g.cols.size(); ++c)
        me(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            full.eps_coefficient(g.cols[c]).to_coeff_poly().eval(point.x, point.hbar);
    }
    rep.eps_rank_full = floating_rank(me, tolerance);

    // x-direction columns need moment values; skipped when the point does
    // not carry them
    try {
      Eigen::MatrixXcd mf(me.rows(), me.cols() + static_cast<Eigen::Index>(tower.nvars));
      mf.leftCols(me.cols()) = me;
      for (std::size_t r = 0; r < g.rows.size(); ++r)
        for (std::size_t l = 0; l < tower.nvars; ++l)
          mf(static_cast<Eigen::Index>(r), me.cols() + static_cast<Eigen::Index>(l)) =
              tower.at(g.rows[r]).derivative_x(l).evaluate(point);
      rep.full_rank = floating_rank(mf, tolerance);
    } catch (const std::out_of_range&) {
      rep.full_rank = -1;
    }
  }
  return rep;
}

Rational inv_c_derivative(const CoeffPoly& c, const std::vector<Rational>& x, std::size_t k,
                          unsigned m) {
  if (!c.is_real() || !c.is_hbar_free())
    throw std::invalid_argument("1/C derivatives need a real, hbar-free polynomial");
  if (k >= c.nvars() || x.size() != c.nvars())
    throw std::invalid_argument("direction or point does not match the polynomial");
  std::vector<Rational> dc = direction_derivatives(c, x, k, m);
  if (dc[0] == 0) throw std::domain_error("1/C derivative undefined where C vanishes");

  std::vector<Rational> d(m + 1);
  d[0] = 1 / dc[0];
  for (unsigned mm = 1; mm <= m; ++mm) {
    Rational sum = 0;
    for (unsigned n = 0; n < mm; ++n) sum += Rational(binomial(mm, n)) * dc[mm - n] * d[n];
    d[mm] = -sum / dc[0];
  }
  return d[m];
}

double inv_c_derivative(const CoeffPoly& c, const std::vector<double>& x, std::size_t k,
                        unsigned m) {
  if (!c.is_real() || !c.is_hbar_free())
    throw std::invalid_argument("1/C derivatives need a real, hbar-free polynomial");
  if (k >= c.nvars() || x.size() != c.nvars())
    throw std::invalid_argument("direction or point does not match the polynomial");
  std::vector<double> dc(m + 1);
  CoeffPoly cur = c;
  dc[0] = cur.eval(x, 0.0).real();
  for (unsigned n = 1; n <= m; ++n) {
    cur = cur.derivative(k);
    dc[n] = cur.eval(x, 0.0).real();
  }
  if (dc[0] == 0.0) throw std::domain_error("1/C derivative undefined where C vanishes");

  std::vector<double> d(m + 1);
  d[0] = 1.0 / dc[0];
  for (unsigned mm = 1; mm <= m; ++mm) {
    double sum = 0.0;
    for (unsigned n = 0; n < mm; ++n)
      sum += binomial(mm, n).get_d() * dc[mm - n] * d[n];
    d[mm] = -sum / dc[0];
  }
  return d[m];
}

KernelRecursionCheck kernel_recursion_check(const ConstraintTower& tower,
                                            const std::vector<Rational>& x) {
  GradientReport rep = independence_check(tower, x);
  KernelRecursionCheck out;
  out.applicable = rep.deficient() && !rep.on_surface;
  if (!out.applicable) return out;

  const CoeffPoly& c = tower.classical_constraint;
  const unsigned n = static_cast<unsigned>(tower.order);

  for (const auto& kv : rep.kernel_exact) {
    std::map<MultiIndex, Rational> gamma;
    for (std::size_t r = 0; r < rep.row_index.size(); ++r) gamma[rep.row_index[r]] = kv[r];
    auto comp = [&](std::size_t k, unsigned mm) {
      MultiIndex idx(tower.nvars);
      idx[k] = mm;
      auto it = gamma.find(idx);
      return it == gamma.end() ? Rational(0) : it->second;
    };

    for (std::size_t k = 0; k < tower.nvars; ++k) {
      std::vector<Rational> dc = direction_derivatives(c, x, k, n - 1);
      if (dc[1] == 0) continue;  // direction without classical gradient
      const Rational g1 = comp(k, 1);

      // recursion: gamma^m = gamma^1 * C / (m-1)! * d^{m-1}(1/C)
      for (unsigned mm = 2; mm + 1 < n; ++mm) {
        Rational expect =
            g1 * dc[0] / Rational(factorial(mm - 1)) * inv_c_derivative(c, x, k, mm - 1);
        if (comp(k, mm) != expect)
          out.failures.push_back("direction " + std::to_string(k + 1) + ": component " +
                                 std::to_string(mm) + " violates the 1/C recursion");
      }

      // closure: the column condition at (N-1) e_k, and its reduction to the
      // degree-(N-2) derivative of 1/C
      Rational sum = 0;
      for (unsigned nn = 1; nn + 1 < n; ++nn) {
        unsigned der = (n - 1) - nn;
        sum += comp(k, nn) / Rational(factorial(der)) * dc[der];
      }
      if (sum != 0)
        out.failures.push_back("direction " + std::to_string(k + 1) +
                               ": closure sum is nonzero");
      Rational reduced = -g1 * dc[0] * dc[0] / Rational(factorial(n - 2)) *
                         inv_c_derivative(c, x, k, n - 2);
      if (sum != reduced)
        out.failures.push_back("direction " + std::to_string(k + 1) +
                               ": closure sum does not match its 1/C reduction");
    }
  }
  out.ok = out.failures.empty();
  return out;
}

}  // namespace liemoment
