#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "liemoment/constraints.hpp"
#include "liemoment/dynamics.hpp"
#include "liemoment/io.hpp"
#include "liemoment/parallel.hpp"
#include "liemoment/qpoisson.hpp"
#include "liemoment/rep_oracle.hpp"

namespace lm = liemoment;

namespace {

std::vector<double> parse_direction(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  if (out.size() != 3) throw std::runtime_error("--direction needs three comma-separated numbers");
  return out;
}

// writes to the file when a path is given, falling back to stdout
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool is_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

int run_check(const std::string& algebra_path) {
  lm::LieAlgebraSpec spec = lm::load_algebra_file(algebra_path);
  lm::ValidationReport rep = spec.validate();
  std::optional<bool> central;
  if (rep.ok()) {
    lm::EnvelopingAlgebra alg(spec);
    central = alg.is_central(alg.casimir_element());
  }
  std::cout << lm::validation_report_json(spec, rep, central) << "\n";
  return rep.ok() && central.value_or(false) ? 0 : 1;
}

int run_constraints(const std::string& algebra_path, int order, const std::string& out_path) {
  lm::LieAlgebraSpec spec = lm::load_algebra_file(algebra_path);
  lm::EnvelopingAlgebra alg(spec);
  lm::ConstraintTower tower = lm::generate_tower(alg, order);

  OutputTarget out(out_path);
  std::ostream& os = out.stream();
  const std::size_t m = spec.dimension();
  os << "# algebra: " << algebra_path << " (M=" << m << "), truncation order N=" << order
     << "\n";
  for (int n = 0; n < order; ++n) {
    std::size_t count = 0;
    for (const lm::MultiIndex& idx : tower.indices)
      if (static_cast<int>(idx.degree()) == n) ++count;
    os << "# |i|=" << n << ": " << count << " constraints (expected "
       << lm::binomial(static_cast<unsigned long>(n) + m - 1, m - 1).get_str() << ")\n";
  }
  lm::MomentCensus census = lm::count_nontrivial(m, order);
  os << "# moments of degree " << order << ": " << census.moments_at_order.get_str()
     << ", constraints added at this order: " << census.constraints_increment.get_str()
     << "\n";
  const auto& names = spec.generator_names();
  for (std::size_t e = 0; e < tower.size(); ++e)
    os << "C" << tower.indices[e].str() << " = " << tower.entries[e].str(&names) << "\n";
  return 0;
}

int run_bracket_table(const std::string& algebra_path, int max_degree) {
  lm::LieAlgebraSpec spec = lm::load_algebra_file(algebra_path);
  lm::EnvelopingAlgebra alg(spec);
  lm::BracketTable table(alg);
  const std::size_t m = spec.dimension();
  const auto& names = spec.generator_names();

  std::vector<std::pair<std::string, lm::BracketAtom>> atoms;
  for (std::size_t i = 0; i < m; ++i) atoms.emplace_back(names[i], lm::BracketAtom::x(i));
  for (const lm::MultiIndex& idx :
       lm::indices_up_to_degree(m, static_cast<unsigned>(max_degree)))
    if (idx.degree() >= 2) atoms.emplace_back("eps" + idx.str(), lm::BracketAtom::eps(idx));

  for (std::size_t a = 0; a < atoms.size(); ++a)
    for (std::size_t b = a + 1; b < atoms.size(); ++b)
      std::cout << "{" << atoms[a].first << ", " << atoms[b].first << "} = "
                << table.entry(atoms[a].second, atoms[b].second).str(&names) << "\n";
  return 0;
}

int run_independence(const std::string& algebra_path, int order, const std::string& point_spec,
                     const std::string& grid_spec, double hbar, double tolerance,
                     const std::string& out_path) {
  lm::LieAlgebraSpec spec = lm::load_algebra_file(algebra_path);
  lm::EnvelopingAlgebra alg(spec);
  lm::ConstraintTower tower = lm::generate_tower(alg, order);
  const std::size_t m = spec.dimension();
  OutputTarget out(out_path);

  if (grid_spec.empty()) {
    auto assignments = lm::parse_assignments(point_spec);
    bool has_eps = false;
    for (const auto& [name, v] : assignments)
      if (name.rfind("eps", 0) == 0) has_eps = true;

    lm::GradientReport rep;
    if (has_eps || hbar != 0.0)
      rep = lm::independence_check(tower, lm::assignments_to_point(assignments, m, hbar),
                                   tolerance);
    else
      rep = lm::independence_check(tower, lm::assignments_to_x(assignments, m));
    out.stream() << lm::gradient_report_json(rep) << "\n";
    return 0;
  }

  std::vector<lm::GridAxis> axes = lm::parse_grid(grid_spec, m);
  std::vector<lm::Rational> base(m, lm::Rational(0));
  if (!point_spec.empty())
    base = lm::assignments_to_x_partial(lm::parse_assignments(point_spec), m);
  std::vector<std::vector<lm::Rational>> points = lm::grid_points(axes, base);

  std::vector<std::string> lines(points.size());
  lm::parallel_for(points.size(), [&](std::size_t i) {
    try {
      lines[i] = lm::gradient_report_json(lm::independence_check(tower, points[i]));
    } catch (const std::exception& e) {
      lines[i] = std::string("{\"error\": \"") + e.what() + "\"}";
    }
  });
  for (const std::string& line : lines) out.stream() << line << "\n";
  return 0;
}

int run_evolve(const std::string& algebra_path, int order, const std::string& ham_path,
               double hbar, const std::string& point_spec, double coherent_spin,
               const std::string& direction_spec, double oracle_spin, double dt, double t_end,
               const std::string& out_path) {
  lm::LieAlgebraSpec spec = lm::load_algebra_file(algebra_path);
  lm::EnvelopingAlgebra alg(spec);
  lm::BracketTable table(alg);
  const std::size_t m = spec.dimension();

  lm::NCPoly ham = lm::weyl_lift(alg, lm::load_weyl_polynomial_file(ham_path, m));
  lm::EffectiveSystem sys = lm::build_system(table, ham, order);

  lm::PhasePoint init;
  lm::MatrixRep rep;
  Eigen::VectorXcd psi;
  const bool coherent = coherent_spin >= 0.0;
  if (coherent) {
    if (hbar <= 0.0) throw std::runtime_error("--coherent needs a positive --hbar");
    if (order > 8) throw std::runtime_error("coherent initialization supports orders up to 8");
    rep = lm::su2_rep(coherent_spin, hbar);
    if (lm::commutator_residual(rep, spec) > 1e-9)
      throw std::domain_error("spin representation does not realize this algebra");
    std::vector<double> dir = direction_spec.empty() ? std::vector<double>{0.0, 0.0, 1.0}
                                                     : parse_direction(direction_spec);
    psi = lm::coherent_state(rep, dir);
    init = lm::extract_phase_point(rep, psi, static_cast<unsigned>(order));
  } else {
    if (point_spec.empty()) throw std::runtime_error("either --point or --coherent is required");
    init = lm::assignments_to_point(lm::parse_assignments(point_spec), m, hbar);
    for (const lm::SystemVariable& v : sys.vars)
      if (v.is_eps && !init.eps.count(v.eps_index))
        throw std::runtime_error("initial point missing eps" + v.eps_index.str());
  }

  lm::Trajectory traj = lm::integrate(sys, init, dt, t_end);

  std::optional<lm::ConstraintTower> tower;
  try {
    tower = lm::generate_tower(alg, order);
  } catch (const std::exception& e) {
    std::cerr << "note: constraint residuals unavailable (" << e.what() << ")\n";
  }
  lm::ConservationReport cons = lm::conserve_check(sys, tower ? &*tower : nullptr, traj);

  std::optional<lm::OracleTrajectory> oracle;
  if (oracle_spin >= 0.0) {
    if (!coherent || oracle_spin != coherent_spin)
      throw std::runtime_error("--oracle needs --coherent with the same spin");
    Eigen::MatrixXcd hmat = lm::matrix_realization(rep, ham);
    oracle = lm::schrodinger_evolve(rep, hmat, psi, dt, t_end);
  }

  OutputTarget out(out_path);
  lm::write_trajectory_csv(out.stream(), traj, tower ? &cons : nullptr,
                           oracle ? &*oracle : nullptr);
  if (out.is_file()) {
    std::ofstream meta(out_path + ".json", std::ios::binary);
    meta << lm::trajectory_metadata_json(algebra_path, sys, traj, t_end) << "\n";
  }

  std::cerr << "integrated " << traj.t.size() << " samples to t=" << traj.last_valid_time
            << ", H drift " << cons.hamiltonian_drift;
  if (tower) {
    double worst = 0.0;
    for (double d : cons.max_drift) worst = std::max(worst, d);
    std::cerr << ", worst constraint drift " << worst;
  }
  std::cerr << ", max imaginary residual " << traj.max_imag_residual << "\n";
  if (traj.diverged) {
    std::cerr << "integration diverged after t=" << traj.last_valid_time << "\n";
    return 1;
  }
  return 0;
}

int run_oracle_compare(const std::string& algebra_path, double spin, double hbar,
                       int max_degree, const std::string& direction_spec) {
  lm::LieAlgebraSpec spec = lm::load_algebra_file(algebra_path);
  lm::EnvelopingAlgebra alg(spec);
  lm::MatrixRep rep = lm::su2_rep(spin, hbar);
  const double residual = lm::commutator_residual(rep, spec);
  if (residual > 1e-9) throw std::domain_error("spin representation does not realize this algebra");

  std::vector<double> dir = direction_spec.empty() ? std::vector<double>{1.0, 1.0, 1.0}
                                                   : parse_direction(direction_spec);
  Eigen::VectorXcd psi = lm::coherent_state(rep, dir);
  lm::PhasePoint point = lm::extract_phase_point(rep, psi, static_cast<unsigned>(max_degree));

  const std::size_t m = spec.dimension();
  std::size_t words = 0;
  double worst = 0.0;
  for (int len = 0; len <= max_degree; ++len) {
    std::vector<std::uint8_t> w(static_cast<std::size_t>(len), 0);
    while (true) {
      lm::NCPoly p = alg.zero(lm::GenKind::X);
      p.add_term(lm::Word(w.begin(), w.end()), lm::CoeffPoly::constant(m, lm::GaussianRational(1)));
      std::complex<double> symbolic = alg.expectation(p).evaluate(point);
      Eigen::MatrixXcd mat = lm::matrix_realization(rep, p);
      std::complex<double> exact = (psi.adjoint() * mat * psi)(0) / psi.squaredNorm();
      worst = std::max(worst, std::abs(symbolic - exact));
      ++words;

      std::size_t pos = w.size();
      while (pos > 0 && w[pos - 1] == m - 1) w[--pos] = 0;
      if (pos == 0) break;
      ++w[pos - 1];
    }
  }

  std::cout << "{\"spin\": " << spin << ", \"hbar\": " << hbar << ", \"dimension\": "
            << rep.dim() << ", \"commutator_residual\": " << residual
            << ", \"words_checked\": " << words << ", \"max_difference\": " << worst << "}\n";
  return worst <= 1e-9 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiclassically truncated state spaces of finite-dimensional Lie algebras"};
  app.require_subcommand(1);

  std::string algebra_path, out_path, point_spec, grid_spec, ham_path, direction_spec;
  int order = 2;
  int max_degree = 2;
  double hbar = 0.0, dt = 1e-3, t_end = 1.0, tolerance = 1e-10;
  double coherent_spin = -1.0, oracle_spin = -1.0;

  CLI::App* check = app.add_subcommand("check", "validate an algebra file and Casimir centrality");
  check->add_option("--algebra", algebra_path, "algebra definition (JSON)")->required();

  CLI::App* constraints =
      app.add_subcommand("constraints", "generate the truncated constraint tower");
  constraints->add_option("--algebra", algebra_path)->required();
  constraints->add_option("--order", order, "truncation order N")->required();
  constraints->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* btable = app.add_subcommand("bracket-table", "dump the atom-pair bracket table");
  btable->add_option("--algebra", algebra_path)->required();
  btable->add_option("--max-degree", max_degree, "largest moment degree (default 2)")
      ->check(CLI::Range(2, 8));

  CLI::App* indep =
      app.add_subcommand("independence", "rank analysis of the constraint gradient");
  indep->add_option("--algebra", algebra_path)->required();
  indep->add_option("--order", order, "truncation order N")->required();
  indep->add_option("--point", point_spec, "evaluation point, e.g. \"x1=1/2,x2=0\"");
  indep->add_option("--grid", grid_spec, "scan axes, e.g. \"x1=-1:2:0.05\"");
  indep->add_option("--hbar", hbar, "numeric hbar enabling the full-gradient diagnostics");
  indep->add_option("--tolerance", tolerance, "singular-value threshold (default 1e-10)");
  indep->add_option("--out", out_path);

  CLI::App* evolve = app.add_subcommand("evolve", "integrate the order-N effective equations");
  evolve->add_option("--algebra", algebra_path)->required();
  evolve->add_option("--order", order, "truncation order N")->required();
  evolve->add_option("--hamiltonian", ham_path, "polynomial file with kind \"weyl\"")->required();
  evolve->add_option("--hbar", hbar, "numeric hbar (default 0)");
  evolve->add_option("--point", point_spec, "initial values incl. all moments");
  evolve->add_option("--coherent", coherent_spin, "spin-j coherent initial data");
  evolve->add_option("--direction", direction_spec, "coherent direction nx,ny,nz (default 0,0,1)");
  evolve->add_option("--oracle", oracle_spin, "co-run the exact spin-j evolution");
  evolve->add_option("--dt", dt, "integrator step (default 1e-3)");
  evolve->add_option("--t-end", t_end, "final time (default 1)");
  evolve->add_option("--out", out_path, "CSV path; also writes <out>.json metadata");

  CLI::App* ocmp = app.add_subcommand(
      "oracle-compare", "compare symbolic expectations against exact spin matrices");
  ocmp->add_option("--algebra", algebra_path)->required();
  ocmp->add_option("--spin", coherent_spin, "spin j of the representation")->required();
  ocmp->add_option("--hbar", hbar, "numeric hbar (default 1)");
  ocmp->add_option("--max-degree", max_degree, "largest word length (default 4)")
      ->check(CLI::Range(0, 8));
  ocmp->add_option("--direction", direction_spec, "coherent direction (default 1,1,1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(algebra_path);
    if (constraints->parsed()) return run_constraints(algebra_path, order, out_path);
    if (btable->parsed()) return run_bracket_table(algebra_path, max_degree);
    if (indep->parsed()) {
      if (point_spec.empty() && grid_spec.empty())
        throw std::runtime_error("independence needs --point or --grid");
      return run_independence(algebra_path, order, point_spec, grid_spec, hbar, tolerance,
                              out_path);
    }
    if (evolve->parsed())
      return run_evolve(algebra_path, order, ham_path, hbar, point_spec, coherent_spin,
                        direction_spec, oracle_spin, dt, t_end, out_path);
    if (ocmp->parsed()) {
      if (!ocmp->count("--max-degree")) max_degree = 4;
      if (!ocmp->count("--hbar")) hbar = 1.0;
      return run_oracle_compare(algebra_path, coherent_spin, hbar, max_degree, direction_spec);
    }
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
