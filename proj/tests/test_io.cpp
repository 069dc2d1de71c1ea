#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "liemoment/constraints.hpp"
#include "liemoment/dynamics.hpp"
#include "liemoment/io.hpp"
#include "support.hpp"

using namespace liemoment;
using nlohmann::json;

TEST_SUITE_BEGIN("io");

TEST_CASE("algebra definitions survive a serialization round trip") {
  LieAlgebraSpec spec = su2_algebra(Rational(3, 2));
  LieAlgebraSpec back = parse_algebra_json(algebra_to_json(spec));
  CHECK(back.dimension() == 3);
  CHECK(back.generator_names() == spec.generator_names());
  CHECK(back.structure_constants() == spec.structure_constants());
  CHECK(back.casimir() == spec.casimir());
  CHECK(back.casimir_level() == Rational(3, 2));
}

TEST_CASE("the shipped sample file loads and validates") {
  LieAlgebraSpec spec = load_algebra_file(std::string(LIEMOMENT_DATA_DIR) + "/su2.json");
  CHECK(spec.validate().ok());
  CHECK(spec.dimension() == 3);
}

TEST_CASE("malformed algebra files raise tool-level errors") {
  CHECK_THROWS_AS(load_algebra_file("/nonexistent/algebra.json"), std::runtime_error);
  CHECK_THROWS_AS(parse_algebra_json("{\"dimension\": 2}"), std::runtime_error);
  CHECK_THROWS_AS(parse_algebra_json("not json at all"), std::runtime_error);
  // ragged structure constant array
  CHECK_THROWS_AS(
      parse_algebra_json(R"json({"dimension": 2, "structure_constants": [[[0,0],[0,0]]],
                                 "casimir": {"(2,0)": "1"}, "r": "0"})json"),
      std::runtime_error);
  // floating point entries have no exact meaning
  CHECK_THROWS_AS(
      parse_algebra_json(R"json({"dimension": 1, "structure_constants": [[[0.5]]],
                                 "casimir": {"(2)": "1"}, "r": "0"})json"),
      std::runtime_error);
}

TEST_CASE("polynomial files parse the weyl kind only") {
  CoeffPoly p = parse_weyl_polynomial_json(
      R"json({"kind": "weyl", "terms": {"(0,0,2)": "1", "(1,0,0)": "-1/2"}})json", 3);
  CHECK(p.coefficient(0, MultiIndex{0, 0, 2}) == GaussianRational(1));
  CHECK(p.coefficient(0, MultiIndex{1, 0, 0}) == GaussianRational(Rational(-1, 2)));
  CHECK_THROWS_AS(parse_weyl_polynomial_json(R"({"kind": "normal", "terms": {}})", 3),
                  std::runtime_error);
  CHECK_THROWS_AS(
      parse_weyl_polynomial_json(R"json({"kind": "weyl", "terms": {"(0,0)": "1"}})json", 3),
      std::runtime_error);
}

TEST_CASE("point specifications parse with parenthesized names") {
  auto a = parse_assignments("x1=1/2, eps(1,1,0)=-0.25, x3 = 2");
  CHECK(a.size() == 3);
  CHECK(a.at("x1") == Rational(1, 2));
  CHECK(a.at("eps(1,1,0)") == Rational(-1, 4));
  CHECK(a.at("x3") == Rational(2));
  CHECK_THROWS_AS(parse_assignments("x1=1,x1=2"), std::runtime_error);
  CHECK_THROWS_AS(parse_assignments("x1"), std::runtime_error);
  CHECK_THROWS_AS(parse_assignments(""), std::runtime_error);
}

TEST_CASE("assignments fill coordinate vectors and phase points") {
  auto a = parse_assignments("x1=1,x3=-2");
  CHECK_THROWS_AS(assignments_to_x(a, 3), std::runtime_error);  // x2 missing
  std::vector<Rational> partial = assignments_to_x_partial(a, 3);
  CHECK(partial == std::vector<Rational>{Rational(1), Rational(0), Rational(-2)});

  auto b = parse_assignments("x1=1,x2=0,x3=-2,eps(2,0,0)=1/4");
  PhasePoint pt = assignments_to_point(b, 3, 0.1);
  CHECK(pt.x[2] == -2.0);
  CHECK(pt.eps.at(MultiIndex{2, 0, 0}) == 0.25);
  CHECK(pt.hbar == 0.1);
  CHECK_THROWS_AS(assignments_to_point(parse_assignments("x1=0,x2=0,x3=0,eps(1,0,0)=1"), 3, 0.0),
                  std::runtime_error);
  CHECK_THROWS_AS(assignments_to_x_partial(b, 3), std::runtime_error);
}

TEST_CASE("grid specifications expand to exact rational lattices") {
  auto axes = parse_grid("x1=-1:2:1/20", 3);
  REQUIRE(axes.size() == 1);
  CHECK(axes[0].var_index == 0);
  auto points = grid_points(axes, std::vector<Rational>(3, Rational(0)));
  CHECK(points.size() == 61);
  CHECK(points.front()[0] == Rational(-1));
  CHECK(points.back()[0] == Rational(2));
  CHECK(points[1][0] == Rational(-19, 20));
  for (const auto& p : points) CHECK(p[1] == 0);

  auto axes2 = parse_grid("x1=0:1:1/2, x3=0:1:1", 3);
  auto points2 = grid_points(axes2, std::vector<Rational>(3, Rational(7)));
  CHECK(points2.size() == 3 * 2);
  CHECK(points2[0][1] == Rational(7));  // untouched base coordinate

  CHECK_THROWS_AS(parse_grid("x9=0:1:1", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_grid("x1=0:1:0", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_grid("x1=1:0:1", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_grid("x1=0:1:1,x2=0:1:1,x3=0:1:1", 3), std::runtime_error);
}

TEST_CASE("validation reports serialize with one-based indices") {
  LieAlgebraSpec bad = testsupport::jacobi_violation_spec();
  json doc = json::parse(validation_report_json(bad, bad.validate(), std::nullopt));
  CHECK(doc.at("valid") == false);
  CHECK(doc.at("central").is_null());
  CHECK(doc.at("jacobi_violations").size() > 0);
  for (const auto& v : doc.at("jacobi_violations")) {
    CHECK(v.at("i").get<int>() >= 1);
    CHECK(v.at("i").get<int>() <= 3);
  }
}

TEST_CASE("gradient reports carry exact strings on the exact path") {
  EnvelopingAlgebra alg(testsupport::cubic_abelian_spec());
  ConstraintTower tower = generate_tower(alg, 4);
  GradientReport rep = independence_check(tower, {Rational(0)});
  json doc = json::parse(gradient_report_json(rep));
  CHECK(doc.at("exact") == true);
  CHECK(doc.at("rank") == 2);
  CHECK(doc.at("deficient") == true);
  CHECK(doc.at("point")[0] == "0");
  CHECK(doc.at("C_exact") == "-1");
  CHECK(doc.at("kernel").size() == 1);
}

TEST_CASE("trajectory CSV output quotes names and embeds oracle columns") {
  Trajectory traj;
  traj.names = {"x1", "eps(1,1,0)"};
  traj.t = {0.0, 0.5};
  traj.values = {{1.0, 0.25}, {0.875, 0.125}};
  OracleTrajectory oracle;
  oracle.t = traj.t;
  oracle.x = {{1.0, 0.874}};
  std::ostringstream out;
  write_trajectory_csv(out, traj, nullptr, &oracle);
  std::istringstream lines(out.str());
  std::string header, row0;
  std::getline(lines, header);
  std::getline(lines, row0);
  CHECK(header == "t,x1,\"eps(1,1,0)\",oracle_x1");
  CHECK(row0 == "0,1,0.25,1");
}

TEST_CASE("trajectory metadata records the integration setup") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  EffectiveSystem sys = build_system(table, alg.generator(GenKind::X, 2), 2);
  PhasePoint init;
  init.x = {1.0, 0.0, 0.0};
  init.hbar = 0.1;
  for (const SystemVariable& v : sys.vars)
    if (v.is_eps) init.eps[v.eps_index] = 0.0;
  Trajectory traj = integrate(sys, init, 0.25, 0.5);
  json doc = json::parse(trajectory_metadata_json("sample", sys, traj, 0.5));
  CHECK(doc.at("algebra") == "sample");
  CHECK(doc.at("order") == 2);
  CHECK(doc.at("hbar") == 0.1);
  CHECK(doc.at("dt") == 0.25);
  CHECK(doc.at("diverged") == false);
  CHECK(doc.at("variables").size() == 9);
}

TEST_SUITE_END();
