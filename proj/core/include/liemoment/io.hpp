#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liemoment/algebra.hpp"
#include "liemoment/constraints.hpp"
#include "liemoment/dynamics.hpp"
#include "liemoment/rep_oracle.hpp"

namespace liemoment {

// Algebra files carry exact data: structure constants and polynomial
// coefficients are rational strings ("1", "-1/2") or JSON integers, the
// Casimir is a map from comma-separated exponent tuples to coefficients.
LieAlgebraSpec parse_algebra_json(const std::string& text);
LieAlgebraSpec load_algebra_file(const std::string& path);
std::string algebra_to_json(const LieAlgebraSpec& spec);

// {"kind": "weyl", "terms": {"0,0,2": "1"}}: a classical polynomial meant to
// be Weyl-lifted by the caller
CoeffPoly parse_weyl_polynomial_json(const std::string& text, std::size_t nvars);
CoeffPoly load_weyl_polynomial_file(const std::string& path, std::size_t nvars);

// "x1=1/2,x2=-0.25,eps(2,0,0)=1/100"; commas inside parentheses belong to
// the name; decimal values become exact rationals
std::map<std::string, Rational> parse_assignments(const std::string& text);

// "(2,0,0)" or "2,0,0"
MultiIndex parse_multi_index(const std::string& text, std::size_t nvars);

// assignment maps split into expectation values and moments
std::vector<Rational> assignments_to_x(const std::map<std::string, Rational>& a,
                                       std::size_t nvars);
// like assignments_to_x, but missing variables default to zero
std::vector<Rational> assignments_to_x_partial(const std::map<std::string, Rational>& a,
                                               std::size_t nvars);
PhasePoint assignments_to_point(const std::map<std::string, Rational>& a, std::size_t nvars,
                                double hbar);

// "x1=-1:2:1/20" (1-D) or comma-joined axes (2-D)
struct GridAxis {
  std::string var;
  std::size_t var_index = 0;
  Rational from, to, step;
};
std::vector<GridAxis> parse_grid(const std::string& text, std::size_t nvars);
std::vector<std::vector<Rational>> grid_points(const std::vector<GridAxis>& axes,
                                               const std::vector<Rational>& base);

std::string validation_report_json(const LieAlgebraSpec& spec, const ValidationReport& report,
                                   std::optional<bool> central);
std::string gradient_report_json(const GradientReport& report);

// header: t, variables, constraint residuals, oracle expectation columns;
// names containing commas are RFC 4180 quoted
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const ConservationReport* conserved, const OracleTrajectory* oracle);
std::string trajectory_metadata_json(const std::string& algebra_label,
                                     const EffectiveSystem& sys, const Trajectory& traj,
                                     double t_end);

}  // namespace liemoment
