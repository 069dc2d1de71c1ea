#include "liemoment/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace liemoment {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return rational_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::runtime_error(where + ": expected a rational string or integer");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CoeffPoly poly_from_term_map(const json& terms, std::size_t nvars, const std::string& where) {
  if (!terms.is_object()) throw std::runtime_error(where + ": expected an exponent-tuple map");
  CoeffPoly p(nvars);
  for (const auto& [key, value] : terms.items()) {
    MultiIndex idx = parse_multi_index(key, nvars);
    p.add_term(0, idx, GaussianRational(rational_from_json(value, where + "[" + key + "]")));
  }
  return p;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// splits on commas that are not inside parentheses
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

LieAlgebraSpec parse_algebra_json(const std::string& text) try {
  json doc = json::parse(text);
  if (!doc.is_object()) throw std::runtime_error("algebra file: expected a JSON object");

  const std::size_t m = doc.at("dimension").get<std::size_t>();
  if (m == 0) throw std::runtime_error("algebra file: dimension must be positive");

  std::vector<std::string> names;
  if (doc.contains("generators")) {
    for (const auto& n : doc.at("generators")) names.push_back(n.get<std::string>());
    if (names.size() != m)
      throw std::runtime_error("algebra file: generator list does not match dimension");
  } else {
    for (std::size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
  }

  const json& sc = doc.at("structure_constants");
  if (!sc.is_array() || sc.size() != m)
    throw std::runtime_error("algebra file: structure_constants must be an MxMxM array");
  std::vector<Rational> alpha;
  alpha.reserve(m * m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!sc[i].is_array() || sc[i].size() != m)
      throw std::runtime_error("algebra file: structure_constants must be an MxMxM array");
    for (std::size_t j = 0; j < m; ++j) {
      if (!sc[i][j].is_array() || sc[i][j].size() != m)
        throw std::runtime_error("algebra file: structure_constants must be an MxMxM array");
      for (std::size_t k = 0; k < m; ++k)
        alpha.push_back(rational_from_json(sc[i][j][k], "structure_constants"));
    }
  }

  CoeffPoly casimir = poly_from_term_map(doc.at("casimir"), m, "casimir");
  Rational r = rational_from_json(doc.at("r"), "r");
  return LieAlgebraSpec(std::move(names), std::move(alpha), std::move(casimir), std::move(r));
} catch (const json::exception& e) {
  throw std::runtime_error(std::string("algebra file: ") + e.what());
} catch (const std::invalid_argument& e) {
  throw std::runtime_error(std::string("algebra file: ") + e.what());
}

LieAlgebraSpec load_algebra_file(const std::string& path) {
  return parse_algebra_json(read_file(path));
}

std::string algebra_to_json(const LieAlgebraSpec& spec) {
  const std::size_t m = spec.dimension();
  json doc;
  doc["dimension"] = m;
  doc["generators"] = spec.generator_names();

  json sc = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m; ++j) {
      json cell = json::array();
      for (std::size_t k = 0; k < m; ++k) cell.push_back(rational_to_string(spec.alpha(i, j, k)));
      row.push_back(std::move(cell));
    }
    sc.push_back(std::move(row));
  }
  doc["structure_constants"] = std::move(sc);

  json cas = json::object();
  for (const auto& [k, c] : spec.casimir().terms()) {
    if (k.hbar != 0) continue;  // classical polynomial by construction
    std::string key;
    for (std::size_t i = 0; i < m; ++i) {
      if (i) key += ',';
      key += std::to_string(k.x[i]);
    }
    cas[key] = rational_to_string(c.re);
  }
  doc["casimir"] = std::move(cas);
  doc["r"] = rational_to_string(spec.casimir_level());
  return doc.dump(2);
}

CoeffPoly parse_weyl_polynomial_json(const std::string& text, std::size_t nvars) try {
  json doc = json::parse(text);
  if (!doc.is_object()) throw std::runtime_error("polynomial file: expected a JSON object");
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind != "weyl")
    throw std::runtime_error("polynomial file: unsupported kind \"" + kind + "\"");
  return poly_from_term_map(doc.at("terms"), nvars, "terms");
} catch (const json::exception& e) {
  throw std::runtime_error(std::string("polynomial file: ") + e.what());
} catch (const std::invalid_argument& e) {
  throw std::runtime_error(std::string("polynomial file: ") + e.what());
}

CoeffPoly load_weyl_polynomial_file(const std::string& path, std::size_t nvars) {
  return parse_weyl_polynomial_json(read_file(path), nvars);
}

std::map<std::string, Rational> parse_assignments(const std::string& text) {
  std::map<std::string, Rational> out;
  for (const std::string& part : split_top_level(text)) {
    const std::string p = trimmed(part);
    if (p.empty()) continue;
    std::size_t eq = p.rfind('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error("assignment \"" + p + "\" is not name=value");
    std::string name = trimmed(p.substr(0, eq));
    std::string value = trimmed(p.substr(eq + 1));
    if (!out.emplace(name, rational_from_string(value)).second)
      throw std::runtime_error("duplicate assignment for " + name);
  }
  if (out.empty()) throw std::runtime_error("empty point specification");
  return out;
}

MultiIndex parse_multi_index(const std::string& text, std::size_t nvars) {
  std::string body = trimmed(text);
  if (!body.empty() && body.front() == '(' && body.back() == ')')
    body = body.substr(1, body.size() - 2);
  std::vector<unsigned> exps;
  std::string cur;
  auto flush = [&] {
    const std::string t = trimmed(cur);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw std::runtime_error("bad exponent \"" + cur + "\" in multi-index " + text);
    exps.push_back(static_cast<unsigned>(std::stoul(t)));
    cur.clear();
  };
  for (char c : body) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  if (exps.size() != nvars)
    throw std::runtime_error("multi-index " + text + " needs " + std::to_string(nvars) +
                             " entries");
  MultiIndex idx(nvars);
  for (std::size_t i = 0; i < nvars; ++i) idx[i] = exps[i];
  return idx;
}

namespace {

// "x3" -> 2; anything else nullopt
std::optional<std::size_t> x_name_index(const std::string& name, std::size_t nvars) {
  if (name.size() < 2 || name[0] != 'x') return std::nullopt;
  const std::string digits = name.substr(1);
  if (digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  const unsigned long i = std::stoul(digits);
  if (i < 1 || i > nvars) throw std::runtime_error("variable " + name + " out of range");
  return i - 1;
}

}  // namespace

std::vector<Rational> assignments_to_x(const std::map<std::string, Rational>& a,
                                       std::size_t nvars) {
  std::vector<Rational> x(nvars, Rational(0));
  std::vector<bool> seen(nvars, false);
  for (const auto& [name, value] : a) {
    if (name.rfind("eps", 0) == 0) continue;
    auto i = x_name_index(name, nvars);
    if (!i) throw std::runtime_error("unknown variable \"" + name + "\"");
    x[*i] = value;
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < nvars; ++i)
    if (!seen[i])
      throw std::runtime_error("point is missing x" + std::to_string(i + 1));
  return x;
}

std::vector<Rational> assignments_to_x_partial(const std::map<std::string, Rational>& a,
                                               std::size_t nvars) {
  std::vector<Rational> x(nvars, Rational(0));
  for (const auto& [name, value] : a) {
    if (name.rfind("eps", 0) == 0)
      throw std::runtime_error("moment values are not supported here: " + name);
    auto i = x_name_index(name, nvars);
    if (!i) throw std::runtime_error("unknown variable \"" + name + "\"");
    x[*i] = value;
  }
  return x;
}

PhasePoint assignments_to_point(const std::map<std::string, Rational>& a, std::size_t nvars,
                                double hbar) {
  PhasePoint p;
  p.hbar = hbar;
  for (const Rational& v : assignments_to_x(a, nvars)) p.x.push_back(v.get_d());
  for (const auto& [name, value] : a) {
    if (name.rfind("eps", 0) != 0) continue;
    MultiIndex idx = parse_multi_index(name.substr(3), nvars);
    if (idx.degree() < 2)
      throw std::runtime_error("moment " + name + " must have degree at least 2");
    p.eps[idx] = value.get_d();
  }
  return p;
}

std::vector<GridAxis> parse_grid(const std::string& text, std::size_t nvars) {
  std::vector<GridAxis> axes;
  for (const std::string& part : split_top_level(text)) {
    const std::string p = trimmed(part);
    if (p.empty()) continue;
    const std::size_t eq = p.find('=');
    if (eq == std::string::npos) throw std::runtime_error("grid axis \"" + p + "\" is not var=from:to:step");
    GridAxis axis;
    axis.var = trimmed(p.substr(0, eq));
    auto idx = x_name_index(axis.var, nvars);
    if (!idx) throw std::runtime_error("grid axis must be an expectation variable x1..x" +
                                       std::to_string(nvars));
    axis.var_index = *idx;
    const std::string range = p.substr(eq + 1);
    const std::size_t c1 = range.find(':');
    const std::size_t c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::runtime_error("grid axis \"" + p + "\" is not var=from:to:step");
    axis.from = rational_from_string(trimmed(range.substr(0, c1)));
    axis.to = rational_from_string(trimmed(range.substr(c1 + 1, c2 - c1 - 1)));
    axis.step = rational_from_string(trimmed(range.substr(c2 + 1)));
    if (axis.step <= 0) throw std::runtime_error("grid step must be positive");
    if (axis.to < axis.from) throw std::runtime_error("grid range is empty");
    axes.push_back(std::move(axis));
  }
  if (axes.empty() || axes.size() > 2)
    throw std::runtime_error("grid scans support one or two axes");
  return axes;
}

std::vector<std::vector<Rational>> grid_points(const std::vector<GridAxis>& axes,
                                               const std::vector<Rational>& base) {
  auto axis_values = [](const GridAxis& a) {
    std::vector<Rational> vals;
    for (Rational v = a.from; v <= a.to; v += a.step) vals.push_back(v);
    return vals;
  };
  std::vector<std::vector<Rational>> points;
  if (axes.size() == 1) {
    for (const Rational& v : axis_values(axes[0])) {
      std::vector<Rational> p = base;
      p[axes[0].var_index] = v;
      points.push_back(std::move(p));
    }
  } else {
    for (const Rational& v0 : axis_values(axes[0]))
      for (const Rational& v1 : axis_values(axes[1])) {
        std::vector<Rational> p = base;
        p[axes[0].var_index] = v0;
        p[axes[1].var_index] = v1;
        points.push_back(std::move(p));
      }
  }
  return points;
}

std::string validation_report_json(const LieAlgebraSpec& spec, const ValidationReport& report,
                                   std::optional<bool> central) {
  json doc;
  doc["valid"] = report.ok();
  if (central)
    doc["central"] = *central;
  else
    doc["central"] = nullptr;
  doc["name_problems"] = report.name_problems;

  json anti = json::array();
  for (const auto& v : report.antisymmetry)
    anti.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1},
                    {"value", rational_to_string(v.value)}});
  doc["antisymmetry_violations"] = std::move(anti);

  json jac = json::array();
  for (const auto& v : report.jacobi)
    jac.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"l", v.l + 1},
                   {"residual", rational_to_string(v.residual)}});
  doc["jacobi_violations"] = std::move(jac);

  doc["dimension"] = spec.dimension();
  return doc.dump(2);
}

std::string gradient_report_json(const GradientReport& report) {
  json doc;
  doc["exact"] = report.exact;

  json point = json::array();
  if (report.exact)
    for (const Rational& v : report.point_exact) point.push_back(rational_to_string(v));
  else
    for (double v : report.point_double) point.push_back(v);
  doc["point"] = std::move(point);

  doc["rank"] = report.rank;
  doc["rows"] = report.rows;
  doc["cols"] = report.cols;
  doc["deficient"] = report.deficient();

  json kernel = json::array();
  if (report.exact) {
    for (const auto& vec : report.kernel_exact) {
      json row = json::array();
      for (const Rational& v : vec) row.push_back(rational_to_string(v));
      kernel.push_back(std::move(row));
    }
  } else {
    for (const auto& vec : report.kernel_double) kernel.push_back(vec);
  }
  doc["kernel"] = std::move(kernel);

  json rows = json::array();
  for (const MultiIndex& idx : report.row_index) rows.push_back(idx.str());
  doc["row_order"] = std::move(rows);

  doc["dC_zero"] = report.dc_zero;
  doc["on_surface"] = report.on_surface;
  doc["C"] = report.c_value;
  if (report.exact) doc["C_exact"] = rational_to_string(report.c_value_exact);

  json invc = json::object();
  if (report.exact)
    for (const auto& [k, v] : report.invc_exact) invc[std::to_string(k + 1)] = rational_to_string(v);
  else
    for (const auto& [k, v] : report.invc_double) invc[std::to_string(k + 1)] = v;
  doc["invC_test"] = std::move(invc);

  if (report.has_full) {
    doc["hbar"] = report.hbar;
    doc["eps_rank_full"] = report.eps_rank_full;
    if (report.full_rank >= 0) doc["full_rank"] = report.full_rank;
  }
  return doc.dump();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const ConservationReport* conserved, const OracleTrajectory* oracle) {
  out << "t";
  for (const std::string& n : traj.names) out << "," << csv_quote(n);
  if (conserved)
    for (const std::string& n : conserved->names) out << "," << csv_quote("residual_" + n);
  if (oracle)
    for (std::size_t k = 0; k < oracle->x.size(); ++k) out << ",oracle_x" << (k + 1);
  out << "\n";

  for (std::size_t s = 0; s < traj.t.size(); ++s) {
    out << num(traj.t[s]);
    for (double v : traj.values[s]) out << "," << num(v);
    if (conserved)
      for (double v : conserved->residuals[s]) out << "," << num(v);
    if (oracle)
      for (std::size_t k = 0; k < oracle->x.size(); ++k)
        out << "," << (s < oracle->x[k].size() ? num(oracle->x[k][s]) : "");
    out << "\n";
  }
}

std::string trajectory_metadata_json(const std::string& algebra_label,
                                     const EffectiveSystem& sys, const Trajectory& traj,
                                     double t_end) {
  json doc;
  doc["algebra"] = algebra_label;
  doc["order"] = sys.order;
  doc["hbar"] = traj.hbar;
  doc["dt"] = traj.dt;
  doc["t_end"] = t_end;
  doc["variables"] = traj.names;
  doc["diverged"] = traj.diverged;
  doc["last_valid_time"] = traj.last_valid_time;
  doc["max_imag_residual"] = traj.max_imag_residual;
  return doc.dump(2);
}

}  // namespace liemoment
