#include "cperiod/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "cperiod/errors.hpp"

namespace cperiod {
namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + " must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ValidationError("unknown " + what + " field '" + k + "'");
}

double number(const json& j, const char* key) {
  if (!j.at(key).is_number()) throw ValidationError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::int64_t integer(const json& j, const char* key) {
  if (!j.at(key).is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
  return j.at(key).get<std::int64_t>();
}

std::string format(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

json to_json(const UnitComplex& c) {
  json j{{"re", c.value().real()}, {"im", c.value().imag()}};
  if (c.is_rational()) {
    j["arg_kind"] = "rational";
    j["p"] = c.p();
    j["q"] = c.q();
  } else {
    j["arg_kind"] = "irrational";
    j["phi"] = c.phi();
  }
  return j;
}

UnitComplex unit_complex_from_json(const json& j) {
  reject_unknown(j, {"re", "im", "arg_kind", "p", "q", "phi"}, "multiplier");
  const bool has_value = j.contains("re") || j.contains("im");
  const complex value = has_value ? complex(j.contains("re") ? number(j, "re") : 0.0, j.contains("im") ? number(j, "im") : 0.0)
                                  : complex(0.0, 0.0);
  if (has_value) require_unit_modulus(value);
  std::string kind = j.contains("arg_kind") ? j.at("arg_kind").get<std::string>() : "";
  if (kind.empty()) {
    if (j.contains("p") || j.contains("q")) kind = "rational";
    else if (j.contains("phi")) kind = "irrational";
  }
  if (kind == "rational") {
    if (j.contains("phi")) throw ValidationError("rational multipliers take p and q, not phi");
    if (!j.contains("p") || !j.contains("q")) throw ValidationError("rational multipliers need p and q");
    const auto c = UnitComplex::rational(integer(j, "p"), integer(j, "q"));
    return has_value ? UnitComplex::checked(value, UnitComplex::ArgKind::Rational, c.p(), c.q(), 0.0) : c;
  }
  if (kind == "irrational") {
    if (j.contains("p") || j.contains("q")) throw ValidationError("irrational multipliers take phi, not p and q");
    if (j.contains("phi")) {
      const double phi = number(j, "phi");
      return has_value ? UnitComplex::checked(value, UnitComplex::ArgKind::Irrational, 0, 1, phi)
                       : UnitComplex::irrational(phi);
    }
    if (!has_value) throw ValidationError("irrational multipliers need phi or re/im");
    return UnitComplex::from_angle(std::arg(value));
  }
  if (!kind.empty()) throw ValidationError("arg_kind must be 'rational' or 'irrational'");
  if (!has_value) throw ValidationError("multiplier needs re/im, p/q or phi");
  return UnitComplex::from_angle(std::arg(value));
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

json to_json(const Grid& g) { return {{"start", g.start()}, {"end", g.end()}, {"step", g.step()}}; }

Grid grid_from_json(const json& j) {
  reject_unknown(j, {"start", "end", "step"}, "grid");
  for (const char* k : {"start", "end", "step"})
    if (!j.contains(k)) throw ValidationError(std::string("grid needs '") + k + "'");
  return Grid(number(j, "start"), number(j, "end"), number(j, "step"));
}

json to_json(const Defect& d) {
  json j{{"value", d.value}, {"tail_slack", d.tail_slack}};
  j["certified"] = d.certified ? json(*d.certified) : json(nullptr);
  return j;
}

json to_json(const PeriodScanReport& r) {
  json accepted = json::array();
  for (const auto& [tau, d] : r.accepted) accepted.push_back({tau, d});
  json j{{"c", to_json(r.c)},           {"epsilon", r.epsilon}, {"tau_max", r.tau_max},
         {"tau_step", r.tau_step},      {"accepted", accepted}, {"max_gap", r.max_gap},
         {"grid", to_json(r.grid)}};
  if (r.stepanov_p) j["p"] = *r.stepanov_p;
  return j;
}

json to_json(const RecurrenceReport& r) { return {{"alphas", r.alphas}, {"defects", r.defects}}; }

json to_json(const OrbitApproximants& o) {
  return {{"phi", o.phi},
          {"target", {o.target.real(), o.target.imag()}},
          {"epsilon", o.epsilon},
          {"ls", o.ls},
          {"gaps_bound", o.gaps_bound},
          {"gaps_certified", o.gaps_certified}};
}

json to_json(const MeanEstimate& m) {
  json values = json::array();
  for (const auto& v : m.values) values.push_back(to_json(v));
  return {{"horizons", m.horizons},
          {"values", values},
          {"converged", m.converged},
          {"limit", m.limit ? to_json(*m.limit) : json(nullptr)},
          {"tol", m.tol}};
}

json to_json(const MeanZeroResult& m) {
  json curve = json::array();
  for (std::size_t i = 0; i < m.curve.size(); ++i)
    curve.push_back({{"T", m.curve[i].first}, {"mean", m.curve[i].second}, {"bound", m.bounds[i]}});
  return {{"passed", m.passed}, {"tau", m.tau}, {"order", m.order}, {"sup_norm", m.sup_norm}, {"curve", curve}};
}

json to_json(const std::vector<SpectralLine>& lines) {
  json out = json::array();
  for (const auto& l : lines)
    out.push_back({{"r", l.r}, {"coefficient", to_json(l.coefficient)}, {"modulus", l.coefficient.norm()}});
  return out;
}

json to_json(const ConvolutionValue& v) {
  return {{"value", to_json(v.value)}, {"truncation", v.truncation}, {"tail_bound", v.tail_bound}};
}

json solve_report(const Trajectory& u, double M1) {
  return {{"iterations", u.iterations},
          {"residual", u.residual},
          {"M1", M1},
          {"converged", u.converged},
          {"residual_history", u.residual_history},
          {"grid", to_json(u.grid)},
          {"first_interior", u.first_interior}};
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw ValidationError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ValidationError("cannot move output into '" + path + "'");
  }
}

void write_json(const std::string& path, const json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string curve_csv(const std::vector<std::pair<double, double>>& curve, const std::string& x, const std::string& y) {
  std::vector<std::vector<double>> rows;
  for (const auto& [a, b] : curve) rows.push_back({a, b});
  return csv({x, y}, rows);
}

std::string values_csv(const std::vector<double>& ts, const std::vector<Vector>& values) {
  std::vector<std::string> header{"t"};
  const Eigen::Index dim = values.empty() ? 1 : values.front().size();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const std::string suffix = dim == 1 ? "" : "_" + std::to_string(k + 1);
    header.push_back("re" + suffix);
    header.push_back("im" + suffix);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::vector<double> row{ts[i]};
    for (Eigen::Index k = 0; k < values[i].size(); ++k) {
      row.push_back(values[i][k].real());
      row.push_back(values[i][k].imag());
    }
    rows.push_back(std::move(row));
  }
  return csv(header, rows);
}

std::string trajectory_csv(const Trajectory& u) {
  std::vector<double> ts;
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < u.grid.size(); ++i) {
    ts.push_back(u.grid[i]);
    vs.push_back(u.at(i));
  }
  return values_csv(ts, vs);
}

}  // namespace cperiod
