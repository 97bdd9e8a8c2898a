// Copyright 2026 The RIG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rig/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace rig {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double to_number(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  parse_fail(std::string("expected a number for '") + what + "'");
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

Vec json_vec(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string("expected an array for '") + what + "'");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[i] = to_number(j[i], what);
  return v;
}

json mat_json(const Mat& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(vec_json(a.row(i)));
  return out;
}

Mat json_mat(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string("expected rows for '") + what + "'");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Mat a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vec row = json_vec(j[i], what);
    if (row.size() != cols) parse_fail(std::string("ragged matrix '") + what + "'");
    a.row(i) = row;
  }
  return a;
}

const json& member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing field '") + key + "'");
  return *it;
}

json parse_json(const std::string& document) {
  try {
    return json::parse(document);
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

const char* kind_name(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::kEuclidean: return "euclidean";
    case ManifoldKind::kSphere2: return "sphere2";
    case ManifoldKind::kHalfPlane2: return "half_plane2";
  }
  return "?";
}

json manifold_json(const ManifoldModel& m) {
  const NumericParams& p = m.params();
  return {{"kind", kind_name(m.kind())},
          {"dim", m.dim()},
          {"transport_steps", p.transport_steps},
          {"bvp_tol", number(p.bvp_tol)},
          {"transport_tol", number(p.transport_tol)},
          {"max_transport_steps", p.max_transport_steps}};
}

ManifoldModel json_manifold(const json& j) {
  if (!j.is_object()) parse_fail("manifold config must be an object");
  const std::string kind = member(j, "kind").get<std::string>();
  NumericParams params;
  if (j.contains("transport_steps")) params.transport_steps = j["transport_steps"].get<int>();
  if (j.contains("bvp_tol")) params.bvp_tol = to_number(j["bvp_tol"], "bvp_tol");
  if (j.contains("transport_tol")) params.transport_tol = to_number(j["transport_tol"], "transport_tol");
  if (j.contains("max_transport_steps")) params.max_transport_steps = j["max_transport_steps"].get<int>();
  if (params.transport_steps < 1 || params.max_transport_steps < params.transport_steps ||
      !(params.bvp_tol > 0) || !(params.transport_tol > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid numeric parameters in manifold config");
  }
  ManifoldModel m = parse_manifold_name(kind == "euclidean"
                                            ? "euclidean(" + std::to_string(member(j, "dim").get<int>()) + ")"
                                            : kind);
  if (kind != "euclidean" && j.contains("dim") && j["dim"].get<int>() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, kind + " has dimension 2");
  }
  return m.with_params(params);
}

json point_json(const Point& p) { return vec_json(p.coords); }

json frame_json(const OrthonormalFrame& f) {
  json out = json::array();
  for (const TangentVector& u : f.vectors) out.push_back(vec_json(u.components));
  return out;
}

OrthonormalFrame json_frame(const json& j, const Point& base) {
  OrthonormalFrame f{base, {}};
  for (const json& row : j) f.vectors.push_back({base, json_vec(row, "frame")});
  return f;
}

TransportMode parse_transport_mode(const std::string& s) {
  for (TransportMode m : {TransportMode::kAuto, TransportMode::kIdentity,
                          TransportMode::kClosedForm, TransportMode::kOde}) {
    if (s == transport_mode_name(m)) return m;
  }
  parse_fail("unknown transport mode '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<ManifoldKind> parse_kind_filter(const std::string& s) {
  if (s.empty() || s == "all") return std::nullopt;
  if (s == "euclidean") return ManifoldKind::kEuclidean;
  return parse_manifold_name(s).kind();
}

json trial_json(const TrialRecord& t) {
  json p = json::array(), o = json::array();
  for (double x : t.p) p.push_back(number(x));
  for (double x : t.o) o.push_back(number(x));
  return {{"index", t.index}, {"seed", t.seed},   {"manifold", t.manifold},
          {"field", t.field}, {"p", p},           {"o", o},
          {"residual", number(t.residual)}};
}

std::vector<double> json_doubles(const json& j, const char* what) {
  std::vector<double> out;
  for (const json& x : j) out.push_back(to_number(x, what));
  return out;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += format_double(xs[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (t == "inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  const auto res = std::from_chars(first, t.data() + t.size(), x);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    parse_fail("not a number: '" + text + "'");
  }
  return x;
}

Vec parse_number_list(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  Vec v(static_cast<Eigen::Index>(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i) {
    const std::string t = trim(parts[i]);
    if (t == "nan" || t == "inf" || t == "-inf") {
      parse_fail("non-finite coordinate in '" + text + "'");
    }
    v[static_cast<Eigen::Index>(i)] = parse_double(t);
  }
  return v;
}

ManifoldModel parse_manifold_name(const std::string& raw) {
  const std::string name = trim(raw);
  if (name == "sphere2" || name == "S2" || name == "sphere") return ManifoldModel::sphere2();
  if (name == "half_plane2" || name == "H2" || name == "half_plane" ||
      name == "halfplane2") {
    return ManifoldModel::half_plane2();
  }
  std::string digits;
  if (name.rfind("euclidean(", 0) == 0 && name.back() == ')') {
    digits = name.substr(10, name.size() - 11);
  } else if (name.rfind("euclidean:", 0) == 0) {
    digits = name.substr(10);
  } else if (name.size() > 1 && name[0] == 'R') {
    digits = name.substr(1);
  }
  int n = 0;
  const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
    parse_fail("unknown manifold '" + raw +
               "' (expected euclidean(n), sphere2 or half_plane2)");
  }
  return ManifoldModel::euclidean(n);
}

ManifoldModel manifold_from_json(const std::string& document) {
  return json_manifold(parse_json(document));
}

std::string manifold_to_json(const ManifoldModel& m) {
  return manifold_json(m).dump(2) + "\n";
}

std::string report_to_json(const AttributionReport& r) {
  json j;
  j["method"] = method_name(r.method);
  j["manifold"] = manifold_json(r.manifold);
  j["p"] = point_json(r.p);
  j["o"] = point_json(r.o);
  j["frame"] = frame_json(r.frame);
  j["attributions"] = vec_json(r.attributions);
  if (r.eigenvalues) j["eigenvalues"] = vec_json(*r.eigenvalues);
  if (r.alpha) j["alpha"] = mat_json(*r.alpha);
  j["value_p"] = number(r.value_p);
  j["value_o"] = number(r.value_o);
  j["completeness_residual"] = number(r.completeness_residual);
  j["error_term"] = number(r.error_term);
  const Diagnostics& d = r.diagnostics;
  j["diagnostics"] = {{"quadrature_nodes", d.quadrature_nodes},
                      {"geodesic_residual", number(d.geodesic_residual)},
                      {"transport_mode", d.transport_mode},
                      {"geodesic_length", number(d.geodesic_length)},
                      {"frame_defect", number(d.frame_defect)},
                      {"eigen_residual", number(d.eigen_residual)}};
  return j.dump(2) + "\n";
}

AttributionReport report_from_json(const std::string& document) {
  const json j = parse_json(document);
  AttributionReport r;
  try {
    r.method = parse_method(member(j, "method").get<std::string>());
    r.manifold = json_manifold(member(j, "manifold"));
    r.p = {json_vec(member(j, "p"), "p")};
    r.o = {json_vec(member(j, "o"), "o")};
    r.frame = json_frame(member(j, "frame"), r.p);
    r.attributions = json_vec(member(j, "attributions"), "attributions");
    if (j.contains("eigenvalues")) r.eigenvalues = json_vec(j["eigenvalues"], "eigenvalues");
    if (j.contains("alpha")) r.alpha = json_mat(j["alpha"], "alpha");
    r.value_p = to_number(member(j, "value_p"), "value_p");
    r.value_o = to_number(member(j, "value_o"), "value_o");
    r.completeness_residual =
        to_number(member(j, "completeness_residual"), "completeness_residual");
    r.error_term = to_number(member(j, "error_term"), "error_term");
    const json& d = member(j, "diagnostics");
    r.diagnostics.quadrature_nodes = member(d, "quadrature_nodes").get<int>();
    r.diagnostics.geodesic_residual = to_number(member(d, "geodesic_residual"), "geodesic_residual");
    r.diagnostics.transport_mode = member(d, "transport_mode").get<std::string>();
    r.diagnostics.geodesic_length = to_number(member(d, "geodesic_length"), "geodesic_length");
    r.diagnostics.frame_defect = to_number(member(d, "frame_defect"), "frame_defect");
    r.diagnostics.eigen_residual = to_number(member(d, "eigen_residual"), "eigen_residual");
  } catch (const json::exception& e) {
    parse_fail(std::string("bad report: ") + e.what());
  }
  return r;
}

std::string report_to_csv(const AttributionReport& r) {
  std::ostringstream out;
  out << "field,i,j,value\n";
  auto row = [&](const std::string& field, const std::string& i,
                 const std::string& j, const std::string& value) {
    out << field << ',' << i << ',' << j << ',' << value << '\n';
  };
  auto scalar = [&](const std::string& field, double x) { row(field, "", "", format_double(x)); };
  auto vector = [&](const std::string& field, const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) row(field, std::to_string(i), "", format_double(v[i]));
  };
  const NumericParams& params = r.manifold.params();
  row("method", "", "", method_name(r.method));
  row("manifold", "", "", r.manifold.name());
  row("transport_steps", "", "", std::to_string(params.transport_steps));
  scalar("bvp_tol", params.bvp_tol);
  scalar("transport_tol", params.transport_tol);
  row("max_transport_steps", "", "", std::to_string(params.max_transport_steps));
  vector("p", r.p.coords);
  vector("o", r.o.coords);
  for (size_t i = 0; i < r.frame.vectors.size(); ++i) {
    const Vec& u = r.frame.vectors[i].components;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      row("frame", std::to_string(i), std::to_string(k), format_double(u[k]));
    }
  }
  vector("attribution", r.attributions);
  if (r.eigenvalues) vector("eigenvalue", *r.eigenvalues);
  if (r.alpha) {
    for (Eigen::Index i = 0; i < r.alpha->rows(); ++i)
      for (Eigen::Index k = 0; k < r.alpha->cols(); ++k)
        row("alpha", std::to_string(i), std::to_string(k), format_double((*r.alpha)(i, k)));
  }
  scalar("value_p", r.value_p);
  scalar("value_o", r.value_o);
  scalar("completeness_residual", r.completeness_residual);
  scalar("error_term", r.error_term);
  const Diagnostics& d = r.diagnostics;
  row("quadrature_nodes", "", "", std::to_string(d.quadrature_nodes));
  scalar("geodesic_residual", d.geodesic_residual);
  row("transport_mode", "", "", d.transport_mode);
  scalar("geodesic_length", d.geodesic_length);
  scalar("frame_defect", d.frame_defect);
  scalar("eigen_residual", d.eigen_residual);
  return out.str();
}

std::string report_to_direction_csv(const AttributionReport& r) {
  std::ostringstream out;
  const Eigen::Index d = r.frame.vectors.empty() ? 0 : r.frame.vectors[0].components.size();
  out << "index,attribution";
  if (r.eigenvalues) out << ",eigenvalue";
  for (Eigen::Index k = 0; k < d; ++k) out << ",frame_" << k;
  out << '\n';
  for (size_t i = 0; i < r.frame.vectors.size(); ++i) {
    out << i << ',' << format_double(r.attributions[static_cast<Eigen::Index>(i)]);
    if (r.eigenvalues) out << ',' << format_double((*r.eigenvalues)[static_cast<Eigen::Index>(i)]);
    const Vec& u = r.frame.vectors[i].components;
    for (Eigen::Index k = 0; k < u.size(); ++k) out << ',' << format_double(u[k]);
    out << '\n';
  }
  return out.str();
}

AttributionReport report_from_csv(const std::string& document) {
  std::istringstream in(document);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "field,i,j,value") {
    parse_fail("report CSV must start with 'field,i,j,value'");
  }
  std::map<std::string, std::string> scalars;
  std::map<std::string, std::map<int, double>> vectors;
  std::map<std::string, std::map<std::pair<int, int>, double>> matrices;
  auto index = [](const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 0) {
      parse_fail("bad CSV index '" + s + "'");
    }
    return v;
  };
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(trim(line), ',');
    if (cells.size() != 4) parse_fail("report CSV rows need 4 cells: '" + line + "'");
    const std::string& field = cells[0];
    if (cells[1].empty()) {
      scalars[field] = cells[3];
    } else if (cells[2].empty()) {
      vectors[field][index(cells[1])] = parse_double(cells[3]);
    } else {
      matrices[field][{index(cells[1]), index(cells[2])}] = parse_double(cells[3]);
    }
  }
  auto get = [&](const char* key) -> const std::string& {
    auto it = scalars.find(key);
    if (it == scalars.end()) parse_fail(std::string("report CSV lacks '") + key + "'");
    return it->second;
  };
  auto vec = [&](const char* key) {
    const auto& entries = vectors[key];
    Vec v(static_cast<Eigen::Index>(entries.size()));
    int expect = 0;
    for (const auto& [i, x] : entries) {
      if (i != expect++) parse_fail(std::string("gap in CSV vector '") + key + "'");
      v[i] = x;
    }
    return v;
  };
  auto mat = [&](const char* key) {
    const auto& entries = matrices[key];
    int rows = 0, cols = 0;
    for (const auto& [ij, x] : entries) {
      rows = std::max(rows, ij.first + 1);
      cols = std::max(cols, ij.second + 1);
    }
    if (static_cast<size_t>(rows) * cols != entries.size()) {
      parse_fail(std::string("incomplete CSV matrix '") + key + "'");
    }
    Mat a(rows, cols);
    for (const auto& [ij, x] : entries) a(ij.first, ij.second) = x;
    return a;
  };
  AttributionReport r;
  r.method = parse_method(get("method"));
  NumericParams params;
  params.transport_steps = index(get("transport_steps"));
  params.bvp_tol = parse_double(get("bvp_tol"));
  params.transport_tol = parse_double(get("transport_tol"));
  params.max_transport_steps = index(get("max_transport_steps"));
  r.manifold = parse_manifold_name(get("manifold")).with_params(params);
  r.p = {vec("p")};
  r.o = {vec("o")};
  const Mat frame = mat("frame");
  r.frame.base = r.p;
  for (Eigen::Index i = 0; i < frame.rows(); ++i) {
    r.frame.vectors.push_back({r.p, frame.row(i).transpose()});
  }
  r.attributions = vec("attribution");
  if (vectors.count("eigenvalue")) r.eigenvalues = vec("eigenvalue");
  if (matrices.count("alpha")) r.alpha = mat("alpha");
  r.value_p = parse_double(get("value_p"));
  r.value_o = parse_double(get("value_o"));
  r.completeness_residual = parse_double(get("completeness_residual"));
  r.error_term = parse_double(get("error_term"));
  r.diagnostics.quadrature_nodes = index(get("quadrature_nodes"));
  r.diagnostics.geodesic_residual = parse_double(get("geodesic_residual"));
  r.diagnostics.transport_mode = get("transport_mode");
  parse_transport_mode(r.diagnostics.transport_mode);
  r.diagnostics.geodesic_length = parse_double(get("geodesic_length"));
  r.diagnostics.frame_defect = parse_double(get("frame_defect"));
  r.diagnostics.eigen_residual = parse_double(get("eigen_residual"));
  return r;
}

HarnessConfig harness_config_from_json(const std::string& document) {
  const json j = parse_json(document);
  if (!j.is_object()) parse_fail("harness config must be an object");
  HarnessConfig config;
  try {
    const std::uint64_t seed = j.value("seed", kDefaultSeed);
    config.threads = j.value("threads", 1);
    if (config.threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1");
    for (const json& c : j.value("checks", json::array())) {
      AxiomCheckSpec spec;
      spec.axiom = parse_axiom(member(c, "axiom").get<std::string>());
      spec.manifold = parse_kind_filter(c.value("manifold", std::string()));
      spec.tolerance = c.contains("tolerance")
                           ? to_number(c["tolerance"], "tolerance")
                           : default_tolerance(spec.axiom, spec.manifold);
      spec.trials = c.value("trials", 20);
      spec.seed = c.value("seed", seed);
      spec.validate();
      config.checks.push_back(spec);
    }
  } catch (const json::exception& e) {
    parse_fail(std::string("bad harness config: ") + e.what());
  }
  return config;
}

std::string harness_config_to_json(const HarnessConfig& config) {
  json checks = json::array();
  for (const AxiomCheckSpec& s : config.checks) {
    json c = {{"axiom", axiom_name(s.axiom)},
              {"tolerance", number(s.tolerance)},
              {"trials", s.trials},
              {"seed", s.seed}};
    if (s.manifold) c["manifold"] = kind_name(*s.manifold);
    checks.push_back(c);
  }
  return json{{"threads", config.threads}, {"checks", checks}}.dump(2) + "\n";
}

std::string harness_report_to_json(const std::vector<AxiomReport>& reports) {
  json checks = json::array();
  bool all = !reports.empty();
  for (const AxiomReport& r : reports) {
    json trials = json::array();
    for (const TrialRecord& t : r.trials) trials.push_back(trial_json(t));
    json c = {{"axiom", axiom_name(r.spec.axiom)},
              {"manifold", r.spec.manifold ? kind_name(*r.spec.manifold) : "all"},
              {"tolerance", number(r.spec.tolerance)},
              {"configured_trials", r.spec.trials},
              {"completed_trials", r.trials.size()},
              {"seed", r.spec.seed},
              {"aborted", r.aborted},
              {"max_residual", number(r.max_residual)},
              {"verdict", r.pass ? "pass" : "fail"},
              {"notes", r.notes},
              {"trials", trials}};
    checks.push_back(c);
    all = all && r.pass;
  }
  return json{{"verdict", all ? "pass" : "fail"}, {"checks", checks}}.dump(2) + "\n";
}

std::vector<AxiomReport> harness_report_from_json(const std::string& document) {
  const json j = parse_json(document);
  std::vector<AxiomReport> out;
  try {
    for (const json& c : member(j, "checks")) {
      AxiomReport r;
      r.spec.axiom = parse_axiom(member(c, "axiom").get<std::string>());
      r.spec.manifold = parse_kind_filter(c.value("manifold", std::string()));
      r.spec.tolerance = to_number(member(c, "tolerance"), "tolerance");
      r.spec.trials = member(c, "configured_trials").get<int>();
      r.spec.seed = member(c, "seed").get<std::uint64_t>();
      r.aborted = member(c, "aborted").get<int>();
      r.max_residual = to_number(member(c, "max_residual"), "max_residual");
      r.pass = member(c, "verdict").get<std::string>() == "pass";
      r.notes = c.value("notes", std::string());
      for (const json& t : member(c, "trials")) {
        TrialRecord rec;
        rec.index = member(t, "index").get<int>();
        rec.seed = member(t, "seed").get<std::uint64_t>();
        rec.manifold = member(t, "manifold").get<std::string>();
        rec.field = member(t, "field").get<std::string>();
        rec.p = json_doubles(member(t, "p"), "p");
        rec.o = json_doubles(member(t, "o"), "o");
        rec.residual = to_number(member(t, "residual"), "residual");
        r.trials.push_back(std::move(rec));
      }
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    parse_fail(std::string("bad harness report: ") + e.what());
  }
  return out;
}

std::string axiom_report_to_csv(const AxiomReport& report) {
  std::ostringstream out;
  out << "index,seed,manifold,field,p,o,residual\n";
  for (const TrialRecord& t : report.trials) {
    std::string field = t.field;
    for (char& c : field) {
      if (c == ',' || c == '"') c = ';';
    }
    out << t.index << ',' << t.seed << ',' << t.manifold << ',' << field << ','
        << join_numbers(t.p) << ',' << join_numbers(t.o) << ','
        << format_double(t.residual) << '\n';
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot read '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kInvalidArgument, "cannot write '" + tmp.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kInvalidArgument, "write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::kInvalidArgument,
                "cannot move output into '" + path.string() + "': " + ec.message());
  }
}

}  // namespace rig
