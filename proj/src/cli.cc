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

#include "rig/cli.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rig/harness.h"
#include "rig/io.h"
#include "rig/mlp.h"
#include "rig/scalar_field.h"

namespace rig {
namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

Point parse_point(const ManifoldModel& m, const std::string& text,
                  const char* flag) {
  if (text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
  }
  // Sphere inputs a little off the unit sphere are pulled onto it.
  return make_point(m, parse_number_list(text), 1e-6);
}

ScalarField build_field(const ManifoldModel& m, const JobConfig& job) {
  std::string spec = job.field;
  if (spec.empty()) spec = job.weights.empty() ? "" : "mlp";
  if (spec.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--field or --weights is required");
  }
  auto require = [&](ManifoldKind kind, const char* what) {
    if (m.kind() != kind) {
      throw Error(ErrorCode::kWrongManifold,
                  std::string("field '") + what + "' is not defined on " + m.name());
    }
  };
  const std::vector<std::string> parts = split_on(spec, ':');
  const std::string& id = parts[0];
  if (id == "height" && parts.size() == 1) {
    require(ManifoldKind::kSphere2, "height");
    return ScalarField::sphere_height();
  }
  if (id == "log_y" && parts.size() == 1) {
    require(ManifoldKind::kHalfPlane2, "log_y");
    return ScalarField::log_y();
  }
  if (id == "constant" && parts.size() == 2) {
    return ScalarField::constant(m, parse_double(parts[1]));
  }
  if (id == "coordinate" && parts.size() == 2) {
    const int k = static_cast<int>(parse_double(parts[1]));
    if (k < 0 || k >= m.coord_dim() || k != parse_double(parts[1])) {
      throw Error(ErrorCode::kDimensionMismatch, "coordinate index out of range");
    }
    return ScalarField::coordinate(m, k);
  }
  if (id == "gaussian" && parts.size() == 3) {
    const Point center = make_point(m, parse_number_list(parts[2]), 1e-6);
    return ScalarField::gaussian_bump(m, center, parse_double(parts[1]));
  }
  if (id == "mlp" && parts.size() == 1) {
    if (job.weights.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "field 'mlp' needs --weights");
    }
    return ScalarField::mlp(m, load_mlp_file(job.weights));
  }
  if (id == "random-mlp" && parts.size() == 1) {
    std::mt19937_64 rng(job.seed);
    return ScalarField::mlp(m, random_mlp(m.coord_dim(), {8, 8}, rng));
  }
  throw Error(ErrorCode::kParseError, "unknown field '" + spec + "'");
}

Quadrature build_quadrature(const JobConfig& job) {
  Quadrature q;
  if (job.quadrature_rule == "gauss-legendre" || job.quadrature_rule == "gl") {
    q.rule = QuadratureRule::kGaussLegendre;
  } else if (job.quadrature_rule == "trapezoid") {
    q.rule = QuadratureRule::kTrapezoid;
  } else {
    throw Error(ErrorCode::kParseError,
                "unknown quadrature rule '" + job.quadrature_rule + "'");
  }
  if (job.quadrature_nodes != 0) {
    q.nodes = job.quadrature_nodes;
    q.max_nodes = std::max(q.max_nodes, q.nodes);
  }
  if (job.quadrature_max_nodes != 0) q.max_nodes = job.quadrature_max_nodes;
  q.refine = !job.fixed_quadrature;
  q.validate();
  return q;
}

ManifoldModel build_manifold(const JobConfig& job) {
  if (job.manifold.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--manifold is required");
  }
  ManifoldModel m = parse_manifold_name(job.manifold);
  if (job.transport_steps != 0) {
    if (job.transport_steps < 1) {
      throw Error(ErrorCode::kInvalidArgument, "--transport-steps must be positive");
    }
    NumericParams params = m.params();
    params.transport_steps = job.transport_steps;
    params.max_transport_steps =
        std::max(params.max_transport_steps, job.transport_steps);
    m = m.with_params(params);
  }
  return m;
}

OrthonormalFrame explicit_frame(const ManifoldModel& m, const Point& p,
                                const std::string& text) {
  if (text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--frame explicit needs --frame-vectors");
  }
  OrthonormalFrame f{p, {}};
  for (const std::string& v : split_on(text, ';')) {
    f.vectors.push_back({p, parse_number_list(v)});
  }
  for (const TangentVector& u : f.vectors) {
    if (u.components.size() != m.coord_dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "frame vector has the wrong length");
    }
  }
  return f;
}

struct BuiltJob {
  ManifoldModel m = ManifoldModel::euclidean(1);
  ScalarField field = ScalarField::constant(ManifoldModel::euclidean(1), 0.0);
  Point p;
  Point o;
  Quadrature q;
};

BuiltJob build(const JobConfig& job) {
  BuiltJob b;
  b.m = build_manifold(job);
  b.field = build_field(b.m, job);
  b.p = parse_point(b.m, job.p, "--p");
  b.o = parse_point(b.m, job.o, "--o");
  b.q = build_quadrature(job);
  if (job.frame != "default" && job.frame != "eigen" && job.frame != "explicit") {
    throw Error(ErrorCode::kParseError,
                "--frame must be default, eigen or explicit, got '" + job.frame + "'");
  }
  return b;
}

OrthonormalFrame base_frame(const JobConfig& job, const BuiltJob& b) {
  if (job.frame == "explicit") return explicit_frame(b.m, b.p, job.frame_vectors);
  return orthonormal_frame(b.m, b.p);
}

std::string render(const AttributionReport& r, const std::string& format) {
  if (format == "csv") return report_to_direction_csv(r);
  if (format == "json" || format == "json-like") return report_to_json(r);
  throw Error(ErrorCode::kParseError, "--format must be json-like or csv");
}

void write_report(const AttributionReport& r, const std::string& stem) {
  write_file_atomic(stem + ".json", report_to_json(r));
  write_file_atomic(stem + ".csv", report_to_direction_csv(r));
  write_file_atomic(stem + ".full.csv", report_to_csv(r));
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json" && format != "json-like") {
    throw Error(ErrorCode::kParseError, "--format must be json-like or csv");
  }
}

void add_job_flags(CLI::App* cmd, JobConfig& job, std::string& seed_text) {
  cmd->add_option("--manifold", job.manifold,
                  "euclidean(n), sphere2 or half_plane2");
  cmd->add_option("--field", job.field,
                  "height, log_y, constant:C, coordinate:K, "
                  "gaussian:SIGMA:C1,C2,..., random-mlp or mlp");
  cmd->add_option("--weights", job.weights, "MLP weights document");
  cmd->add_option("--p", job.p, "explained point, comma separated");
  cmd->add_option("--o", job.o, "base-point, comma separated");
  cmd->add_option("--frame", job.frame, "default, eigen or explicit");
  cmd->add_option("--frame-vectors", job.frame_vectors,
                  "explicit frame vectors \"a,b;c,d\"");
  cmd->add_option("--quadrature-nodes", job.quadrature_nodes,
                  "initial quadrature node count");
  cmd->add_option("--quadrature-max-nodes", job.quadrature_max_nodes,
                  "give up refining past this many nodes");
  cmd->add_option("--quadrature-rule", job.quadrature_rule,
                  "gauss-legendre or trapezoid");
  cmd->add_flag("--fixed-quadrature", job.fixed_quadrature,
                "disable node doubling");
  cmd->add_option("--transport-steps", job.transport_steps,
                  "initial RK4 steps for ODE transport");
  cmd->add_option("--seed", seed_text, "seed for random fields");
  cmd->add_option("--method", job.method, "RIG, EigenRIG or IG");
  cmd->add_option("--out", job.out, "write <stem>.json, <stem>.csv and <stem>.full.csv");
  cmd->add_option("--format", job.format, "stdout format: json-like or csv");
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty()) return kDefaultSeed;
  try {
    size_t used = 0;
    const unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "bad --seed '" + text + "'");
  }
}

int cmd_attribute(const JobConfig& job, std::ostream& out) {
  check_format(job.format);
  const AttributionReport r = run_attribution_job(job);
  if (!job.out.empty()) write_report(r, job.out);
  out << render(r, job.format);
  return kExitOk;
}

std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

int cmd_compare(JobConfig job, std::ostream& out) {
  check_format(job.format);
  const BuiltJob b = build(job);
  std::ostringstream table;
  const bool csv = job.format == "csv";
  auto row = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (csv) {
        table << (i ? "," : "") << cells[i];
      } else {
        table << pad(cells[i], 26);
      }
    }
    table << '\n';
  };
  std::string method = job.method;
  if (method == "RIG" && b.m.kind() == ManifoldKind::kEuclidean) method = "IG";
  if (method == "IG") {
    const OrthonormalFrame frame = base_frame(job, b);
    const AttributionReport with_ig = ig(b.field, b.p, b.o, frame, b.q);
    const AttributionReport with_rig = rig(b.field, b.p, b.o, frame, b.q);
    row({"direction", "IG", "RIG", "gap"});
    double gap = 0.0;
    for (Eigen::Index i = 0; i < with_ig.attributions.size(); ++i) {
      const double d = std::abs(with_ig.attributions[i] - with_rig.attributions[i]);
      gap = std::max(gap, d);
      row({std::to_string(i), format_double(with_ig.attributions[i]),
           format_double(with_rig.attributions[i]), format_double(d)});
    }
    out << table.str();
    if (!job.out.empty()) write_file_atomic(job.out + ".csv", table.str());
    out << "max gap " << format_double(gap) << '\n';
    return kExitOk;
  }
  if (method != "RIG" && method != "EigenRIG") {
    throw Error(ErrorCode::kParseError, "unknown --method '" + job.method + "'");
  }
  const AttributionReport def = rig(b.field, b.p, b.o, base_frame(job, b), b.q);
  const AttributionReport eig = eigen_rig(b.field, b.p, b.o, b.q);
  row({"direction", "frame_default", "frame_eigen"});
  for (Eigen::Index i = 0; i < def.attributions.size(); ++i) {
    row({std::to_string(i), format_double(def.attributions[i]),
         format_double(eig.attributions[i])});
  }
  out << table.str();
  if (!job.out.empty()) write_file_atomic(job.out + ".csv", table.str());
  out << "trace default " << format_double(def.attributions.sum()) << '\n'
      << "trace eigen " << format_double(eig.attributions.sum()) << '\n'
      << "F(p)-F(o) " << format_double(def.value_p - def.value_o) << '\n';
  return kExitOk;
}

struct VerifyOptions {
  std::string config;
  double tolerance = 0.0;
  int trials = 0;
  int threads = 1;
  std::string seed;
  std::string out;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  HarnessConfig config;
  if (opt.config.empty()) {
    config.checks = default_suite(parse_seed(opt.seed));
  } else {
    config = harness_config_from_json(read_file(opt.config));
    if (!opt.seed.empty()) {
      for (AxiomCheckSpec& s : config.checks) s.seed = parse_seed(opt.seed);
    }
  }
  if (config.checks.empty()) {
    err << "error: no checks configured\n";
    return kExitFailure;
  }
  for (AxiomCheckSpec& s : config.checks) {
    if (opt.tolerance != 0.0) s.tolerance = opt.tolerance;
    if (opt.trials != 0) s.trials = opt.trials;
    s.validate();
  }
  const std::vector<AxiomReport> reports =
      run_suite(config.checks, std::max(opt.threads, config.threads));
  int failures = 0;
  for (const AxiomReport& r : reports) {
    std::string where = "all";
    if (r.spec.manifold) {
      where = *r.spec.manifold == ManifoldKind::kEuclidean ? "euclidean"
              : *r.spec.manifold == ManifoldKind::kSphere2 ? "sphere2"
                                                           : "half_plane2";
    }
    out << (r.pass ? "PASS " : "FAIL ") << pad(axiom_name(r.spec.axiom), 21)
        << pad(where, 12)
        << "max_residual=" << format_double(r.max_residual)
        << " tolerance=" << format_double(r.spec.tolerance)
        << " trials=" << r.trials.size() << "/" << r.spec.trials
        << " aborted=" << r.aborted << '\n';
    if (!r.pass) ++failures;
  }
  if (!opt.out.empty()) {
    write_file_atomic(opt.out + ".json", harness_report_to_json(reports));
    for (size_t i = 0; i < reports.size(); ++i) {
      write_file_atomic(opt.out + ".check" + std::to_string(i) + "." +
                            axiom_name(reports[i].spec.axiom) + ".csv",
                        axiom_report_to_csv(reports[i]));
    }
  }
  if (failures) {
    out << failures << " of " << reports.size() << " checks failed:";
    for (const AxiomReport& r : reports) {
      if (!r.pass) out << ' ' << axiom_name(r.spec.axiom);
    }
    out << '\n';
    return kExitFailure;
  }
  out << "all " << reports.size() << " checks passed\n";
  return kExitOk;
}

JobConfig job_from_json(const nlohmann::json& j) {
  JobConfig job;
  auto str = [&](const char* key, std::string& into) {
    if (!j.contains(key)) return;
    const nlohmann::json& v = j[key];
    if (v.is_string()) {
      into = v.get<std::string>();
    } else if (v.is_array()) {
      into.clear();
      for (size_t i = 0; i < v.size(); ++i) {
        into += (i ? "," : "") + format_double(v[i].get<double>());
      }
    } else {
      throw Error(ErrorCode::kParseError, std::string("bad batch field '") + key + "'");
    }
  };
  str("manifold", job.manifold);
  str("field", job.field);
  str("weights", job.weights);
  str("p", job.p);
  str("o", job.o);
  str("frame", job.frame);
  str("frame_vectors", job.frame_vectors);
  str("quadrature_rule", job.quadrature_rule);
  str("method", job.method);
  str("out", job.out);
  job.quadrature_nodes = j.value("quadrature_nodes", 0);
  job.quadrature_max_nodes = j.value("quadrature_max_nodes", 0);
  job.fixed_quadrature = j.value("fixed_quadrature", false);
  job.transport_steps = j.value("transport_steps", 0);
  job.seed = j.value("seed", kDefaultSeed);
  return job;
}

int cmd_batch(const std::string& path, int threads, std::ostream& out,
              std::ostream& err) {
  std::vector<JobConfig> jobs;
  try {
    const nlohmann::json doc = nlohmann::json::parse(read_file(path));
    for (const nlohmann::json& j : doc.at("jobs")) jobs.push_back(job_from_json(j));
    if (threads == 0) threads = doc.value("threads", 1);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("bad batch file: ") + e.what());
  }
  if (jobs.empty()) {
    err << "error: no jobs configured\n";
    return kExitFailure;
  }
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].out.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "batch job " + std::to_string(i) + " has no \"out\" stem");
    }
  }
  std::vector<int> codes(jobs.size(), kExitOk);
  std::vector<std::string> messages(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        write_report(run_attribution_job(jobs[i]), jobs[i].out);
      } catch (const Error& e) {
        codes[i] = exit_code_for(e.code());
        messages[i] = e.what();
      } catch (const std::exception& e) {
        codes[i] = kExitFailure;
        messages[i] = e.what();
      }
    }
  };
  const int n = std::clamp(threads, 1, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  int code = kExitOk;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (codes[i] == kExitOk) {
      out << "job " << i << " ok " << jobs[i].out << '\n';
    } else {
      err << "job " << i << " error: " << messages[i] << '\n';
      if (code == kExitOk) code = codes[i];
    }
  }
  return code;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCutLocusAmbiguity: return kExitCutLocus;
    case ErrorCode::kQuadratureNotConverged: return kExitQuadrature;
    default: return kExitFailure;
  }
}

AttributionReport run_attribution_job(const JobConfig& job) {
  const BuiltJob b = build(job);
  if (job.method == "IG") {
    return ig(b.field, b.p, b.o, base_frame(job, b), b.q);
  }
  if (job.method == "EigenRIG" || job.frame == "eigen") {
    if (job.method != "RIG" && job.method != "EigenRIG") {
      throw Error(ErrorCode::kParseError, "unknown --method '" + job.method + "'");
    }
    return eigen_rig(b.field, b.p, b.o, b.q);
  }
  if (job.method != "RIG") {
    throw Error(ErrorCode::kParseError, "unknown --method '" + job.method + "'");
  }
  return rig(b.field, b.p, b.o, base_frame(job, b), b.q);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Riemannian path attributions for smooth fields on manifolds", "rig"};
  app.footer(
      "Paths run from p to the base-point o, so attributions sum to F(p) - F(o).\n"
      "Exit codes: 0 ok, 1 bad input or failed check, 2 cut locus, 3 quadrature\n"
      "did not converge.");
  app.require_subcommand(1);

  JobConfig attribute_job;
  std::string attribute_seed;
  CLI::App* attribute = app.add_subcommand("attribute", "attribute F(p) against a base-point");
  add_job_flags(attribute, attribute_job, attribute_seed);

  JobConfig compare_job;
  std::string compare_seed;
  CLI::App* compare =
      app.add_subcommand("compare", "IG vs RIG (Euclidean) or RIG across frames");
  add_job_flags(compare, compare_job, compare_seed);

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "run the axiom checks");
  verify->add_option("--config", verify_opt.config, "harness config document");
  verify->add_option("--tolerance", verify_opt.tolerance, "override every tolerance");
  verify->add_option("--trials", verify_opt.trials, "override every trial count");
  verify->add_option("--threads", verify_opt.threads, "checks run concurrently");
  verify->add_option("--seed", verify_opt.seed, "override every seed");
  verify->add_option("--out", verify_opt.out,
                     "write <stem>.json and per-check <stem>.checkN.<axiom>.csv");

  std::string batch_path;
  int batch_threads = 0;
  CLI::App* batch = app.add_subcommand("batch", "run a file of attribution jobs");
  batch->add_option("--config", batch_path, "batch document")->required();
  batch->add_option("--threads", batch_threads, "jobs run concurrently");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  try {
    if (attribute->parsed()) {
      attribute_job.seed = parse_seed(attribute_seed);
      return cmd_attribute(attribute_job, out);
    }
    if (compare->parsed()) {
      compare_job.seed = parse_seed(compare_seed);
      return cmd_compare(compare_job, out);
    }
    if (verify->parsed()) return cmd_verify(verify_opt, out, err);
    if (batch->parsed()) return cmd_batch(batch_path, batch_threads, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace rig
