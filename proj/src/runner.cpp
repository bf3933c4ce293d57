#include "specurve/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "specurve/emit.hpp"
#include "specurve/error.hpp"
#include "specurve/symmetry.hpp"

namespace specurve {

namespace {

json coord_json(LogCoord c) { return {{"a", complex_json(c.a)}, {"b", complex_json(c.b)}}; }

json sample_json(const SpectrumSample& s) {
  return {{"a", complex_json(s.coord.a)},
          {"b", complex_json(s.coord.b)},
          {"sigma_min", s.sigma_min},
          {"kernel_dim", s.kernel_dim},
          {"branch_tag", std::string(to_string(s.branch_tag))}};
}

json samples_json(const std::vector<SpectrumSample>& samples) {
  json out = json::array();
  for (const SpectrumSample& s : samples) out.push_back(sample_json(s));
  return out;
}

std::string samples_csv(const std::vector<SpectrumSample>& samples) {
  std::ostringstream os;
  write_csv(os, samples);
  return os.str();
}

template <class T>
const T& require(const std::optional<T>& block, const char* name) {
  if (!block) throw Error(ErrorCode::invalid_input, std::string("config has no '") + name + "' block");
  return *block;
}

GraphOptions graph_options(const JobConfig& c) {
  GraphOptions g;
  g.eps = c.eps;
  g.ker_tol = c.tol.ker_tol;
  return g;
}

ClassifyOptions classify_options(const JobConfig& c) {
  ClassifyOptions o;
  o.tol = c.tol;
  o.quad.cond_max = c.tol.cond_max;
  return o;
}

json report_json(const DoublePointReport& r) {
  json zeros = json::array();
  for (cplx z : r.discriminant_zeros) zeros.push_back(complex_json(z));
  json out = {{"c_second", complex_json(r.c_second)},
              {"c_first", complex_json(r.c_first)},
              {"verdict", std::string(to_string(r.verdict))},
              {"window", {{"x_radius", r.window.x_radius}, {"lambda_radius", r.window.lambda_radius}}},
              {"rung", r.rung},
              {"winding", r.winding},
              {"discriminant_zeros", zeros}};
  if (r.node_location) {
    out["node_location"] = coord_json(*r.node_location);
    out["node_sigma2"] = r.node_sigma2;
    out["multiplier_is_real"] = r.multiplier_is_real;
  }
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json census_json(const GenusReport& g) {
  json reports = json::array(), failures = json::array();
  for (const DoublePointReport& r : g.reports) reports.push_back(report_json(r));
  for (const ClassifyFailure& f : g.failures) {
    failures.push_back({{"c_second", complex_json(f.c_second)},
                        {"c_first", complex_json(f.c_first)},
                        {"code", std::string(to_string(f.code))},
                        {"message", f.message}});
  }
  return {{"handles", g.handles},
          {"nodes", g.nodes},
          {"indeterminate", g.indeterminate},
          {"failed", static_cast<int>(g.failures.size())},
          {"reports", reports},
          {"failures", failures}};
}

json chart_json(const EndChart& chart) {
  json fit = json::array();
  for (cplx c : chart.fit) fit.push_back(complex_json(c));
  return {{"end", std::string(to_string(chart.end))}, {"fit", fit}, {"residual", chart.residual},
          {"samples", static_cast<int>(chart.samples.size())}};
}

TaskOutput run_vacuum(const JobConfig& c) {
  const VacuumTask& t = require(c.vacuum, "vacuum");
  const DualLattice dual = dual_lattice(c.lattice);
  const std::vector<cplx> points = enumerate_dual(dual, t.window);
  json pts = json::array(), lines = json::array(), doubles = json::array();
  for (cplx p : points) {
    pts.push_back(complex_json(p));
    lines.push_back({{"family", "b = c"}, {"c", complex_json(p)}});
    lines.push_back({{"family", "a = conj(c)"}, {"c", complex_json(p)}});
  }
  for (cplx cs : points) {
    for (cplx cf : points) {
      doubles.push_back({{"c_second", complex_json(cs)}, {"c_first", complex_json(cf)},
                         {"a", complex_json(std::conj(cs))}, {"b", complex_json(cf)}});
    }
  }
  return {{{"window", t.window}, {"dual_points", pts}, {"lines", lines}, {"double_points", doubles}}, {}};
}

TaskOutput run_indicator(const JobConfig& c) {
  const IndicatorTask& t = require(c.indicator, "indicator");
  const SpectralModel model = c.make_model();
  const std::vector<SpectralIndicator> values = indicator_sweep(model, t.grid, c.tol.ker_tol, Exec::parallel);
  json rows = json::array();
  double lo = values.empty() ? 0.0 : values.front().sigma_min;
  for (const SpectralIndicator& v : values) {
    rows.push_back({{"a", complex_json(v.at.a)}, {"b", complex_json(v.at.b)}, {"sigma_min", v.sigma_min},
                    {"kernel_dim", v.kernel_dim}});
    lo = std::min(lo, v.sigma_min);
  }
  std::ostringstream csv;
  write_indicator_csv(csv, values);
  return {{{"n", {t.grid.n1, t.grid.n2}}, {"count", static_cast<int>(values.size())}, {"min_sigma", lo},
           {"samples", rows}},
          csv.str()};
}

TaskOutput run_trace(const JobConfig& c) {
  const TraceTask& t = require(c.trace, "trace");
  const SpectralModel model = c.make_model();
  const auto samples = trace_graph(model, t.plane, t.region, t.step, graph_options(c));
  return {{{"count", static_cast<int>(samples.size())}, {"samples", samples_json(samples)}}, samples_csv(samples)};
}

TaskOutput run_classify(const JobConfig& c) {
  const ClassifyTask& t = require(c.classify, "classify");
  const SpectralModel model = c.make_model();
  GenusReport g;
  if (t.pairs.empty()) {
    g = genus_window_report(model, t.window_radius, c.eps, classify_options(c), Exec::parallel);
  } else {
    g = classify_pairs(model, t.pairs, c.eps, classify_options(c), Exec::parallel);
  }
  return {census_json(g), {}};
}

TaskOutput run_genus(const JobConfig& c) {
  const GenusTask& t = require(c.genus, "genus");
  const SpectralModel model = c.make_model();
  const GenusReport g = genus_window_report(model, t.window_radius, c.eps, classify_options(c), Exec::parallel);
  json out = census_json(g);
  out["window_radius"] = t.window_radius;
  out["genus_lower_bound"] = g.handles;
  out["scope"] = std::string(GenusReport::scope);
  return {out, {}};
}

TaskOutput run_energy(const JobConfig& c) {
  EnergyOptions o = require(c.energy, "energy");
  o.eps = c.eps;
  o.fit_tol = c.tol.fit_tol;
  o.ker_tol = c.tol.ker_tol;
  const SpectralModel model = c.make_model();
  const EnergyReport r = energy_report(model, o);
  return {{{"W_direct", r.W_direct},
           {"W_slope_o", r.W_slope_o},
           {"W_slope_inf", r.W_slope_inf},
           {"W_residue", r.W_residue},
           {"W_residue_o", r.W_residue_o},
           {"W_hitchin_o", r.W_hitchin_o},
           {"W_hitchin_inf", r.W_hitchin_inf},
           {"vol", r.vol},
           {"lambda_o", complex_json(r.lambda_o)},
           {"lambda_inf", complex_json(r.lambda_inf)},
           {"chart_o", chart_json(r.chart_o)},
           {"chart_inf", chart_json(r.chart_inf)},
           {"warnings", r.warnings}},
          {}};
}

TaskOutput run_section(const JobConfig& c) {
  const SectionTask& t = require(c.section, "section");
  const SpectralModel model = c.make_model();
  const GraphOptions g = graph_options(c);
  std::vector<SpectrumSample> samples;
  json rows = json::array();
  for (cplx b : t.b_values) {
    const LogCoord at = solve_graph_point(model, Plane::b_plane, b, 0.0, g);
    const SpectralIndicator ind = indicator(model, at, c.tol.ker_tol);
    const SpectrumSample s{at, ind.sigma_min, ind.kernel_dim, BranchTag::graph_over_b};
    samples.push_back(s);
    const SectionDeviation dev = kernel_section_deviation(model, s, c.tol.ker_tol);
    json smap = json::array();
    for (cplx p : t.points) {
      try {
        const ProjectivePoint pp = s_map(model, s, p, c.tol.ker_tol);
        smap.push_back({{"p", complex_json(p)}, {"u1", complex_json(pp.u1)}, {"u2", complex_json(pp.u2)}});
      } catch (const Error& e) {
        smap.push_back({{"p", complex_json(p)}, {"error", std::string(to_string(e.code()))}});
      }
    }
    json row = sample_json(s);
    row["dev_o"] = dev.dev_o;
    row["dev_inf"] = dev.dev_inf;
    row["s_map"] = smap;
    rows.push_back(row);
  }
  return {{{"samples", rows}}, samples_csv(samples)};
}

TaskOutput run_audit(const JobConfig& c) {
  const AuditTask& t = require(c.audit, "audit");
  const SpectralModel model = c.make_model();
  const auto samples = trace_graph(model, t.trace.plane, t.trace.region, t.trace.step, graph_options(c));
  const TubeAudit tube = tube_audit(samples, c.eps, model.dual(), t.core_cells);
  json violations = json::array();
  for (const auto& [i, d] : tube.violations) violations.push_back({{"sample", static_cast<int>(i)}, {"distance", d}});
  json out = {{"count", static_cast<int>(samples.size())},
              {"tube", {{"checked", tube.checked},
                        {"skipped_core", tube.skipped_core},
                        {"max_distance", tube.max_distance},
                        {"violations", violations}}}};
  if (t.symmetry) {
    const SymmetryAudit s = symmetry_audit(model, samples, c.tol.ker_tol, Exec::parallel);
    out["symmetry"] = {{"checked", s.checked},
                       {"max_rho_defect", s.max_rho},
                       {"max_periodicity_defect", s.max_periodicity},
                       {"max_j_defect", s.max_j}};
  }
  return {out, samples_csv(samples)};
}

std::filesystem::path csv_path(const std::string& out_path) {
  std::filesystem::path p(out_path);
  if (p.extension() == ".csv") return p.string() + ".samples.csv";
  return p.replace_extension(".csv");
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names{"vacuum", "indicator", "trace",  "classify",
                                              "genus",  "energy",    "section", "audit"};
  return names;
}

TaskOutput run_task(const std::string& task, const JobConfig& config) {
  TaskOutput body;
  if (task == "vacuum") body = run_vacuum(config);
  else if (task == "indicator") body = run_indicator(config);
  else if (task == "trace") body = run_trace(config);
  else if (task == "classify") body = run_classify(config);
  else if (task == "genus") body = run_genus(config);
  else if (task == "energy") body = run_energy(config);
  else if (task == "section") body = run_section(config);
  else if (task == "audit") body = run_audit(config);
  else throw Error(ErrorCode::invalid_input, "unknown task '" + task + "'");

  TaskOutput out;
  out.document = {{"task", task},
                  {"version", std::string(kVersion)},
                  {"config", to_json(config)},
                  {"tolerances", to_json(config.tol)},
                  {"outputs", std::move(body.document)}};
  out.csv = std::move(body.csv);
  return out;
}

int run(const std::string& task, const std::string& config_path, const std::string& out_path, std::ostream& console) {
  json doc;
  std::string csv;
  int status = 0;
  try {
    const JobConfig config = load_config(config_path);
    TaskOutput result = run_task(task, config);
    doc = std::move(result.document);
    csv = std::move(result.csv);
  } catch (const Error& e) {
    doc = error_json(e.code(), e.what());
    status = e.code() == ErrorCode::invalid_input ? 2 : 3;
  } catch (const std::exception& e) {
    doc = {{"error", {{"code", "internal"}, {"message", e.what()}}}};
    status = 4;
  }
  if (status != 0) std::cerr << "specurve: " << doc["error"]["message"].get<std::string>() << '\n';

  if (out_path.empty()) {
    console << dump_json(doc);
    return status;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "specurve: cannot write '" << out_path << "'\n";
    return 5;
  }
  out << dump_json(doc);
  if (!csv.empty()) {
    std::ofstream table(csv_path(out_path), std::ios::binary);
    table << csv;
  }
  return status;
}

}  // namespace specurve
