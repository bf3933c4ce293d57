#include "specurve/config.hpp"

#include <fstream>
#include <set>

#include "specurve/error.hpp"

namespace specurve {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::invalid_input, what); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) invalid(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) invalid("unknown key '" + item.key() + "' in " + where);
  }
}

double positive(const json& obj, const char* key, double fallback, const std::string& where) {
  const double v = obj.value(key, fallback);
  if (!(v > 0.0)) invalid(where + "." + key + " must be positive");
  return v;
}

std::pair<double, double> range_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) invalid(what + " must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

LogCoord coord_from(const json& j, const std::string& what) {
  check_keys(j, {"a", "b"}, what);
  return {complex_from(j.at("a")), complex_from(j.at("b"))};
}

json coord_json(LogCoord c) { return {{"a", complex_json(c.a)}, {"b", complex_json(c.b)}}; }

Plane plane_from(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "b_plane") return Plane::b_plane;
  if (s == "a_plane") return Plane::a_plane;
  invalid("plane must be 'b_plane' or 'a_plane'");
}

TraceTask trace_from(const json& j, const std::string& where, const std::set<std::string>& extra = {}) {
  std::set<std::string> keys{"plane", "region", "step"};
  keys.insert(extra.begin(), extra.end());
  check_keys(j, keys, where);
  TraceTask t;
  if (j.contains("plane")) t.plane = plane_from(j["plane"]);
  const json& r = j.at("region");
  if (!r.is_array() || r.size() != 4) invalid(where + ".region must be [re0, re1, im0, im1]");
  t.region = {r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>()};
  if (t.region.re1 < t.region.re0 || t.region.im1 < t.region.im0) invalid(where + ".region is empty");
  t.step = positive(j, "step", 0.1, where);
  return t;
}

json trace_json(const TraceTask& t) {
  return {{"plane", t.plane == Plane::b_plane ? "b_plane" : "a_plane"},
          {"region", {t.region.re0, t.region.re1, t.region.im0, t.region.im1}},
          {"step", t.step}};
}

Tolerances tolerances_from(const json& j) {
  check_keys(j, {"ker_tol", "proj_tol", "fit_tol", "tol_vac", "cond_max", "winding_floor", "quad_tol",
                 "zero_sep_rel", "multiplier_tol"},
             "tolerances");
  Tolerances t;
  auto get = [&](const char* key, double& field) {
    if (!j.contains(key)) return;
    field = j[key].get<double>();
    if (!(field > 0.0)) invalid(std::string("tolerances.") + key + " must be positive");
  };
  get("ker_tol", t.ker_tol);
  get("proj_tol", t.proj_tol);
  get("fit_tol", t.fit_tol);
  get("tol_vac", t.tol_vac);
  get("cond_max", t.cond_max);
  get("winding_floor", t.winding_floor);
  get("quad_tol", t.quad_tol);
  get("zero_sep_rel", t.zero_sep_rel);
  get("multiplier_tol", t.multiplier_tol);
  return t;
}

JobConfig parse_impl(const json& doc) {
  check_keys(doc, {"lattice", "potential", "truncation_radius", "eps", "tolerances", "vacuum", "indicator", "trace",
                   "classify", "genus", "energy", "section", "audit"},
             "config");
  JobConfig c;
  const json& lat = doc.at("lattice");
  check_keys(lat, {"gamma1", "gamma2"}, "lattice");
  c.lattice = TorusLattice(complex_from(lat.at("gamma1")), complex_from(lat.at("gamma2")));

  if (doc.contains("potential")) {
    const json& pot = doc["potential"];
    if (!pot.is_array()) invalid("potential must be a list of {c, coeff}");
    for (const json& term : pot) {
      check_keys(term, {"c", "coeff"}, "potential entry");
      c.potential.emplace_back(complex_from(term.at("c")), complex_from(term.at("coeff")));
    }
  }
  c.truncation_radius = positive(doc, "truncation_radius", 4.0, "config");
  c.eps = positive(doc, "eps", 0.1, "config");
  if (doc.contains("tolerances")) c.tol = tolerances_from(doc["tolerances"]);

  const Potential q = c.make_potential();
  if (c.truncation_radius < 2.0 * q.support_radius()) {
    invalid("truncation_radius must be at least twice the support radius of the potential");
  }

  if (doc.contains("vacuum")) {
    const json& j = doc["vacuum"];
    check_keys(j, {"window"}, "vacuum");
    c.vacuum = VacuumTask{positive(j, "window", 1.0, "vacuum")};
  }
  if (doc.contains("indicator")) {
    const json& j = doc["indicator"];
    check_keys(j, {"origin", "dir1", "dir2", "s", "t", "n"}, "indicator");
    IndicatorTask t;
    if (j.contains("origin")) t.grid.origin = coord_from(j["origin"], "indicator.origin");
    if (j.contains("dir1")) t.grid.dir1 = coord_from(j["dir1"], "indicator.dir1");
    if (j.contains("dir2")) t.grid.dir2 = coord_from(j["dir2"], "indicator.dir2");
    std::tie(t.grid.s0, t.grid.s1) = range_from(j.at("s"), "indicator.s");
    std::tie(t.grid.t0, t.grid.t1) = range_from(j.at("t"), "indicator.t");
    const json& n = j.at("n");
    if (!n.is_array() || n.size() != 2) invalid("indicator.n must be [n1, n2]");
    t.grid.n1 = n[0].get<int>();
    t.grid.n2 = n[1].get<int>();
    if (t.grid.n1 < 1 || t.grid.n2 < 1) invalid("indicator.n entries must be at least 1");
    c.indicator = t;
  }
  if (doc.contains("trace")) c.trace = trace_from(doc["trace"], "trace");
  if (doc.contains("classify")) {
    const json& j = doc["classify"];
    check_keys(j, {"pairs", "window_radius"}, "classify");
    ClassifyTask t;
    t.window_radius = positive(j, "window_radius", 1.1, "classify");
    if (j.contains("pairs")) {
      for (const json& p : j["pairs"]) {
        check_keys(p, {"c_second", "c_first"}, "classify pair");
        const cplx cs = complex_from(p.at("c_second")), cf = complex_from(p.at("c_first"));
        const DualLattice dual = dual_lattice(c.lattice);
        if (!dual.contains(cs, 1e-9) || !dual.contains(cf, 1e-9)) invalid("classify pair outside the dual lattice");
        t.pairs.emplace_back(cs, cf);
      }
    }
    c.classify = t;
  }
  if (doc.contains("genus")) {
    const json& j = doc["genus"];
    check_keys(j, {"window_radius"}, "genus");
    c.genus = GenusTask{positive(j, "window_radius", 1.1, "genus")};
  }
  if (doc.contains("energy")) {
    const json& j = doc["energy"];
    check_keys(j, {"B0", "offset", "samples", "degree"}, "energy");
    EnergyOptions e;
    e.B0 = j.value("B0", 0.0);
    e.offset = j.value("offset", 0.0);
    e.samples = j.value("samples", 16);
    e.degree = j.value("degree", 4);
    if (e.samples < e.degree + 1) invalid("energy.samples must exceed energy.degree");
    if (e.degree < 1) invalid("energy.degree must be at least 1");
    c.energy = e;
  }
  if (doc.contains("section")) {
    const json& j = doc["section"];
    check_keys(j, {"b", "points"}, "section");
    SectionTask t;
    for (const json& b : j.at("b")) t.b_values.push_back(complex_from(b));
    if (j.contains("points")) {
      for (const json& p : j["points"]) t.points.push_back(complex_from(p));
    }
    c.section = t;
  }
  if (doc.contains("audit")) {
    const json& j = doc["audit"];
    AuditTask t;
    t.trace = trace_from(j, "audit", {"core_cells", "symmetry"});
    t.core_cells = positive(j, "core_cells", 1.0, "audit");
    t.symmetry = j.value("symmetry", true);
    c.audit = t;
  }
  return c;
}

}  // namespace

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    invalid("complex numbers are written as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Potential JobConfig::make_potential() const { return Potential(dual_lattice(lattice), potential); }

SpectralModel JobConfig::make_model() const { return SpectralModel(lattice, make_potential(), truncation_radius); }

JobConfig parse_config(const json& doc) {
  try {
    return parse_impl(doc);
  } catch (const json::exception& e) {
    invalid(std::string("malformed config: ") + e.what());
  }
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const Tolerances& t) {
  return {{"ker_tol", t.ker_tol},
          {"proj_tol", t.proj_tol},
          {"fit_tol", t.fit_tol},
          {"tol_vac", t.tol_vac},
          {"cond_max", t.cond_max},
          {"winding_floor", t.winding_floor},
          {"quad_tol", t.quad_tol},
          {"zero_sep_rel", t.zero_sep_rel},
          {"multiplier_tol", t.multiplier_tol}};
}

json to_json(const JobConfig& c) {
  json doc;
  doc["lattice"] = {{"gamma1", complex_json(c.lattice.gamma1())}, {"gamma2", complex_json(c.lattice.gamma2())}};
  doc["potential"] = json::array();
  for (const auto& [freq, coeff] : c.potential) {
    doc["potential"].push_back({{"c", complex_json(freq)}, {"coeff", complex_json(coeff)}});
  }
  doc["truncation_radius"] = c.truncation_radius;
  doc["eps"] = c.eps;
  doc["tolerances"] = to_json(c.tol);
  if (c.vacuum) doc["vacuum"] = {{"window", c.vacuum->window}};
  if (c.indicator) {
    const SliceGrid& g = c.indicator->grid;
    doc["indicator"] = {{"origin", coord_json(g.origin)}, {"dir1", coord_json(g.dir1)}, {"dir2", coord_json(g.dir2)},
                        {"s", {g.s0, g.s1}},           {"t", {g.t0, g.t1}},         {"n", {g.n1, g.n2}}};
  }
  if (c.trace) doc["trace"] = trace_json(*c.trace);
  if (c.classify) {
    json pairs = json::array();
    for (const auto& [cs, cf] : c.classify->pairs) {
      pairs.push_back({{"c_second", complex_json(cs)}, {"c_first", complex_json(cf)}});
    }
    doc["classify"] = {{"pairs", pairs}, {"window_radius", c.classify->window_radius}};
  }
  if (c.genus) doc["genus"] = {{"window_radius", c.genus->window_radius}};
  if (c.energy) {
    doc["energy"] = {{"B0", c.energy->B0}, {"offset", c.energy->offset}, {"samples", c.energy->samples},
                     {"degree", c.energy->degree}};
  }
  if (c.section) {
    json bs = json::array(), ps = json::array();
    for (cplx b : c.section->b_values) bs.push_back(complex_json(b));
    for (cplx p : c.section->points) ps.push_back(complex_json(p));
    doc["section"] = {{"b", bs}, {"points", ps}};
  }
  if (c.audit) {
    json a = trace_json(c.audit->trace);
    a["core_cells"] = c.audit->core_cells;
    a["symmetry"] = c.audit->symmetry;
    doc["audit"] = a;
  }
  return doc;
}

}  // namespace specurve
