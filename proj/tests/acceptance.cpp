// Prints one PASS/FAIL line per acceptance criterion. The exit status only
// reports whether the suite ran; a FAIL line is a result, not a crash.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "specurve/classify.hpp"
#include "specurve/symmetry.hpp"

using namespace specurve;

namespace {

constexpr double kPi = std::numbers::pi;

const TorusLattice kSquare(cplx(2.0 * kPi, 0.0), cplx(0.0, 2.0 * kPi));

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Independent distance to the vacuum lines: brute force over a large frequency box.
double vacuum_oracle(LogCoord p) {
  double best = 1e300;
  for (int m = -12; m <= 12; ++m) {
    for (int n = -12; n <= 12; ++n) {
      const cplx c(0.5 * m, 0.5 * n);
      best = std::min({best, std::abs(p.b - c), std::abs(p.a - std::conj(c))});
    }
  }
  return best;
}

Potential perturbed_potential() { return Potential(dual_lattice(kSquare), {{0.0, 0.2}, {0.5, 0.05}}); }

Outcome vacuum_reproduction() {
  const SpectralModel vac(kSquare, Potential(dual_lattice(kSquare)), 3.0);
  SliceGrid g;
  g.origin = {cplx(0.013, -0.021), cplx(0.037, 0.011)};
  g.dir1 = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
  g.dir2 = {cplx(0.0, 0.0), cplx(0.6, 0.8)};
  g.s0 = -1.2, g.s1 = 1.2, g.t0 = -1.2, g.t1 = 1.2;
  g.n1 = g.n2 = 60;
  const auto t0 = std::chrono::steady_clock::now();
  const auto vals = indicator_sweep(vac, g);
  const double elapsed = seconds_since(t0);
  double err = 0.0;
  for (const SpectralIndicator& v : vals) err = std::max(err, std::abs(v.sigma_min - vacuum_oracle(v.at)));
  return {err <= 1e-10 && elapsed < 5.0,
          "60x60 sweep, max |sigma - dist| = " + fmt("%.2e", err) + ", " + fmt("%.2f", elapsed) + " s"};
}

Outcome constant_potential_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const DualLattice d = dual_lattice(kSquare);
  const SpectralModel cq(kSquare, Potential::constant(d, 0.3), 4.0);
  std::vector<SpectrumSample> samples;
  for (const Region& r : {Region{2.0, 3.0, 0.2, 0.3}, Region{-3.0, -2.0, 1.2, 1.3}, Region{3.2, 3.3, -2.3, -1.7}}) {
    const auto part = trace_graph(cq, Plane::b_plane, r, 0.05);
    samples.insert(samples.end(), part.begin(), part.end());
  }
  const auto mirrored = trace_graph(cq, Plane::a_plane, Region{2.0, 3.0, -0.3, -0.2}, 0.05);
  samples.insert(samples.end(), mirrored.begin(), mirrored.end());
  double residual = 0.0;
  const std::vector<cplx> cs = enumerate_dual(d, 8.0);
  for (const SpectrumSample& s : samples) {
    double best = 1e300;
    for (cplx c : cs) best = std::min(best, std::abs((s.coord.b - c) * (s.coord.a + std::conj(c)) + 0.09));
    residual = std::max(residual, best);
  }

  const GenusReport g = genus_window_report(cq, 1.1, 0.1);
  int wrong = 0, complex_multiplier = 0;
  for (const DoublePointReport& r : g.reports) {
    const bool coupled = std::abs(r.c_second + r.c_first) < 1e-12;
    const Verdict expect = coupled ? Verdict::Handle : Verdict::Node;
    if (r.verdict != expect) ++wrong;
    if (r.verdict == Verdict::Node && !r.multiplier_is_real) ++complex_multiplier;
  }
  int failed_half = 0;
  for (const ClassifyFailure& f : g.failures) {
    if (std::abs(std::abs(f.c_second + f.c_first) - 0.5) < 1e-12) ++failed_half;
  }
  const double elapsed = seconds_since(t0);
  const bool pass = residual < 1e-6 && wrong == 0 && complex_multiplier == 0 && g.failures.empty() && elapsed < 60.0;
  return {pass, std::to_string(samples.size()) + " samples, max hyperbola residual " + fmt("%.2e", residual) +
                    "; census " + std::to_string(g.handles) + " handles, " + std::to_string(g.nodes) + " nodes, " +
                    std::to_string(wrong) + " wrong verdicts, " + std::to_string(complex_multiplier) +
                    " non-real node multipliers, " + std::to_string(g.failures.size()) + " pairs without a verdict (" +
                    std::to_string(failed_half) + " of them with |c'+c''| = 1/2, where no real node exists); " +
                    fmt("%.1f", elapsed) + " s"};
}

Outcome willmore_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  const DualLattice d = dual_lattice(kSquare);
  const SpectralModel cq(kSquare, Potential::constant(d, 0.3), 4.0);
  EnergyOptions o;
  o.B0 = 8.0;
  const EnergyReport r = energy_report(cq, o);
  const double exact = 1.44 * kPi * kPi;
  const std::vector<double> ws{exact, r.W_direct, r.W_slope_o, r.W_slope_inf, r.W_residue};
  double spread = 0.0;
  for (double x : ws) {
    for (double y : ws) spread = std::max(spread, std::abs(x - y) / std::abs(y));
  }
  const SpectralModel pm(kSquare, perturbed_potential(), 5.0);
  const EnergyReport p = energy_report(pm);
  const double direct = 4.0 * kSquare.covolume() * (0.04 + 0.0025);
  const double rel = std::max(std::abs(p.W_slope_o - direct), std::abs(p.W_slope_inf - direct)) / direct;
  const double elapsed = seconds_since(t0);
  return {spread <= 1e-6 && rel <= 0.02 && std::abs(p.W_direct - direct) < 1e-12 * direct && elapsed < 120.0,
          "constant: pairwise spread " + fmt("%.2e", spread) + "; perturbed: W_direct " + fmt("%.8f", direct) +
              ", W_slope " + fmt("%.8f", p.W_slope_o) + " (rel " + fmt("%.2e", rel) + "); " + fmt("%.1f", elapsed) +
              " s"};
}

Outcome projector_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const DualLattice d = dual_lattice(kSquare);
  const SpectralModel vac(kSquare, Potential(d), 3.0);
  const SpectralModel cq(kSquare, Potential::constant(d, 0.3), 4.0);
  struct Contour {
    const SpectralModel* model;
    LogCoord center;
    double eps;
  };
  const std::vector<Contour> contours{
      {&vac, {0.0, 0.3}, 0.1},
      {&vac, {0.3, 0.3}, 0.1},
      {&vac, {0.0, 0.0}, 0.1},
      {&vac, {0.5, 0.5}, 0.2},
      {&vac, {0.02, 1.03}, 0.1},
      {&vac, {cplx(0.1, 0.1), 0.6}, 0.2},
      {&vac, {0.0, cplx(0.0, 0.5)}, 0.3},
      {&vac, {0.26, -0.24}, 0.05},
      {&vac, {-0.5, 0.5}, 0.25},
      {&vac, {cplx(0.2, 0.0), cplx(1.0, 0.5)}, 0.15},
      {&cq, {0.0, 0.0}, 0.1},
      {&cq, {-0.09, 1.0}, 0.05},
      {&cq, {0.0, 1.0}, 0.2},
      {&cq, {0.1, 0.6}, 0.1},
      {&cq, {0.0, 2.2}, 0.1},
      {&cq, {-0.5, 0.5}, 0.15},
      {&cq, {cplx(0.0, 0.3), 0.0}, 0.1},
      {&cq, {0.25, 0.25}, 0.05},
      {&cq, {-0.045, 2.0}, 0.1},
      {&cq, {cplx(0.5, 0.5), cplx(0.5, 0.5)}, 0.2}};
  double idem = 0.0, trace = 0.0;
  int rank_mismatch = 0;
  for (const Contour& c : contours) {
    const Projector p = riesz_projector(*c.model, c.center, c.eps);
    idem = std::max(idem, p.idempotency_defect);
    trace = std::max(trace, std::abs(p.trace - std::round(p.trace.real())));
    if (p.rank != det_winding(*c.model, c.center, c.eps)) ++rank_mismatch;
  }

  // Sum of projectors: the double-point projector splits into the projectors
  // of its two roots at points x where they are separated.
  double stokes = 0.0;
  int checked = 0;
  const QuadratureOptions q{32, 8192, 1e-12, 1e12, Exec::serial};
  for (cplx c : enumerate_dual(d, 1.1)) {
    const RestrictedPencil pencil(cq, -c, c, 0.6, q);
    for (int k = 0; k < 8; ++k) {
      const cplx x = std::polar(0.15, 2.0 * kPi * (k + 0.5) / 8.0);
      const CMatrix whole = pencil.projector(x);
      const CMatrix m = pencil.matrix(x);
      const CVector roots = pencil.roots(x);
      const double r = 0.4 * std::abs(roots(0) - roots(1));
      const CMatrix parts = resolvent_contour(m, roots(0), r, q).p + resolvent_contour(m, roots(1), r, q).p;
      stokes = std::max(stokes, (whole - parts).norm());
      ++checked;
    }
  }
  const double elapsed = seconds_since(t0);
  return {idem <= 1e-8 && trace <= 1e-6 && rank_mismatch == 0 && stokes <= 1e-6 && elapsed < 30.0,
          std::to_string(contours.size()) + " contours, max |P^2-P| " + fmt("%.2e", idem) + ", max trace defect " +
              fmt("%.2e", trace) + ", " + std::to_string(rank_mismatch) +
              " rank/winding mismatches; sum of projectors " + fmt("%.2e", stokes) + " over " +
              std::to_string(checked) + " x; " + fmt("%.1f", elapsed) + " s"};
}

Outcome symmetry_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpectralModel pm(kSquare, perturbed_potential(), 5.0);
  const DualLattice& d = pm.dual();
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SpectrumSample> samples;
  while (samples.size() < 200) {
    const cplx b = std::polar(2.0 + 2.5 * u(rng), 2.0 * kPi * u(rng));
    if (d.distance_to_lattice(b) < 0.15) continue;
    const LogCoord at = solve_graph_point(pm, Plane::b_plane, b, 0.0);
    const SpectralIndicator ind = indicator(pm, at);
    samples.push_back({at, ind.sigma_min, ind.kernel_dim, BranchTag::graph_over_b});
  }
  const SymmetryAudit a = symmetry_audit(pm, samples);
  const double elapsed = seconds_since(t0);
  return {a.max_rho <= 1e-9 && a.max_periodicity <= 1e-9 && a.max_j <= 1e-6,
          std::to_string(a.checked) + " samples, rho " + fmt("%.2e", a.max_rho) + ", lattice shifts " +
              fmt("%.2e", a.max_periodicity) + ", j-compatibility " + fmt("%.2e", a.max_j) + "; " +
              fmt("%.1f", elapsed) + " s"};
}

Outcome asymptotic_suite() {
  const DualLattice d = dual_lattice(kSquare);
  const SpectralModel cq(kSquare, Potential::constant(d, 0.3), 4.0);
  double dev_err = 0.0, slot_excess = -1e300, norm_err = 0.0;
  double last = 1e300;
  bool monotone = true;
  for (double b : {5.0, 10.0, 20.0}) {
    const LogCoord at_o = solve_graph_point(cq, Plane::b_plane, cplx(b, 0.0), 0.0);
    const SpectrumSample so{at_o, indicator(cq, at_o).sigma_min, 1, BranchTag::graph_over_b};
    const SectionDeviation dev = kernel_section_deviation(cq, so);
    dev_err = std::max(dev_err, std::abs(dev.dev_o - 0.3 / b));
    monotone = monotone && dev.dev_o < last;
    last = dev.dev_o;
    const LogCoord at_inf = solve_graph_point(cq, Plane::a_plane, cplx(b, 0.0), 0.0);
    const SpectrumSample si{at_inf, indicator(cq, at_inf).sigma_min, 1, BranchTag::graph_over_a};
    for (cplx p : {cplx(0.0), cplx(1.0, 2.0), cplx(4.0, -0.5)}) {
      const ProjectivePoint po = s_map(cq, so, p);
      const ProjectivePoint pi = s_map(cq, si, p);
      norm_err = std::max({norm_err, std::abs(po.u2 - 1.0), std::abs(pi.u1 - 1.0)});
      slot_excess = std::max({slot_excess, std::abs(po.u1) - 0.3 / b, std::abs(pi.u2) - 0.3 / b});
    }
  }
  return {dev_err <= 1e-8 && monotone && norm_err <= 1e-12 && slot_excess <= 1e-8,
          "max |dev_o - 0.3/|b|| " + fmt("%.2e", dev_err) + (monotone ? ", decreasing" : ", NOT decreasing") +
              "; S-map off-slot excess over 0.3/|b| " + fmt("%.2e", slot_excess) + ", limit slot error " +
              fmt("%.2e", norm_err)};
}

Outcome truncation_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpectralModel m5(kSquare, perturbed_potential(), 5.0);
  const SpectralModel m6(kSquare, perturbed_potential(), 6.0);
  const std::vector<LogCoord> probes{{0.0, 0.0},
                                     {-0.09, 1.0},
                                     {cplx(0.1, 0.05), cplx(0.3, -0.2)},
                                     {0.25, cplx(0.0, 0.25)},
                                     {-0.02, 2.2},
                                     {cplx(0.0, 0.4), 1.5},
                                     {cplx(-0.3, 0.1), cplx(-1.1, 0.7)},
                                     {0.5, 0.5},
                                     {cplx(0.7, -0.6), cplx(0.2, 1.3)},
                                     {-0.04, cplx(0.0, -2.6)}};
  double change = 0.0;
  for (LogCoord p : probes) {
    change = std::max(change, std::abs(indicator(m5, p).sigma_min - indicator(m6, p).sigma_min));
  }

  const std::vector<std::pair<cplx, cplx>> pairs{{0.5, 0.5}, {0.5, cplx(0.0, 0.5)}, {0.0, 0.0}, {0.0, 0.5}};
  const GenusReport g5 = classify_pairs(m5, pairs, 0.1);
  const GenusReport g6 = classify_pairs(m6, pairs, 0.1);
  auto verdicts = [&](const GenusReport& g) {
    std::vector<std::string> out;
    for (auto [cs, cf] : pairs) {
      std::string v = "missing";
      for (const DoublePointReport& r : g.reports) {
        if (r.c_second == cs && r.c_first == cf) v = std::string(to_string(r.verdict));
      }
      for (const ClassifyFailure& f : g.failures) {
        if (f.c_second == cs && f.c_first == cf) v = "error:" + std::string(to_string(f.code));
      }
      out.push_back(v);
    }
    return out;
  };
  const auto v5 = verdicts(g5), v6 = verdicts(g6);
  std::string listing;
  for (std::size_t i = 0; i < v5.size(); ++i) {
    listing += (i ? ", " : "") + v5[i] + (v5[i] == v6[i] ? "" : "->" + v6[i]);
  }
  const double elapsed = seconds_since(t0);
  return {change < 1e-6 && v5 == v6, "max sigma change " + fmt("%.2e", change) + " over " +
                                         std::to_string(probes.size()) + " probes; verdicts R=5 vs R=6: " + listing +
                                         "; " + fmt("%.1f", elapsed) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"vacuum reproduction", vacuum_reproduction},
      {"constant-potential oracle", constant_potential_oracle},
      {"Willmore three-way agreement", willmore_agreement},
      {"projector property suite", projector_suite},
      {"symmetry suite", symmetry_suite},
      {"asymptotic section and S-map suite", asymptotic_suite},
      {"truncation convergence", truncation_convergence}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const Error& e) {
      o = {false, std::string("error ") + std::string(to_string(e.code())) + ": " + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return 0;
}
