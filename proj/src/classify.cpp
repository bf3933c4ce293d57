#include "specurve/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace specurve {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Handle: return "Handle";
    case Verdict::Node: return "Node";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "unknown";
}

std::vector<Window> default_ladder(double eps, const DualLattice& dual) {
  const double l = dual.min_length();
  return {{eps / 2.0, eps / 2.0 + eps / 10.0},
          {0.2 * l, 0.6 * l},
          {0.3 * l, 0.6 * l},
          {0.3 * l, 0.8 * l},
          {0.4 * l, 0.7 * l},
          {0.5 * l, 0.9 * l},
          {1.0 * l, 1.8 * l}};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Taylor coefficients of f(center + t) from equispaced samples on |t| = rho.
struct CircleSeries {
  std::vector<cplx> coeff;

  CircleSeries(const std::vector<cplx>& f, double rho) : coeff(f.size()) {
    const int n = static_cast<int>(f.size());
    for (int m = 0; m < n; ++m) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += f[static_cast<std::size_t>(k)] * std::polar(1.0, -kTwoPi * k * m / n);
      coeff[static_cast<std::size_t>(m)] = acc / static_cast<double>(n) / std::pow(rho, m);
    }
  }

  cplx value(cplx t) const {
    cplx acc = 0.0;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
  cplx derivative(cplx t) const {
    cplx acc = 0.0;
    for (std::size_t m = coeff.size() - 1; m >= 1; --m) acc = acc * t + static_cast<double>(m) * coeff[m];
    return acc;
  }
  cplx second_derivative(cplx t) const {
    cplx acc = 0.0;
    for (std::size_t m = coeff.size() - 1; m >= 2; --m) {
      acc = acc * t + static_cast<double>(m * (m - 1)) * coeff[m];
    }
    return acc;
  }
};

std::vector<cplx> circle_nodes(cplx center, double rho, int n) {
  std::vector<cplx> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = center + std::polar(rho, kTwoPi * k / n);
  return x;
}

std::vector<cplx> discriminant_on(const RestrictedPencil& pencil, const std::vector<cplx>& xs) {
  std::vector<cplx> f;
  f.reserve(xs.size());
  for (cplx x : xs) f.push_back(pencil.at(x).discriminant);
  return f;
}

struct RungData {
  std::vector<cplx> f;
  int winding = 0;
};

// Empty string on success, otherwise the reason the rung was rejected.
std::string evaluate_rung(const RestrictedPencil& pencil, const Window& w, const ClassifyOptions& opts, RungData& data) {
  const double margin = opts.lambda_margin_rel * w.lambda_radius;
  std::vector<cplx> probes = circle_nodes(0.0, w.x_radius, opts.x_nodes);
  probes.push_back(0.0);
  for (double frac : {1.0 / 3.0, 2.0 / 3.0}) {
    for (cplx p : circle_nodes(0.0, frac * w.x_radius, 8)) probes.push_back(p);
  }
  for (cplx x : probes) {
    const CVector roots = pencil.roots(x);
    int inside = 0;
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
      const double r = std::abs(roots(i));
      if (std::abs(r - w.lambda_radius) < margin) return "spectrum near the lambda-circle";
      if (r < w.lambda_radius) ++inside;
    }
    if (inside != 2) return "lambda-disc holds " + std::to_string(inside) + " roots";
  }

  const CMatrix p0 = pencil.projector(0.0);
  if (p0.col(pencil.local_v()).norm() < opts.overlap_min || p0.col(pencil.local_w()).norm() < opts.overlap_min) {
    return "projector range misses the vacuum modes";
  }

  const std::vector<cplx> xs = circle_nodes(0.0, w.x_radius, opts.x_nodes);
  data.f = discriminant_on(pencil, xs);
  for (cplx v : data.f) {
    if (!(std::abs(v) >= opts.tol.winding_floor)) return "discriminant vanishes on the x-circle";
  }
  const double wnd = winding_from_samples(data.f);
  if (std::abs(wnd - std::round(wnd)) > 0.25) return "discriminant winding not near an integer";
  data.winding = static_cast<int>(std::lround(wnd));
  if (data.winding != 2) return "discriminant winding " + std::to_string(data.winding);
  return {};
}

// Local Taylor coefficients of the discriminant around x on a small circle.
CircleSeries local_series(const RestrictedPencil& pencil, cplx x, double r) {
  const std::vector<cplx> xs = circle_nodes(x, r, 16);
  return CircleSeries(discriminant_on(pencil, xs), r);
}

}  // namespace

DoublePointReport classify_double_point(const SpectralModel& model, cplx c_second, cplx c_first, double eps,
                                        const ClassifyOptions& opts) {
  const std::vector<Window> ladder = opts.ladder.empty() ? default_ladder(eps, model.dual()) : opts.ladder;
  DoublePointReport out;
  out.c_second = c_second;
  out.c_first = c_first;
  std::ostringstream reasons;
  RungData data;
  int chosen = -1;
  for (std::size_t r = 0; r < ladder.size(); ++r) {
    const RestrictedPencil pencil(model, c_second, c_first, ladder[r].lambda_radius, opts.quad);
    std::string why;
    try {
      why = evaluate_rung(pencil, ladder[r], opts, data);
    } catch (const Error& e) {
      why = e.what();
    }
    if (why.empty()) {
      chosen = static_cast<int>(r);
      break;
    }
    reasons << "rung " << r << ": " << why << "; ";
  }
  if (chosen < 0) throw Error(ErrorCode::classification_window, "no admissible window: " + reasons.str());

  const Window w = ladder[static_cast<std::size_t>(chosen)];
  const RestrictedPencil pencil(model, c_second, c_first, w.lambda_radius, opts.quad);
  out.window = w;
  out.rung = chosen;
  out.winding = data.winding;
  const double rho = w.x_radius;
  const int n = static_cast<int>(data.f.size());
  const CircleSeries series(data.f, rho);

  // Power sums of the zeros from the logarithmic derivative on the circle.
  cplx s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx x = std::polar(rho, kTwoPi * k / n);
    const cplx ld = series.derivative(x) / data.f[static_cast<std::size_t>(k)];
    s1 += x * x * ld;
    s2 += x * x * x * ld;
  }
  s1 /= static_cast<double>(n);
  s2 /= static_cast<double>(n);
  const cplx e2 = 0.5 * (s1 * s1 - s2);
  const cplx root = std::sqrt(s1 * s1 - 4.0 * e2);
  const double zero_sep = opts.tol.zero_sep_rel * 2.0 * rho;

  auto polish_zero = [&](cplx z, double r) {
    for (int it = 0; it < 4; ++it) {
      const CircleSeries local = local_series(pencil, z, r);
      const cplx step = local.coeff[0] / local.coeff[1];
      z -= step;
      if (std::abs(step) < 1e-14) break;
    }
    return z;
  };
  auto handle = [&](cplx z1, cplx z2) {
    const double r = std::min(0.05 * rho, 0.25 * std::abs(z1 - z2));
    out.verdict = Verdict::Handle;
    out.discriminant_zeros = {polish_zero(z1, r), polish_zero(z2, r)};
    std::sort(out.discriminant_zeros.begin(), out.discriminant_zeros.end(), [](cplx x, cplx y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
  };

  // Moments resolve well separated zeros; close pairs are decided from the
  // local expansion f(x0 + t) = f0 + f2 t^2 + ... at the critical point.
  if (std::abs(root) > 0.05 * rho) return handle(0.5 * (s1 + root), 0.5 * (s1 - root));

  cplx x0 = 0.5 * s1;
  const double local_r = 0.05 * rho;
  CircleSeries local = local_series(pencil, x0, local_r);
  for (int it = 0; it < 8; ++it) {
    const cplx step = -local.coeff[1] / (2.0 * local.coeff[2]);
    if (std::abs(step) > local_r) break;
    x0 += step;
    local = local_series(pencil, x0, local_r);
    if (std::abs(step) < 1e-14) break;
  }
  const cplx half = std::sqrt(-local.coeff[0] / local.coeff[2]);
  if (2.0 * std::abs(half) > zero_sep) return handle(x0 + half, x0 - half);

  out.discriminant_zeros = {x0, x0};
  const PencilSample at = pencil.at(x0);
  const cplx lambda0 = -0.5 * at.p1;
  const LogCoord base = pencil.base(x0);
  const LogCoord node{base.a + lambda0, base.b + lambda0};
  out.node_location = node;
  out.node_sigma2 = second_singular_value(model, node);
  out.multiplier_is_real = multiplier_is_real(node, model.lattice(), opts.tol.multiplier_tol);
  if (out.node_sigma2 <= opts.tol.ker_tol) {
    out.verdict = Verdict::Node;
  } else {
    out.verdict = Verdict::Indeterminate;
    out.note = "zeros closer than zero_sep but the kernel at the merged point is not 2-dimensional";
  }
  return out;
}

GenusReport classify_pairs(const SpectralModel& model, const std::vector<std::pair<cplx, cplx>>& pairs, double eps,
                           const ClassifyOptions& opts, Exec exec) {
  const int n = static_cast<int>(pairs.size());
  std::vector<std::optional<DoublePointReport>> reports(pairs.size());
  std::vector<std::optional<ClassifyFailure>> failures(pairs.size());
  auto one = [&](int i) {
    const auto [cs, cf] = pairs[static_cast<std::size_t>(i)];
    try {
      reports[static_cast<std::size_t>(i)] = classify_double_point(model, cs, cf, eps, opts);
    } catch (const Error& e) {
      failures[static_cast<std::size_t>(i)] = ClassifyFailure{cs, cf, e.code(), e.what()};
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) one(i);
  } else {
    for (int i = 0; i < n; ++i) one(i);
  }
  GenusReport out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (reports[i]) {
      switch (reports[i]->verdict) {
        case Verdict::Handle: ++out.handles; break;
        case Verdict::Node: ++out.nodes; break;
        case Verdict::Indeterminate: ++out.indeterminate; break;
      }
      out.reports.push_back(std::move(*reports[i]));
    }
    if (failures[i]) out.failures.push_back(std::move(*failures[i]));
  }
  return out;
}

GenusReport genus_window_report(const SpectralModel& model, double window_radius, double eps,
                                const ClassifyOptions& opts, Exec exec) {
  const std::vector<cplx> points = enumerate_dual(model.dual(), window_radius);
  std::vector<std::pair<cplx, cplx>> pairs;
  for (cplx cs : points) {
    for (cplx cf : points) pairs.emplace_back(cs, cf);
  }
  GenusReport out = classify_pairs(model, pairs, eps, opts, exec);
  out.window_radius = window_radius;
  return out;
}

}  // namespace specurve
