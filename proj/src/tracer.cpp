#include "specurve/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "specurve/error.hpp"

namespace specurve {

std::string_view to_string(BranchTag tag) {
  switch (tag) {
    case BranchTag::graph_over_b: return "graph_over_b";
    case BranchTag::graph_over_a: return "graph_over_a";
    case BranchTag::near_double_point: return "near_double_point";
  }
  return "unknown";
}

namespace {

double arg_0_2pi(cplx z) {
  double t = std::arg(z);
  return t < 0.0 ? t + 2.0 * std::numbers::pi : t;
}

cplx newton_transversal(const CMatrix& b, cplx lambda, int max_iter) {
  const Eigen::Index n = b.rows();
  for (int it = 0; it < max_iter; ++it) {
    CMatrix m = b;
    m.diagonal().array() += lambda;
    Eigen::PartialPivLU<CMatrix> lu(m);
    const cplx g = lu.inverse().trace();
    if (!std::isfinite(std::abs(g)) || g == cplx(0)) break;
    const cplx step = 1.0 / g;
    lambda -= step;
    if (std::abs(step) < 1e-12 || n == 1) break;
  }
  return lambda;
}

LogCoord on_plane(Plane plane, cplx fixed, cplx unknown) {
  return plane == Plane::b_plane ? LogCoord{unknown, fixed} : LogCoord{fixed, unknown};
}

// Component carrying the branch: w_0 over the b-plane, v_0 over the a-plane.
std::size_t branch_component(const SpectralModel& model, Plane plane) {
  const auto idx = model.index_of(plane == Plane::b_plane ? Species::w : Species::v, DualPoint{});
  return static_cast<std::size_t>(model.component_of(*idx));
}

int graph_root_count(const SpectralModel& model, Plane plane, cplx fixed, const GraphOptions& opts) {
  const std::size_t nblocks = model.components().size();
  return count_zeros_winding_log(
      [&](cplx u) {
        LogDet total;
        const LogCoord at = on_plane(plane, fixed, u);
        for (std::size_t k = 0; k < nblocks; ++k) {
          const LogDet ld = log_det(model.block_matrix(k, at));
          if (ld.singular) return ld;
          total.log_abs += ld.log_abs;
          total.phase += ld.phase;
        }
        return total;
      },
      0.0, opts.eps, opts.winding_nodes, 0.0);
}

std::optional<cplx> newton_graph(const SpectralModel& model, Plane plane, cplx fixed, cplx seed,
                                 const GraphOptions& opts) {
  const std::size_t k = branch_component(model, plane);
  const Species moving = plane == Plane::b_plane ? Species::w : Species::v;
  const auto& members = model.components()[k];
  cplx u = seed;
  for (int it = 0; it < 60; ++it) {
    Eigen::PartialPivLU<CMatrix> lu(model.block_matrix(k, on_plane(plane, fixed, u)));
    const CMatrix inv = lu.inverse();
    // d/du log det = trace of the inverse over the moving species.
    cplx g = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (model.basis()[static_cast<std::size_t>(members[i])].species == moving) {
        g += inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
      }
    }
    if (!std::isfinite(std::abs(g))) return u;  // landed exactly on the root
    if (g == cplx(0)) return std::nullopt;
    const cplx step = 1.0 / g;
    u -= step;
    if (!(std::abs(u) < 2.0 * opts.eps)) return std::nullopt;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(u))) break;
    if (it == 59) return std::nullopt;
  }
  if (!(std::abs(u) < opts.eps)) return std::nullopt;
  return u;
}

cplx continue_to(const SpectralModel& model, Plane plane, cplx from, cplx value, cplx to, int depth,
                 const GraphOptions& opts) {
  if (graph_root_count(model, plane, to, opts) != 1) {
    throw Error(ErrorCode::branch_ambiguity, "graph disc does not contain exactly one root");
  }
  if (auto root = newton_graph(model, plane, to, value, opts)) return *root;
  if (depth >= opts.max_halvings) throw Error(ErrorCode::branch_ambiguity, "continuation step did not converge");
  const cplx mid = 0.5 * (from + to);
  const cplx mid_value = continue_to(model, plane, from, value, mid, depth + 1, opts);
  return continue_to(model, plane, mid, mid_value, to, depth + 1, opts);
}

void check_region(const SpectralModel& model, Plane plane, const Region& region, double eps) {
  if (!(region.re1 >= region.re0) || !(region.im1 >= region.im0)) {
    throw Error(ErrorCode::invalid_input, "region bounds are reversed");
  }
  const double reach = std::max({std::abs(cplx(region.re0, region.im0)), std::abs(cplx(region.re1, region.im0)),
                                 std::abs(cplx(region.re0, region.im1)), std::abs(cplx(region.re1, region.im1))});
  for (cplx c : enumerate_dual(model.dual(), reach + eps + 1.0)) {
    // b avoids Gamma' over the b-plane; a avoids conj(Gamma') over the a-plane.
    const cplx p = plane == Plane::b_plane ? c : std::conj(c);
    const double dx = std::max({region.re0 - p.real(), 0.0, p.real() - region.re1});
    const double dy = std::max({region.im0 - p.imag(), 0.0, p.imag() - region.im1});
    if (std::hypot(dx, dy) <= eps) {
      throw Error(ErrorCode::invalid_input, "region meets the eps-disc around a vacuum line");
    }
  }
}

}  // namespace

std::vector<cplx> solve_transversal(const SpectralModel& model, LogCoord base, double eps,
                                    const TransversalOptions& opts) {
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_input, "eps must be positive");
  std::vector<cplx> roots;
  for (std::size_t k = 0; k < model.components().size(); ++k) {
    const CMatrix b = model.block_matrix(k, base);
    const CVector ev = eigenvalues(b);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const cplx lambda = -ev(i);
      if (std::abs(std::abs(lambda) - eps) < opts.margin_rel * eps) {
        throw Error(ErrorCode::unreliable_contour, "spectrum too close to the transversal circle");
      }
      if (!(std::abs(lambda) < eps)) continue;
      double gap = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < ev.size(); ++j) {
        if (j != i) gap = std::min(gap, std::abs(ev(j) - ev(i)));
      }
      // Newton on log det converges only linearly at multiple roots; keep those as computed.
      roots.push_back(gap > 1e-6 ? newton_transversal(b, lambda, opts.max_newton) : lambda);
    }
  }
  const int count = det_winding(model, base, eps, opts.nodes);
  if (static_cast<int>(roots.size()) != count) {
    throw Error(ErrorCode::root_bracketing, "roots found do not match the winding count");
  }
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    return arg_0_2pi(x) < arg_0_2pi(y);
  });
  return roots;
}

LogCoord solve_graph_point(const SpectralModel& model, Plane plane, cplx fixed, cplx seed, const GraphOptions& opts) {
  if (graph_root_count(model, plane, fixed, opts) != 1) {
    throw Error(ErrorCode::branch_ambiguity, "graph disc does not contain exactly one root");
  }
  auto root = newton_graph(model, plane, fixed, seed, opts);
  if (!root) root = newton_graph(model, plane, fixed, 0.0, opts);
  if (!root) throw Error(ErrorCode::branch_ambiguity, "Newton iteration did not reach the graph root");
  return on_plane(plane, fixed, *root);
}

std::vector<SpectrumSample> trace_graph(const SpectralModel& model, Plane plane, const Region& region, double step,
                                        const GraphOptions& opts) {
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_input, "step must be positive");
  check_region(model, plane, region, opts.eps);
  const int nx = static_cast<int>(std::floor((region.re1 - region.re0) / step + 1e-9)) + 1;
  const int ny = static_cast<int>(std::floor((region.im1 - region.im0) / step + 1e-9)) + 1;
  const BranchTag tag = plane == Plane::b_plane ? BranchTag::graph_over_b : BranchTag::graph_over_a;

  std::vector<SpectrumSample> out;
  out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  std::optional<std::pair<cplx, cplx>> prev;
  for (int j = 0; j < ny; ++j) {
    for (int ii = 0; ii < nx; ++ii) {
      const int i = j % 2 == 0 ? ii : nx - 1 - ii;
      const cplx fixed(region.re0 + i * step, region.im0 + j * step);
      cplx value;
      if (prev) {
        value = continue_to(model, plane, prev->first, prev->second, fixed, 0, opts);
      } else {
        const LogCoord first = solve_graph_point(model, plane, fixed, 0.0, opts);
        value = plane == Plane::b_plane ? first.a : first.b;
      }
      prev = {fixed, value};
      const LogCoord at = on_plane(plane, fixed, value);
      const SpectralIndicator ind = indicator(model, at, opts.ker_tol);
      out.push_back({at, ind.sigma_min, ind.kernel_dim, tag});
    }
  }
  return out;
}

TubeAudit tube_audit(const std::vector<SpectrumSample>& samples, double eps, const DualLattice& dual,
                     double core_cells) {
  TubeAudit out;
  auto in_cells = [&](cplx c) {
    auto [m1, m2] = dual.coordinates(c);
    return std::abs(m1) <= core_cells && std::abs(m2) <= core_cells;
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const LogCoord at = samples[i].coord;
    if (in_cells(at.b) && in_cells(std::conj(at.a))) {
      ++out.skipped_core;
      continue;
    }
    ++out.checked;
    const double d = vacuum_distance(at, dual);
    out.max_distance = std::max(out.max_distance, d);
    if (!(d < eps)) out.violations.emplace_back(i, d);
  }
  return out;
}

}  // namespace specurve
