#include "specurve/contour.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "specurve/error.hpp"

namespace specurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sum over nodes theta_k = 2 pi (k + shift) / n of (lambda_k - mu) (lambda_k + d)^{-1}, divided by n.
CMatrix node_sum(const CMatrix& d, cplx mu, double r, int n, double shift, const QuadratureOptions& opts) {
  const Eigen::Index dim = d.rows();
  std::vector<CMatrix> terms(static_cast<std::size_t>(n));
  std::atomic<bool> bad{false};
  auto node = [&](int k) {
    const cplx step = std::polar(r, kTwoPi * (k + shift) / n);
    CMatrix m = d;
    m.diagonal().array() += mu + step;
    Eigen::PartialPivLU<CMatrix> lu(m);
    const double rc = lu.rcond();
    if (!(rc * opts.cond_max >= 1.0)) {
      bad = true;
      return;
    }
    terms[static_cast<std::size_t>(k)] = step * lu.inverse();
  };
  if (opts.exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) node(k);
  } else {
    for (int k = 0; k < n; ++k) node(k);
  }
  if (bad) throw Error(ErrorCode::ill_conditioned_contour, "resolvent too ill-conditioned on the contour");
  CMatrix total = CMatrix::Zero(dim, dim);
  for (const CMatrix& t : terms) total += t;
  return total / static_cast<double>(n);
}

}  // namespace

ContourResult resolvent_contour(const CMatrix& d, cplx mu, double r, const QuadratureOptions& opts) {
  if (!(r > 0.0) || opts.nodes < 1) throw Error(ErrorCode::invalid_input, "contour radius and node count must be positive");
  int n = opts.nodes;
  CMatrix p = node_sum(d, mu, r, n, 0.0, opts);
  while (true) {
    if (2 * n > opts.max_nodes) {
      throw Error(ErrorCode::ill_conditioned_contour, "contour quadrature did not converge");
    }
    // The doubled rule reuses the old nodes and adds the midpoints.
    CMatrix refined = 0.5 * (p + node_sum(d, mu, r, n, 0.5, opts));
    const double change = (refined - p).cwiseAbs().maxCoeff();
    p = std::move(refined);
    n *= 2;
    if (change < opts.tol) break;
  }
  return {std::move(p), n};
}

double winding_from_phases(const std::vector<double>& phases) {
  double total = 0.0;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const double next = phases[(k + 1) % phases.size()];
    total += std::remainder(next - phases[k], kTwoPi);
  }
  return total / kTwoPi;
}

double winding_from_samples(const std::vector<cplx>& values) {
  double total = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    total += std::arg(values[(k + 1) % values.size()] / values[k]);
  }
  return total / kTwoPi;
}

int round_winding(double w) {
  const double r = std::round(w);
  if (!(std::abs(w - r) <= 0.25)) throw Error(ErrorCode::unreliable_contour, "winding number is not near an integer");
  return static_cast<int>(r);
}

namespace {

double max_phase_step(const std::vector<double>& phases) {
  double worst = 0.0;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    worst = std::max(worst, std::abs(std::remainder(phases[(k + 1) % phases.size()] - phases[k], kTwoPi)));
  }
  return worst;
}

template <class Sample>
int adaptive_winding(Sample sample, int nodes, int max_nodes = 8192) {
  if (nodes < 4) nodes = 4;
  while (true) {
    std::vector<double> phases(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) phases[static_cast<std::size_t>(k)] = sample(kTwoPi * k / nodes);
    if (max_phase_step(phases) <= std::numbers::pi / 2 || 2 * nodes > max_nodes) {
      return round_winding(winding_from_phases(phases));
    }
    nodes *= 2;
  }
}

}  // namespace

int count_zeros_winding(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes, double floor) {
  return adaptive_winding(
      [&](double t) {
        const cplx v = f(center + std::polar(radius, t));
        if (!(std::abs(v) >= floor)) throw Error(ErrorCode::unreliable_contour, "function vanishes near the contour");
        return std::arg(v);
      },
      nodes);
}

int count_zeros_winding_log(const std::function<LogDet(cplx)>& logf, cplx center, double radius, int nodes,
                            double floor) {
  const double log_floor = std::log(floor);
  return adaptive_winding(
      [&](double t) {
        const LogDet v = logf(center + std::polar(radius, t));
        if (v.singular || !(v.log_abs >= log_floor)) {
          throw Error(ErrorCode::unreliable_contour, "determinant vanishes near the contour");
        }
        return v.phase;
      },
      nodes);
}

}  // namespace specurve
