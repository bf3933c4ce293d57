#include "specurve/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specurve/error.hpp"

namespace specurve {

namespace {

constexpr double kPi = std::numbers::pi;

double arg_0_2pi(cplx c) {
  double t = std::arg(c);
  if (t < 0.0) t += 2.0 * kPi;
  // -0.0 and values rounding to 2*pi both belong at the start of the range.
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

// Strict ordering used for enumeration and generator selection.
bool lattice_order(cplx x, cplx y) {
  const double ax = std::abs(x), ay = std::abs(y);
  const double scale = 1e-12 * (1.0 + std::max(ax, ay));
  if (std::abs(ax - ay) > scale) return ax < ay;
  if (ax <= scale) return false;  // both zero
  const double tx = arg_0_2pi(x), ty = arg_0_2pi(y);
  if (std::abs(tx - ty) > 1e-12) return tx < ty;
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

}  // namespace

TorusLattice::TorusLattice(cplx gamma1, cplx gamma2) : gamma1_(gamma1), gamma2_(gamma2) {
  covolume_ = std::abs((std::conj(gamma1) * gamma2).imag());
  const double scale = std::abs(gamma1) * std::abs(gamma2);
  if (!std::isfinite(covolume_) || scale == 0.0 || covolume_ <= 1e-12 * scale) {
    throw Error(ErrorCode::invalid_input, "lattice generators are collinear");
  }
}

std::pair<double, double> DualLattice::coordinates(cplx c) const {
  const double det = cross(c1, c2);
  return {cross(c, c2) / det, cross(c1, c) / det};
}

DualPoint DualLattice::nearest_index(cplx c) const {
  auto [mu1, mu2] = coordinates(c);
  return {static_cast<int>(std::lround(mu1)), static_cast<int>(std::lround(mu2))};
}

bool DualLattice::contains(cplx c, double tol) const {
  const DualPoint p = nearest_index(c);
  return std::abs(point(p) - c) <= tol * std::max(1.0, std::abs(c1));
}

DualPoint DualLattice::index_of(cplx c, double tol) const {
  if (!contains(c, tol)) {
    throw Error(ErrorCode::invalid_input, "frequency is not a point of the dual lattice");
  }
  return nearest_index(c);
}

double DualLattice::distance_to_lattice(cplx z) const {
  // Reduced generators make the rounded point a neighbor of the true nearest one.
  const DualPoint p = nearest_index(z);
  double best = std::abs(z - point(p));
  for (int dm = -2; dm <= 2; ++dm) {
    for (int dn = -2; dn <= 2; ++dn) {
      best = std::min(best, std::abs(z - point({p.m + dm, p.n + dn})));
    }
  }
  return best;
}

double DualLattice::min_length() const { return std::min(std::abs(c1), std::abs(c2)); }

double congruence_defect(cplx c, cplx gamma) {
  // -conj(c)*gamma + c*conj(gamma) = 2i*Im(c*conj(gamma)); test Im(...) against pi*Z.
  const double t = (c * std::conj(gamma)).imag() / kPi;
  return std::abs(t - std::round(t));
}

DualLattice dual_lattice(const TorusLattice& lat) {
  // Im(c*conj(gamma)) = y*Re(gamma) - x*Im(gamma) for c = x + iy.
  const cplx g1 = lat.gamma1(), g2 = lat.gamma2();
  const double m11 = -g1.imag(), m12 = g1.real();
  const double m21 = -g2.imag(), m22 = g2.real();
  const double det = m11 * m22 - m12 * m21;
  if (std::abs(det) <= 1e-14 * std::abs(g1) * std::abs(g2)) {
    throw Error(ErrorCode::invalid_input, "lattice generators are collinear");
  }
  // Columns of pi * M^{-1}.
  cplx d1(kPi * m22 / det, -kPi * m21 / det);
  cplx d2(-kPi * m12 / det, kPi * m11 / det);

  // Lagrange-Gauss reduction.
  for (int it = 0; it < 200; ++it) {
    if (std::norm(d2) < std::norm(d1)) std::swap(d1, d2);
    const double mu = std::round((d1.real() * d2.real() + d1.imag() * d2.imag()) / std::norm(d1));
    if (mu == 0.0) break;
    d2 -= mu * d1;
  }

  std::vector<cplx> candidates;
  for (int m = -2; m <= 2; ++m) {
    for (int n = -2; n <= 2; ++n) {
      if (m == 0 && n == 0) continue;
      candidates.push_back(double(m) * d1 + double(n) * d2);
    }
  }
  std::sort(candidates.begin(), candidates.end(), lattice_order);
  const cplx c1 = candidates.front();
  cplx c2 = c1;
  for (cplx c : candidates) {
    if (std::abs(cross(c1, c)) > 1e-9 * std::norm(c1)) {
      c2 = c;
      break;
    }
  }
  return DualLattice{c1, c2};
}

std::vector<DualPoint> enumerate_dual_points(const DualLattice& dual, double radius) {
  std::vector<DualPoint> out;
  if (!(radius >= 0.0)) return out;
  // |mu_i| <= radius * |row i of the inverse basis|.
  const double det = cross(dual.c1, dual.c2);
  const int mmax = static_cast<int>(std::ceil(radius * std::abs(dual.c2) / std::abs(det))) + 1;
  const int nmax = static_cast<int>(std::ceil(radius * std::abs(dual.c1) / std::abs(det))) + 1;
  const double limit = radius * (1.0 + 1e-12) + 1e-300;
  for (int m = -mmax; m <= mmax; ++m) {
    for (int n = -nmax; n <= nmax; ++n) {
      if (std::abs(dual.point({m, n})) <= limit) out.push_back({m, n});
    }
  }
  std::sort(out.begin(), out.end(), [&](DualPoint x, DualPoint y) {
    return lattice_order(dual.point(x), dual.point(y));
  });
  return out;
}

std::vector<cplx> enumerate_dual(const DualLattice& dual, double radius) {
  std::vector<cplx> out;
  for (DualPoint p : enumerate_dual_points(dual, radius)) out.push_back(dual.point(p));
  return out;
}

std::pair<cplx, cplx> log_multiplier(LogCoord coord, const TorusLattice& lat) {
  const cplx g1 = lat.gamma1(), g2 = lat.gamma2();
  return {coord.a * g1 + coord.b * std::conj(g1), coord.a * g2 + coord.b * std::conj(g2)};
}

Multiplier exp_multiplier(LogCoord coord, const TorusLattice& lat) {
  auto [l1, l2] = log_multiplier(coord, lat);
  return {std::exp(l1), std::exp(l2)};
}

bool multiplier_is_real(LogCoord coord, const TorusLattice& lat, double tol) {
  auto [l1, l2] = log_multiplier(coord, lat);
  auto off_pi_z = [](double t) { return std::abs(t - kPi * std::round(t / kPi)); };
  return off_pi_z(l1.imag()) <= tol && off_pi_z(l2.imag()) <= tol;
}

LogCoord apply_symmetry(SymmetryKind kind, LogCoord coord, cplx c, const DualLattice& dual) {
  if (kind == SymmetryKind::rho) return {std::conj(coord.b), std::conj(coord.a)};
  if (!dual.contains(c)) {
    throw Error(ErrorCode::invalid_input, "symmetry shift is not a point of the dual lattice");
  }
  if (kind == SymmetryKind::tc) return {coord.a - std::conj(c), coord.b + c};
  return {coord.a + std::conj(c), coord.b + c};
}

DomainReduction reduce_to_domain(LogCoord coord, const DualLattice& dual) {
  // a = mu1*conj(c1) + mu2*conj(c2) is the conjugate of conj(a) in the c-basis.
  auto [mu1, mu2] = dual.coordinates(std::conj(coord.a));
  constexpr double nudge = 1e-12;
  const int n1 = static_cast<int>(std::floor(mu1 + 0.5 + nudge));
  const int n2 = static_cast<int>(std::floor(mu2 + 0.5 + nudge));
  const cplx c = dual.point({n1, n2});
  if (n1 == 0 && n2 == 0) return {coord, cplx(0.0, 0.0)};
  return {{coord.a - std::conj(c), coord.b + c}, c};
}

}  // namespace specurve
