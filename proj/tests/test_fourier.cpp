#include <doctest.h>

#include <cmath>
#include <random>

#include "common.hpp"
#include "specurve/error.hpp"
#include "specurve/fourier.hpp"

using namespace specurve;

namespace {

cplx character(cplx c, cplx z) { return std::exp(-std::conj(c) * z + c * std::conj(z)); }

// Pointwise-grid oracle: evaluate on an N x N grid of the fundamental cell,
// multiply by M(z) and recover the coefficients with a plain DFT.
SectionCoeffs grid_oracle(const Potential& q, const SectionCoeffs& s, const TorusLattice& lat, double radius,
                          int N) {
  const DualLattice d = dual_lattice(lat);
  const std::vector<DualPoint> targets = enumerate_dual_points(d, radius);
  SectionCoeffs out;
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      const cplx z = (double(j) / N) * lat.gamma1() + (double(k) / N) * lat.gamma2();
      cplx qz = 0.0;
      for (const auto& [p, v] : q.coeffs()) qz += v * character(d.point(p), z);
      const auto [u1, u2] = evaluate_pointwise(s, z, d);
      const cplx r1 = -std::conj(qz) * u2, r2 = qz * u1;
      for (DualPoint p : targets) {
        const cplx c = d.point(p);
        out.first[p] += r1 * std::conj(character(-c, z)) / double(N * N);
        out.second[p] += r2 * std::conj(character(c, z)) / double(N * N);
      }
    }
  }
  return out;
}

double distance(const SectionCoeffs& x, const SectionCoeffs& y) { return wiener_norm(subtract(x, y)); }

}  // namespace

TEST_CASE("wiener norm") {
  CHECK(wiener_norm(SectionCoeffs{}) == 0.0);
  SectionCoeffs psi;
  psi.second[DualPoint{}] = 1.0;
  CHECK(wiener_norm(psi) == 1.0);
  psi.first[DualPoint{}] = 0.3;
  CHECK(std::abs(wiener_norm(psi) - 1.3) < 1e-15);
}

TEST_CASE("assembled matrix") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  const cplx a(0.1, 0.2), b(-0.3, 0.05);

  const SpectralModel vac(lat, Potential(d), 2.0);
  const CMatrix m0 = vac.assemble({a, b}).entries;
  CHECK((m0 - CMatrix(m0.diagonal().asDiagonal())).norm() == 0.0);
  for (Eigen::Index i = 0; i < m0.rows(); ++i) {
    const BasisIndex& bi = vac.basis()[static_cast<std::size_t>(i)];
    const cplx expect = bi.species == Species::v ? b - bi.c : a - std::conj(bi.c);
    CHECK(std::abs(m0(i, i) - expect) < 1e-15);
  }

  const SpectralModel cq(lat, Potential::constant(d, 0.3), 2.0);
  const CMatrix m1 = cq.assemble({a, b}).entries;
  for (DualPoint p : enumerate_dual_points(d, 2.0)) {
    const int v = *cq.index_of(Species::v, p);
    const int w = *cq.index_of(Species::w, -p);
    const cplx c = d.point(p);
    CHECK(std::abs(m1(v, v) - (b - c)) < 1e-15);
    CHECK(std::abs(m1(w, w) - (a + std::conj(c))) < 1e-15);
    CHECK(std::abs(m1(v, w) + 0.3) < 1e-15);
    CHECK(std::abs(m1(w, v) - 0.3) < 1e-15);
    CHECK(cq.component_of(v) == cq.component_of(w));
  }

  const SpectralModel single(lat, Potential(d, {{0.5, cplx(0.2, 0.1)}}), 2.0);
  const CMatrix m2 = single.assemble({a, b}).entries;
  const int v0 = *single.index_of(Species::v, DualPoint{});
  const int w1 = *single.index_of(Species::w, DualPoint{1, 0});
  int off = 0;
  for (Eigen::Index i = 0; i < m2.rows(); ++i) {
    if (i != v0 && m2(i, v0) != cplx(0.0)) ++off;
  }
  CHECK(off == 1);
  CHECK(m2(w1, v0) == cplx(0.2, 0.1));
}

TEST_CASE("pointwise evaluation") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  SectionCoeffs psi;
  psi.second[DualPoint{}] = 1.0;
  for (cplx z : {cplx(0.0), cplx(1.3, -0.4)}) {
    const auto [u1, u2] = evaluate_pointwise(psi, z, d);
    CHECK(std::abs(u1) == 0.0);
    CHECK(std::abs(u2 - 1.0) < 1e-15);
  }
  SectionCoeffs v;
  v.first[DualPoint{1, 0}] = 1.0;
  CHECK(std::abs(std::abs(evaluate_pointwise(v, testing::kPi / 2.0, d).first) - 1.0) < 1e-15);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SectionCoeffs s;
  for (DualPoint p : enumerate_dual_points(d, 1.2)) {
    s.first[p] = cplx(u(rng), u(rng));
    s.second[p] = cplx(u(rng), u(rng));
  }
  const cplx z(0.7, 2.1);
  const auto here = evaluate_pointwise(s, z, d);
  for (cplx g : {lat.gamma1(), lat.gamma2()}) {
    const auto there = evaluate_pointwise(s, z + g, d);
    CHECK(std::abs(here.first - there.first) < 1e-10);
    CHECK(std::abs(here.second - there.second) < 1e-10);
  }
}

TEST_CASE("multiply_by_potential agrees with the grid oracle") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<std::pair<cplx, cplx>> terms;
    for (DualPoint p : enumerate_dual_points(d, 1.0)) {
      if (u(rng) > 0.0) terms.emplace_back(d.point(p), cplx(u(rng), u(rng)));
    }
    const Potential q(d, terms);
    SectionCoeffs s;
    for (DualPoint p : enumerate_dual_points(d, 1.5)) {
      if (u(rng) > -0.3) s.first[p] = cplx(u(rng), u(rng));
      if (u(rng) > -0.3) s.second[p] = cplx(u(rng), u(rng));
    }
    // Output support lies in |c| <= 2.5; N = 24 resolves every difference of frequencies.
    const SectionCoeffs fast = multiply_by_potential(q, s);
    const SectionCoeffs slow = grid_oracle(q, s, lat, 2.6, 24);
    CHECK(distance(fast, slow) < 1e-8);
  }
}

TEST_CASE("potential multiplication examples") {
  const DualLattice d = dual_lattice(testing::square());
  SectionCoeffs v0;
  v0.first[DualPoint{}] = 1.0;
  CHECK(wiener_norm(multiply_by_potential(Potential(d), v0)) == 0.0);
  const Potential q = Potential::constant(d, cplx(0.3, 0.1));
  const SectionCoeffs once = multiply_by_potential(q, v0);
  SectionCoeffs expect;
  expect.second[DualPoint{}] = cplx(0.3, 0.1);
  CHECK(distance(once, expect) < 1e-15);
  const SectionCoeffs twice = multiply_by_potential(q, once);
  SectionCoeffs minus;
  minus.first[DualPoint{}] = -0.1;
  CHECK(distance(twice, minus) < 1e-15);
}

TEST_CASE("gauge shifts") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  SectionCoeffs s;
  s.first[DualPoint{1, 1}] = cplx(0.4, -0.2);
  s.second[DualPoint{0, -1}] = cplx(1.0, 0.5);
  s.second[DualPoint{2, 0}] = cplx(-0.3, 0.0);
  CHECK(distance(gauge_shift(GaugeKind::tc, 0.0, s, d), s) == 0.0);

  const cplx c(0.5, -0.5);
  const SectionCoeffs t = gauge_shift(GaugeKind::tc, c, s, d);
  CHECK(t.second.at(DualPoint{1, -2}) == cplx(1.0, 0.5));
  CHECK(std::abs(wiener_norm(t) - wiener_norm(s)) < 1e-15);
  const SectionCoeffs T = gauge_shift(GaugeKind::Tc, c, s, d);
  CHECK(std::abs(wiener_norm(T) - wiener_norm(s)) < 1e-15);

  for (cplx z : {cplx(0.3, 0.9), cplx(-2.0, 4.0)}) {
    const auto base = evaluate_pointwise(s, z, d);
    const auto ts = evaluate_pointwise(t, z, d);
    const auto Ts = evaluate_pointwise(T, z, d);
    CHECK(std::abs(ts.first - character(c, z) * base.first) < 1e-12);
    CHECK(std::abs(ts.second - character(c, z) * base.second) < 1e-12);
    CHECK(std::abs(Ts.first - character(c, z) * base.first) < 1e-12);
    CHECK(std::abs(Ts.second - character(-c, z) * base.second) < 1e-12);
  }
  CHECK_THROWS_AS(gauge_shift(GaugeKind::tc, 0.3, s, d), Error);
}

TEST_CASE("vacuum resolvent") {
  const DualLattice d = dual_lattice(testing::square());
  const CVector g = vacuum_resolvent_diag(0.25, cplx(0.0, 0.25), 2.0, d);
  CHECK(std::abs(g(0) - cplx(0.0, -4.0)) < 1e-14);
  CHECK(std::abs(g.cwiseAbs().maxCoeff() - 4.0) < 1e-14);
  CHECK(std::abs(vacuum_distance({0.25, cplx(0.0, 0.25)}, d) - 0.25) < 1e-15);
  CHECK_THROWS_AS(vacuum_resolvent_diag(0.1, 0.5, 2.0, d), Error);
}
