#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "specurve/error.hpp"
#include "specurve/kernel.hpp"

using namespace specurve;

TEST_CASE("indicator examples") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  const Potential zero(d);
  CHECK(std::abs(indicator(0.25, cplx(0.0, 0.25), zero, 3.0, lat).sigma_min - 0.25) < 1e-15);
  const SpectralIndicator on_line = indicator(0.1, 0.5, zero, 3.0, lat);
  CHECK(on_line.sigma_min < 1e-15);
  CHECK(on_line.kernel_dim == 1);
  const Potential q = Potential::constant(d, 0.3);
  const SpectralIndicator hyp = indicator(-0.09, 1.0, q, 4.0, lat);
  CHECK(hyp.sigma_min < 1e-10);
  CHECK(hyp.kernel_dim == 1);
  CHECK(indicator(0.2, 0.3, q, 4.0, lat).sigma_min > 1e-3);
}

TEST_CASE("kernel vectors") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  const SpectralModel cq(lat, Potential::constant(d, 0.3), 4.0);
  const SectionCoeffs k = kernel_vector(cq, {-0.09, 1.0});
  // [[1, -0.3], [0.3, -0.09]] u = 0 gives u proportional to (0.3, 1).
  const double n = std::sqrt(1.09);
  CHECK(std::abs(k.first.at(DualPoint{}) - 0.3 / n) < 1e-12);
  CHECK(std::abs(k.second.at(DualPoint{}) - 1.0 / n) < 1e-12);
  CHECK(std::abs(wiener_norm(k) - 1.3 / n) < 1e-12);

  const SpectralModel vac(lat, Potential(d), 3.0);
  const SectionCoeffs w0 = kernel_vector(vac, {0.0, 0.3});
  CHECK(std::abs(w0.second.at(DualPoint{}) - 1.0) < 1e-15);
  CHECK(std::abs(wiener_norm(w0) - 1.0) < 1e-15);
  CHECK_THROWS_AS(kernel_vector(vac, {0.2, 0.3}), Error);
}

TEST_CASE("riesz projector examples") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  const SpectralModel vac(lat, Potential(d), 3.0);
  const int v0 = *vac.index_of(Species::v, DualPoint{});
  const int w0 = *vac.index_of(Species::w, DualPoint{});

  const Projector p1 = riesz_projector(vac, {0.0, 0.3}, 0.1);
  CHECK(p1.rank == 1);
  CHECK(std::abs(p1.matrix(w0, w0) - 1.0) < 1e-10);
  CHECK(std::abs(p1.trace - 1.0) < 1e-10);

  const Projector p0 = riesz_projector(vac, {0.3, 0.3}, 0.1);
  CHECK(p0.rank == 0);
  CHECK(p0.matrix.norm() < 1e-12);

  const Projector p2 = riesz_projector(vac, {0.0, 0.0}, 0.1);
  CHECK(p2.rank == 2);
  CHECK(std::abs(p2.matrix(v0, v0) - 1.0) < 1e-10);
  CHECK(std::abs(p2.matrix(w0, w0) - 1.0) < 1e-10);
  CHECK(p2.idempotency_defect < 1e-10);

  const SpectralModel cq(lat, Potential::constant(d, 0.3), 4.0);
  for (LogCoord c : {LogCoord{0.0, 0.0}, LogCoord{-0.09, 1.0}, LogCoord{0.0, 0.3}, LogCoord{0.1, 0.6}}) {
    const Projector p = riesz_projector(cq, c, 0.1);
    CHECK(p.idempotency_defect < 1e-8);
    CHECK(std::abs(p.trace - double(p.rank)) < 1e-6);
    CHECK(p.rank == det_winding(cq, c, 0.1));
  }
}

TEST_CASE("restricted pencil discriminants") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  const SpectralModel vac(lat, Potential(d), 3.0);
  const RestrictedPencil pv(vac, 0.0, 0.0, 0.3);
  for (cplx x : {cplx(0.05), cplx(0.0, 0.07), cplx(-0.03, 0.02)}) {
    CHECK(std::abs(pv.at(x).discriminant - 4.0 * x * x) < 1e-12);
  }

  const SpectralModel cq(lat, Potential::constant(d, 0.3), 4.0);
  // Coupled pair: block [[lambda - x, -0.3], [0.3, lambda + x]], discriminant 4x^2 - 0.36.
  const RestrictedPencil coupled(cq, -0.5, 0.5, 0.9);
  for (cplx x : {cplx(0.05), cplx(0.0, 0.1), cplx(0.1, -0.1)}) {
    CHECK(std::abs(coupled.at(x).discriminant - (4.0 * x * x - 0.36)) < 1e-9);
  }
  const int wind = count_zeros_winding([&](cplx x) { return coupled.at(x).discriminant; }, 0.0, 0.6, 64);
  CHECK(wind == 2);
}

TEST_CASE("argument principle") {
  CHECK(count_zeros_winding([](cplx z) { return z * z; }, 0.0, 1.0) == 2);
  CHECK(count_zeros_winding([](cplx z) { return z - 0.5; }, 0.0, 1.0) == 1);
  CHECK(count_zeros_winding([](cplx z) { return z - 0.5; }, 0.0, 0.25) == 0);
  CHECK_THROWS_AS(count_zeros_winding([](cplx z) { return z - 1.0; }, 0.0, 1.0, 64), Error);
}

TEST_CASE("indicator sweep over the vacuum matches the distance function") {
  const TorusLattice lat = testing::square();
  const DualLattice d = dual_lattice(lat);
  const SpectralModel vac(lat, Potential(d), 3.0);
  SliceGrid g;
  g.origin = {cplx(0.05, 0.02), cplx(0.1, -0.2)};
  g.dir1 = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
  g.dir2 = {cplx(0.0, 0.0), cplx(1.0, 1.0)};
  g.s0 = -0.7, g.s1 = 0.7, g.t0 = -0.6, g.t1 = 0.6;
  g.n1 = 9, g.n2 = 7;
  const auto vals = indicator_sweep(vac, g, 1e-7, Exec::serial);
  REQUIRE(vals.size() == 63);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const LogCoord p = g.point(i, j);
      double dist = 1e300;
      for (cplx c : enumerate_dual(d, 6.0)) dist = std::min({dist, std::abs(p.b - c), std::abs(p.a - std::conj(c))});
      CHECK(std::abs(vals[static_cast<std::size_t>(j * g.n1 + i)].sigma_min - dist) < 1e-12);
    }
  }
}
