#ifndef SPECURVE_LATTICE_HPP
#define SPECURVE_LATTICE_HPP

#include <complex>
#include <compare>
#include <vector>

namespace specurve {

using cplx = std::complex<double>;

// Period lattice Gamma = Z*gamma1 + Z*gamma2 of the torus C/Gamma.
class TorusLattice {
 public:
  // Throws invalid_input when the generators are collinear.
  TorusLattice(cplx gamma1, cplx gamma2);

  cplx gamma1() const { return gamma1_; }
  cplx gamma2() const { return gamma2_; }
  // |Im(conj(gamma1) * gamma2)|, the area of a fundamental cell.
  double covolume() const { return covolume_; }

 private:
  cplx gamma1_;
  cplx gamma2_;
  double covolume_;
};

// Integer coordinates of a point m*c1 + n*c2 of the dual lattice.
struct DualPoint {
  int m = 0;
  int n = 0;

  friend auto operator<=>(const DualPoint&, const DualPoint&) = default;
  DualPoint operator+(DualPoint o) const { return {m + o.m, n + o.n}; }
  DualPoint operator-(DualPoint o) const { return {m - o.m, n - o.n}; }
  DualPoint operator-() const { return {-m, -n}; }
};

// Frequencies c with -conj(c)*gamma + c*conj(gamma) in 2*pi*i*Z for all gamma.
struct DualLattice {
  cplx c1;
  cplx c2;

  cplx point(DualPoint p) const { return double(p.m) * c1 + double(p.n) * c2; }
  // Real coordinates (mu1, mu2) with c = mu1*c1 + mu2*c2.
  std::pair<double, double> coordinates(cplx c) const;
  // Nearest integer coordinates; no membership check.
  DualPoint nearest_index(cplx c) const;
  // Membership to an absolute tolerance on the coordinates scaled by |c1|.
  bool contains(cplx c, double tol = 1e-12) const;
  // Integer coordinates of c; throws invalid_input if c is not in the lattice.
  DualPoint index_of(cplx c, double tol = 1e-12) const;
  // Distance from z to the nearest lattice point.
  double distance_to_lattice(cplx z) const;
  double min_length() const;
};

// Logarithmic spectral coordinates: omega = a dz + b d(zbar).
struct LogCoord {
  cplx a;
  cplx b;
};

// Values of h in Hom(Gamma, C*) on the two generators.
struct Multiplier {
  cplx h1;
  cplx h2;
};

enum class SymmetryKind { tc, Tc, rho };

DualLattice dual_lattice(const TorusLattice& lat);

// Residual of the defining congruence, reduced modulo 2*pi*i.
double congruence_defect(cplx c, cplx gamma);

// All c in the dual lattice with |c| <= radius, ordered by |c|, then by
// argument in [0, 2*pi), then by (Re, Im).
std::vector<cplx> enumerate_dual(const DualLattice& dual, double radius);
std::vector<DualPoint> enumerate_dual_points(const DualLattice& dual, double radius);

Multiplier exp_multiplier(LogCoord coord, const TorusLattice& lat);

// Periods a*gamma + b*conj(gamma) of the log multiplier on gamma1, gamma2.
std::pair<cplx, cplx> log_multiplier(LogCoord coord, const TorusLattice& lat);

// True when both log-multiplier periods have imaginary part within tol of pi*Z.
bool multiplier_is_real(LogCoord coord, const TorusLattice& lat, double tol);

LogCoord apply_symmetry(SymmetryKind kind, LogCoord coord, cplx c, const DualLattice& dual);

struct DomainReduction {
  LogCoord coord;
  cplx c;
};

// Moves coord by the tc action into the fundamental domain where
// a = l1*conj(c1) + l2*conj(c2) with l1, l2 in [-1/2, 1/2).
DomainReduction reduce_to_domain(LogCoord coord, const DualLattice& dual);

}  // namespace specurve

#endif  // SPECURVE_LATTICE_HPP
