#ifndef SPECURVE_CONTOUR_HPP
#define SPECURVE_CONTOUR_HPP

#include <functional>
#include <vector>

#include "specurve/linalg.hpp"

namespace specurve {

struct QuadratureOptions {
  int nodes = 32;
  int max_nodes = 4096;
  // Stop doubling once the max-entry change drops below tol.
  double tol = 1e-9;
  // Largest admissible condition number of a resolvent at a node.
  double cond_max = 1e12;
  Exec exec = Exec::parallel;
};

struct ContourResult {
  CMatrix p;
  int nodes = 0;
};

// Trapezoid approximation of (1/2 pi i) \oint_{|lambda - mu| = r} (lambda + d)^{-1} dlambda,
// the spectral projector of -d for its eigenvalues inside the circle.
// Throws ill_conditioned_contour when a node resolvent exceeds cond_max.
ContourResult resolvent_contour(const CMatrix& d, cplx mu, double r, const QuadratureOptions& opts);

// Discrete winding number of sampled nonvanishing values along a closed loop.
double winding_from_samples(const std::vector<cplx>& values);
// Same, from continuous branches of log f (only the imaginary parts matter).
double winding_from_phases(const std::vector<double>& phases);

// Zeros (with multiplicity) of f inside the circle, by the argument principle.
// Nodes are doubled while consecutive phase steps exceed pi/2.
int count_zeros_winding(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes = 64,
                        double floor = 1e-12);
// Variant for functions given through log f, e.g. determinants of large blocks.
int count_zeros_winding_log(const std::function<LogDet(cplx)>& logf, cplx center, double radius,
                            int nodes = 64, double floor = 1e-12);

// Rounds a winding value, throwing unreliable_contour if it is not near an integer.
int round_winding(double w);

}  // namespace specurve

#endif  // SPECURVE_CONTOUR_HPP
