#ifndef SPECURVE_KERNEL_HPP
#define SPECURVE_KERNEL_HPP

#include <limits>
#include <utility>
#include <vector>

#include "specurve/contour.hpp"

namespace specurve {

struct Tolerances {
  double ker_tol = 1e-7;
  double proj_tol = 1e-8;
  double fit_tol = 1e-8;
  double tol_vac = 1e-9;
  double cond_max = 1e12;
  double winding_floor = 1e-12;
  double quad_tol = 1e-9;
  double zero_sep_rel = 1e-4;
  double multiplier_tol = 1e-8;
};

struct SpectralIndicator {
  double sigma_min = 0.0;
  // lowest() stands in for log 0.
  double log_abs_det = 0.0;
  LogCoord at{};
  double R = 0.0;
  int kernel_dim = 0;
};

SpectralIndicator indicator(const SpectralModel& model, LogCoord at, double ker_tol = 1e-7);
SpectralIndicator indicator(cplx a, cplx b, const Potential& q, double R, const TorusLattice& lat);

// Unit right singular vector of the smallest singular value, phase fixed so the
// largest coefficient is positive real. Throws no_kernel above ker_tol.
SectionCoeffs kernel_vector(const SpectralModel& model, LogCoord at, double ker_tol = 1e-7);
CVector kernel_column(const SpectralModel& model, LogCoord at, double ker_tol = 1e-7);
// All singular directions below ker_tol, ordered by their dominant basis index.
std::vector<CVector> kernel_basis(const SpectralModel& model, LogCoord at, double ker_tol = 1e-7);
// Second smallest singular value over the whole truncation.
double second_singular_value(const SpectralModel& model, LogCoord at);

struct Projector {
  CMatrix matrix;
  LogCoord center{};
  double radius = 0.0;
  int nodes = 0;
  int rank = 0;
  cplx trace = 0.0;
  double idempotency_defect = 0.0;
};

struct ProjectorOptions {
  QuadratureOptions quad;
  // Required gap between the circle and the eigenvalues; negative means radius/10.
  double margin = -1.0;
};

// Projector of the transversal family (a + lambda, b + lambda), |lambda| = eps.
// Its rank counts the zeros of lambda -> det D_{a+lambda,b+lambda} in the disc.
Projector riesz_projector(const SpectralModel& model, LogCoord center, double eps,
                          const ProjectorOptions& opts = {});

// Zeros of det along the transversal family inside |lambda| < eps.
int det_winding(const SpectralModel& model, LogCoord base, double eps, int nodes = 64, double floor = 0.0);

// Matrix of D restricted to the range of the double-point projector at x.
struct PencilSample {
  cplx x = 0.0;
  cplx p1 = 0.0;
  cplx p2 = 0.0;
  cplx discriminant = 0.0;
  int rank = 0;
  CMatrix restricted;
};

// Family x -> (conj(c'') + x, c' - x) + (lambda, lambda) around the vacuum
// double point (conj(c''), c'), restricted to the components holding v_{c'} and w_{c''}.
class RestrictedPencil {
 public:
  RestrictedPencil(const SpectralModel& model, cplx c_second, cplx c_first, double lambda_radius,
                   QuadratureOptions quad = {});

  LogCoord base(cplx x) const;
  CMatrix matrix(cplx x) const;
  // Throws unexpected_rank unless the projector has rank 2.
  PencilSample at(cplx x) const;
  CMatrix projector(cplx x) const;
  // Eigenvalues of -D(x) on the restricted space; these are the lambda roots.
  CVector roots(cplx x) const;

  const std::vector<std::size_t>& components() const { return comps_; }
  // Global basis indices in the local order of matrix().
  const std::vector<int>& indices() const { return indices_; }
  int local_v() const { return local_v_; }
  int local_w() const { return local_w_; }
  double lambda_radius() const { return lambda_radius_; }
  cplx c_first() const { return c_first_; }
  cplx c_second() const { return c_second_; }

 private:
  const SpectralModel* model_;
  cplx c_second_;
  cplx c_first_;
  double lambda_radius_;
  QuadratureOptions quad_;
  std::vector<std::size_t> comps_;
  std::vector<int> indices_;
  int local_v_ = -1;
  int local_w_ = -1;
};

// 2-real-dimensional slice origin + s*dir1 + t*dir2 of C^2.
struct SliceGrid {
  LogCoord origin{};
  LogCoord dir1{cplx(1.0), cplx(0.0)};
  LogCoord dir2{cplx(0.0), cplx(1.0)};
  double s0 = 0.0, s1 = 1.0, t0 = 0.0, t1 = 1.0;
  int n1 = 2, n2 = 2;

  // Point (i, j), i along dir1; i and j run over [0, n1) and [0, n2).
  LogCoord point(int i, int j) const;
};

// Row-major in j: entry j * n1 + i.
std::vector<SpectralIndicator> indicator_sweep(const SpectralModel& model, const SliceGrid& grid,
                                               double ker_tol = 1e-7, Exec exec = Exec::parallel);

}  // namespace specurve

#endif  // SPECURVE_KERNEL_HPP
