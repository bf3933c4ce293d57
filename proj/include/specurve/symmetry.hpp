#ifndef SPECURVE_SYMMETRY_HPP
#define SPECURVE_SYMMETRY_HPP

#include <vector>

#include "specurve/energy.hpp"

namespace specurve {

// |sigma_min(coord) - sigma_min(rho(coord))|.
double rho_defect(const SpectralModel& model, LogCoord coord);

// |sigma_min(coord) - sigma_min(t_c(coord))| for a dual lattice point c.
double periodicity_defect(const SpectralModel& model, LogCoord coord, cplx c);

// Wiener distance between the kernel section at rho(sigma), normalized by v_0 = 1,
// and the j-image of the section at sigma, normalized the same way.
double j_compatibility_defect(const SpectralModel& model, const SpectrumSample& sample, double ker_tol = 1e-7);

struct SymmetryAudit {
  int checked = 0;
  double max_rho = 0.0;
  double max_periodicity = 0.0;
  double max_j = 0.0;
};

// Checks every sample against rho, the two dual generators and j.
SymmetryAudit symmetry_audit(const SpectralModel& model, const std::vector<SpectrumSample>& samples,
                             double ker_tol = 1e-7, Exec exec = Exec::parallel);

}  // namespace specurve

#endif  // SPECURVE_SYMMETRY_HPP
