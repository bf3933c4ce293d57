#include "specurve/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "specurve/error.hpp"

namespace specurve {

namespace {

SectionCoeffs normalized_by_v0(const SectionCoeffs& s) {
  auto it = s.first.find(DualPoint{});
  const cplx pivot = it == s.first.end() ? cplx(0.0) : it->second;
  if (!(std::abs(pivot) >= 1e-6)) throw Error(ErrorCode::wrong_branch, "v_0 coefficient is too small to normalize");
  SectionCoeffs out = s;
  for (auto& kv : out.first) kv.second /= pivot;
  for (auto& kv : out.second) kv.second /= pivot;
  return out;
}

}  // namespace

double rho_defect(const SpectralModel& model, LogCoord coord) {
  const LogCoord image = apply_symmetry(SymmetryKind::rho, coord, 0.0, model.dual());
  return std::abs(indicator(model, coord).sigma_min - indicator(model, image).sigma_min);
}

double periodicity_defect(const SpectralModel& model, LogCoord coord, cplx c) {
  const LogCoord image = apply_symmetry(SymmetryKind::tc, coord, c, model.dual());
  return std::abs(indicator(model, coord).sigma_min - indicator(model, image).sigma_min);
}

double j_compatibility_defect(const SpectralModel& model, const SpectrumSample& sample, double ker_tol) {
  const LogCoord image = apply_symmetry(SymmetryKind::rho, sample.coord, 0.0, model.dual());
  const SectionCoeffs here = kernel_vector(model, sample.coord, ker_tol);
  const SectionCoeffs there = kernel_vector(model, image, ker_tol);
  return wiener_norm(subtract(normalized_by_v0(there), normalized_by_v0(j_image(here))));
}

SymmetryAudit symmetry_audit(const SpectralModel& model, const std::vector<SpectrumSample>& samples, double ker_tol,
                             Exec exec) {
  const int n = static_cast<int>(samples.size());
  std::vector<double> rho(samples.size()), per(samples.size()), jd(samples.size());
  const DualLattice& dual = model.dual();
  auto one = [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    rho[k] = rho_defect(model, samples[k].coord);
    per[k] = std::max(periodicity_defect(model, samples[k].coord, dual.c1),
                      periodicity_defect(model, samples[k].coord, dual.c2));
    jd[k] = j_compatibility_defect(model, samples[k], ker_tol);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) one(i);
  } else {
    for (int i = 0; i < n; ++i) one(i);
  }
  SymmetryAudit out;
  out.checked = n;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    out.max_rho = std::max(out.max_rho, rho[k]);
    out.max_periodicity = std::max(out.max_periodicity, per[k]);
    out.max_j = std::max(out.max_j, jd[k]);
  }
  return out;
}

}  // namespace specurve
