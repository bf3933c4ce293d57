#ifndef SPECURVE_ENERGY_HPP
#define SPECURVE_ENERGY_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specurve/series.hpp"
#include "specurve/tracer.hpp"

namespace specurve {

enum class End { o, infinity };
std::string_view to_string(End e);

// Local chart of a graph end: x = 1/b, value a (end o) or x = 1/a, value b (end infinity).
struct EndChart {
  End end = End::o;
  std::vector<std::pair<cplx, cplx>> samples;
  // Power-series coefficients, constant term first.
  std::vector<cplx> fit;
  double residual = 0.0;

  cplx lambda() const { return fit.size() > 1 ? fit[1] : cplx(0.0); }
  // a(x), b(x) as Laurent series in the chart parameter.
  LaurentSeries a_series() const;
  LaurentSeries b_series() const;
};

// Least-squares fit of degree <= degree. Throws non_graph_end when the residual
// or the constant term exceeds 10 * fit_tol.
EndChart end_chart(End end, const std::vector<SpectrumSample>& samples, double fit_tol = 1e-8, int degree = 4);

struct SlopeEnergy {
  double W = 0.0;
  // |Im lambda| / |lambda|.
  double imag_ratio = 0.0;
  bool inconsistent = false;
};
SlopeEnergy willmore_slope(const EndChart& chart, const TorusLattice& lat);

struct ResidueEnergy {
  // Pairing at infinity (the reported value) and at o.
  double W = 0.0;
  double W_o = 0.0;
  // The theta pairing over a positive lattice basis at both ends.
  double hitchin_inf = 0.0;
  double hitchin_o = 0.0;
  // Largest imaginary part among the four complex values.
  double max_imag = 0.0;
};
ResidueEnergy willmore_residue(const EndChart& chart_o, const EndChart& chart_inf, const TorusLattice& lat);

// 4 * covolume * sum |q_c|^2.
double willmore_direct(const Potential& q, const TorusLattice& lat);

struct SectionDeviation {
  SectionCoeffs psi;
  double dev_o = 0.0;
  double dev_inf = 0.0;
};
// Kernel section normalized by w_0 = 1 over the b-plane and v_0 = 1 over the a-plane.
SectionDeviation kernel_section_deviation(const SpectralModel& model, const SpectrumSample& sample,
                                          double ker_tol = 1e-7);

// Right multiplication by j on coefficients: (u1, u2) -> (-conj(u2), conj(u1)).
SectionCoeffs j_image(const SectionCoeffs& s);

// [u1 : u2] scaled so the larger slot equals 1.
struct ProjectivePoint {
  cplx u1 = 0.0;
  cplx u2 = 0.0;
};
ProjectivePoint s_map(const SpectralModel& model, const SpectrumSample& sample, cplx p, double ker_tol = 1e-7);

struct EnergyOptions {
  // Non-positive values select 8 * max(1, support radius) and half the shortest dual generator.
  double B0 = 0.0;
  double offset = 0.0;
  int samples = 16;
  int degree = 4;
  double eps = 0.1;
  double fit_tol = 1e-8;
  double ker_tol = 1e-7;
};

struct EnergyReport {
  double W_direct = 0.0;
  double W_slope_o = 0.0;
  double W_slope_inf = 0.0;
  double W_residue = 0.0;
  double W_residue_o = 0.0;
  double W_hitchin_o = 0.0;
  double W_hitchin_inf = 0.0;
  double vol = 0.0;
  cplx lambda_o = 0.0;
  cplx lambda_inf = 0.0;
  EndChart chart_o;
  EndChart chart_inf;
  std::vector<std::string> warnings;
};

EnergyReport energy_report(const SpectralModel& model, const EnergyOptions& opts = {});

}  // namespace specurve

#endif  // SPECURVE_ENERGY_HPP
