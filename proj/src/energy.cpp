#include "specurve/energy.hpp"

#include <algorithm>
#include <cmath>

#include "specurve/error.hpp"

namespace specurve {

std::string_view to_string(End e) { return e == End::o ? "o" : "infinity"; }

LaurentSeries EndChart::a_series() const {
  if (end == End::infinity) return LaurentSeries::monomial(-1);
  std::map<int, cplx> t;
  for (std::size_t k = 0; k < fit.size(); ++k) t[static_cast<int>(k)] = fit[k];
  return LaurentSeries(std::move(t));
}

LaurentSeries EndChart::b_series() const {
  if (end == End::o) return LaurentSeries::monomial(-1);
  std::map<int, cplx> t;
  for (std::size_t k = 0; k < fit.size(); ++k) t[static_cast<int>(k)] = fit[k];
  return LaurentSeries(std::move(t));
}

EndChart end_chart(End end, const std::vector<SpectrumSample>& samples, double fit_tol, int degree) {
  if (samples.size() < static_cast<std::size_t>(degree + 1)) {
    throw Error(ErrorCode::invalid_input, "not enough samples for the end fit");
  }
  EndChart chart;
  chart.end = end;
  for (const SpectrumSample& s : samples) {
    const cplx x = end == End::o ? 1.0 / s.coord.b : 1.0 / s.coord.a;
    const cplx y = end == End::o ? s.coord.a : s.coord.b;
    chart.samples.emplace_back(x, y);
  }
  // Scaled Vandermonde for conditioning.
  double scale = 0.0;
  for (const auto& [x, y] : chart.samples) scale = std::max(scale, std::abs(x));
  const auto n = static_cast<Eigen::Index>(chart.samples.size());
  CMatrix v(n, degree + 1);
  CVector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx t = chart.samples[static_cast<std::size_t>(i)].first / scale;
    cplx p = 1.0;
    for (int k = 0; k <= degree; ++k, p *= t) v(i, k) = p;
    rhs(i) = chart.samples[static_cast<std::size_t>(i)].second;
  }
  const CVector c = v.colPivHouseholderQr().solve(rhs);
  chart.residual = (v * c - rhs).cwiseAbs().maxCoeff();
  for (int k = 0; k <= degree; ++k) chart.fit.push_back(c(k) / std::pow(scale, k));
  if (!(chart.residual <= 10.0 * fit_tol)) {
    throw Error(ErrorCode::non_graph_end, "end fit residual exceeds 10 * fit_tol");
  }
  if (!(std::abs(chart.fit[0]) <= 10.0 * fit_tol)) {
    throw Error(ErrorCode::non_graph_end, "fitted end does not pass through the vacuum value");
  }
  return chart;
}

SlopeEnergy willmore_slope(const EndChart& chart, const TorusLattice& lat) {
  const cplx lambda = chart.lambda();
  SlopeEnergy out;
  out.W = -4.0 * lambda.real() * lat.covolume();
  out.imag_ratio = std::abs(lambda) > 0.0 ? std::abs(lambda.imag()) / std::abs(lambda) : 0.0;
  out.inconsistent = out.imag_ratio > 1e-3;
  return out;
}

ResidueEnergy willmore_residue(const EndChart& chart_o, const EndChart& chart_inf, const TorusLattice& lat) {
  if (chart_o.end != End::o || chart_inf.end != End::infinity) {
    throw Error(ErrorCode::invalid_input, "charts must be given for o and infinity in that order");
  }
  const double vol = lat.covolume();
  cplx g1 = lat.gamma1(), g2 = lat.gamma2();
  if ((std::conj(g1) * g2).imag() < 0.0) std::swap(g1, g2);

  ResidueEnergy out;
  auto one_end = [&](const EndChart& chart, double sign, double& w, double& hitchin) {
    const LaurentSeries da = chart.a_series().derivative();
    const LaurentSeries db = chart.b_series().derivative();
    const cplx pair = residue_pairing(da, db);
    const cplx wr = sign * 4.0 * pair * vol;
    const LaurentSeries theta = da * g1 + db * std::conj(g1);
    const LaurentSeries theta2 = da * g2 + db * std::conj(g2);
    const cplx wh = sign * cplx(0.0, 2.0) * residue_pairing(theta, theta2);
    w = wr.real();
    hitchin = wh.real();
    out.max_imag = std::max({out.max_imag, std::abs(wr.imag()), std::abs(wh.imag())});
  };
  one_end(chart_inf, 1.0, out.W, out.hitchin_inf);
  one_end(chart_o, -1.0, out.W_o, out.hitchin_o);
  return out;
}

double willmore_direct(const Potential& q, const TorusLattice& lat) {
  double total = 0.0;
  for (const auto& kv : q.coeffs()) total += std::norm(kv.second);
  return 4.0 * lat.covolume() * total;
}

SectionDeviation kernel_section_deviation(const SpectralModel& model, const SpectrumSample& sample, double ker_tol) {
  if (sample.kernel_dim != 1) throw Error(ErrorCode::invalid_input, "sample kernel is not one-dimensional");
  const bool over_a = sample.branch_tag == BranchTag::graph_over_a;
  const int pivot = *model.index_of(over_a ? Species::v : Species::w, DualPoint{});
  CVector x = kernel_column(model, sample.coord, ker_tol);
  const cplx c = x(pivot);
  if (!(std::abs(c) >= 1e-6)) throw Error(ErrorCode::wrong_branch, "normalizing coefficient is too small");
  x /= c;
  SectionDeviation out;
  out.psi = model.from_vector(x);
  SectionCoeffs vac_o, vac_inf;
  vac_o.second[DualPoint{}] = 1.0;
  vac_inf.first[DualPoint{}] = 1.0;
  out.dev_o = wiener_norm(subtract(out.psi, vac_o));
  out.dev_inf = wiener_norm(subtract(out.psi, vac_inf));
  return out;
}

SectionCoeffs j_image(const SectionCoeffs& s) {
  SectionCoeffs out;
  for (const auto& [p, v] : s.second) out.first[p] = -std::conj(v);
  for (const auto& [p, v] : s.first) out.second[p] = std::conj(v);
  return out;
}

ProjectivePoint s_map(const SpectralModel& model, const SpectrumSample& sample, cplx p, double ker_tol) {
  const SectionCoeffs psi = kernel_vector(model, sample.coord, ker_tol);
  const auto [u1, u2] = evaluate_pointwise(psi, p, model.dual());
  const cplx top = std::abs(u1) >= std::abs(u2) ? u1 : u2;
  if (!(std::abs(top) > 1e-10)) throw Error(ErrorCode::zero_of_section, "kernel section vanishes at p");
  return {u1 / top, u2 / top};
}

EnergyReport energy_report(const SpectralModel& model, const EnergyOptions& opts) {
  EnergyReport out;
  const TorusLattice& lat = model.lattice();
  out.vol = lat.covolume();
  out.W_direct = willmore_direct(model.potential(), lat);

  const double b0 = opts.B0 > 0.0 ? opts.B0 : 8.0 * std::max(1.0, model.potential().support_radius());
  const double offset = opts.offset > 0.0 ? opts.offset : 0.5 * model.dual().min_length();
  if (opts.samples < 2) throw Error(ErrorCode::invalid_input, "need at least two end samples");
  const double step = b0 / (opts.samples - 1);
  GraphOptions g;
  g.eps = opts.eps;
  g.ker_tol = opts.ker_tol;
  // The end at infinity is sampled on the rho-image of the window used at o.
  const auto samples_o = trace_graph(model, Plane::b_plane, {b0, 2.0 * b0, offset, offset}, step, g);
  const auto samples_inf = trace_graph(model, Plane::a_plane, {b0, 2.0 * b0, -offset, -offset}, step, g);
  out.chart_o = end_chart(End::o, samples_o, opts.fit_tol, opts.degree);
  out.chart_inf = end_chart(End::infinity, samples_inf, opts.fit_tol, opts.degree);
  out.lambda_o = out.chart_o.lambda();
  out.lambda_inf = out.chart_inf.lambda();

  const SlopeEnergy so = willmore_slope(out.chart_o, lat);
  const SlopeEnergy si = willmore_slope(out.chart_inf, lat);
  out.W_slope_o = so.W;
  out.W_slope_inf = si.W;
  if (so.inconsistent) out.warnings.push_back("slope at o has a non-negligible imaginary part");
  if (si.inconsistent) out.warnings.push_back("slope at infinity has a non-negligible imaginary part");

  const ResidueEnergy re = willmore_residue(out.chart_o, out.chart_inf, lat);
  out.W_residue = re.W;
  out.W_residue_o = re.W_o;
  out.W_hitchin_o = re.hitchin_o;
  out.W_hitchin_inf = re.hitchin_inf;
  for (double w : {out.W_direct, out.W_slope_o, out.W_slope_inf, out.W_residue}) {
    if (w < -1e-9) out.warnings.push_back("negative energy value");
  }
  return out;
}

}  // namespace specurve
