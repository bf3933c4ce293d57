#ifndef SPECURVE_CLASSIFY_HPP
#define SPECURVE_CLASSIFY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specurve/error.hpp"
#include "specurve/kernel.hpp"

namespace specurve {

enum class Verdict { Handle, Node, Indeterminate };
std::string_view to_string(Verdict v);

// x-disc |x| < x_radius around the double point, lambda-circle of radius lambda_radius.
struct Window {
  double x_radius = 0.0;
  double lambda_radius = 0.0;
};

// (eps/2, eps/2 + eps/10) followed by rungs scaled by the shortest dual generator.
std::vector<Window> default_ladder(double eps, const DualLattice& dual);

struct ClassifyOptions {
  // Empty means default_ladder(eps, dual).
  std::vector<Window> ladder;
  int x_nodes = 32;
  // Eigenvalues must stay this fraction of lambda_radius away from the circle.
  double lambda_margin_rel = 0.08;
  // Minimal |P e| for the vacuum modes v_{c'} and w_{c''}.
  double overlap_min = 0.25;
  Tolerances tol;
  QuadratureOptions quad{32, 8192, 1e-11, 1e12, Exec::serial};
};

struct DoublePointReport {
  cplx c_second = 0.0;  // c''
  cplx c_first = 0.0;   // c'
  Verdict verdict = Verdict::Indeterminate;
  Window window{};
  int rung = -1;
  int winding = 0;
  std::vector<cplx> discriminant_zeros;
  std::optional<LogCoord> node_location;
  bool multiplier_is_real = false;
  double node_sigma2 = 0.0;
  std::string note;
};

// Throws classification_window when no rung of the ladder gives a clean window
// with discriminant winding 2.
DoublePointReport classify_double_point(const SpectralModel& model, cplx c_second, cplx c_first, double eps,
                                        const ClassifyOptions& opts = {});

struct ClassifyFailure {
  cplx c_second = 0.0;
  cplx c_first = 0.0;
  ErrorCode code = ErrorCode::classification_window;
  std::string message;
};

struct GenusReport {
  double window_radius = 0.0;
  int handles = 0;
  int nodes = 0;
  int indeterminate = 0;
  std::vector<DoublePointReport> reports;
  std::vector<ClassifyFailure> failures;
  static constexpr std::string_view scope =
      "lower bound only: double points outside the window are not examined";
};

// All pairs (c'', c') with |c''|, |c'| <= window_radius, c'' outer and c' inner
// in enumeration order.
GenusReport genus_window_report(const SpectralModel& model, double window_radius, double eps,
                                const ClassifyOptions& opts = {}, Exec exec = Exec::parallel);
GenusReport classify_pairs(const SpectralModel& model, const std::vector<std::pair<cplx, cplx>>& pairs, double eps,
                           const ClassifyOptions& opts = {}, Exec exec = Exec::parallel);

}  // namespace specurve

#endif  // SPECURVE_CLASSIFY_HPP
