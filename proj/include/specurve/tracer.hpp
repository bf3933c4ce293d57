#ifndef SPECURVE_TRACER_HPP
#define SPECURVE_TRACER_HPP

#include <string_view>
#include <utility>
#include <vector>

#include "specurve/kernel.hpp"

namespace specurve {

enum class BranchTag { graph_over_b, graph_over_a, near_double_point };
enum class Plane { b_plane, a_plane };

std::string_view to_string(BranchTag tag);

struct SpectrumSample {
  LogCoord coord{};
  double sigma_min = 0.0;
  int kernel_dim = 0;
  BranchTag branch_tag = BranchTag::graph_over_b;
};

// Axis-aligned rectangle [re0, re1] x [im0, im1] in C.
struct Region {
  double re0 = 0.0, re1 = 0.0, im0 = 0.0, im1 = 0.0;
};

struct TransversalOptions {
  int nodes = 64;
  // Roots closer than margin_rel * eps to the circle make the count unreliable.
  double margin_rel = 0.1;
  int max_newton = 60;
};

// Roots lambda, |lambda| < eps, of det D_{a+lambda, b+lambda}, sorted by modulus then argument.
std::vector<cplx> solve_transversal(const SpectralModel& model, LogCoord base, double eps,
                                    const TransversalOptions& opts = {});

struct GraphOptions {
  double eps = 0.1;
  double ker_tol = 1e-7;
  int winding_nodes = 64;
  int max_halvings = 12;
};

// Point of the graph branch over the given plane: solves for a (b_plane) or b (a_plane)
// inside the eps-disc around 0 with the other coordinate fixed. Newton starts at seed.
LogCoord solve_graph_point(const SpectralModel& model, Plane plane, cplx fixed, cplx seed,
                           const GraphOptions& opts = {});

// Continuation over a grid of spacing step, rows ordered by imaginary part and
// traversed in alternating directions.
std::vector<SpectrumSample> trace_graph(const SpectralModel& model, Plane plane, const Region& region, double step,
                                        const GraphOptions& opts = {});

struct TubeAudit {
  int checked = 0;
  int skipped_core = 0;
  double max_distance = 0.0;
  // (sample index, distance to the vacuum spectrum) for samples outside the tube.
  std::vector<std::pair<std::size_t, double>> violations;
};

// A sample lies in the core when b and conj(a) both have dual coordinates of modulus <= core_cells.
TubeAudit tube_audit(const std::vector<SpectrumSample>& samples, double eps, const DualLattice& dual,
                     double core_cells = 1.0);

}  // namespace specurve

#endif  // SPECURVE_TRACER_HPP
