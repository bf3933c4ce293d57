#ifndef SPECURVE_CONFIG_HPP
#define SPECURVE_CONFIG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "specurve/classify.hpp"
#include "specurve/energy.hpp"

namespace specurve {

using json = nlohmann::json;

struct VacuumTask {
  double window = 1.0;
};

struct IndicatorTask {
  SliceGrid grid;
};

struct TraceTask {
  Plane plane = Plane::b_plane;
  Region region;
  double step = 0.1;
};

struct ClassifyTask {
  // Explicit (c'', c') pairs; empty means every pair within window_radius.
  std::vector<std::pair<cplx, cplx>> pairs;
  double window_radius = 1.1;
};

struct GenusTask {
  double window_radius = 1.1;
};

struct SectionTask {
  // Fixed coordinates of graph points over the b-plane.
  std::vector<cplx> b_values;
  // Points of the torus where the S-map is evaluated.
  std::vector<cplx> points;
};

struct AuditTask {
  TraceTask trace;
  double core_cells = 1.0;
  bool symmetry = true;
};

struct JobConfig {
  TorusLattice lattice{cplx(1.0), cplx(0.0, 1.0)};
  std::vector<std::pair<cplx, cplx>> potential;
  double truncation_radius = 4.0;
  double eps = 0.1;
  Tolerances tol;
  std::optional<VacuumTask> vacuum;
  std::optional<IndicatorTask> indicator;
  std::optional<TraceTask> trace;
  std::optional<ClassifyTask> classify;
  std::optional<GenusTask> genus;
  std::optional<EnergyOptions> energy;
  std::optional<SectionTask> section;
  std::optional<AuditTask> audit;

  Potential make_potential() const;
  SpectralModel make_model() const;
};

// Throws invalid_input on malformed documents, frequencies outside the dual
// lattice, or a truncation radius below twice the support radius.
JobConfig parse_config(const json& doc);
JobConfig load_config(const std::string& path);

// Normalized form of a config; parse_config(to_json(c)) reproduces c.
json to_json(const JobConfig& config);
json to_json(const Tolerances& tol);

json complex_json(cplx z);
cplx complex_from(const json& j);

}  // namespace specurve

#endif  // SPECURVE_CONFIG_HPP
