#ifndef SPECURVE_FOURIER_HPP
#define SPECURVE_FOURIER_HPP

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "specurve/lattice.hpp"

namespace specurve {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Finitely supported coefficients indexed by dual-lattice points.
using FourierSeries = std::map<DualPoint, cplx>;

// Hopf field q(z) = sum_c q_c exp(-conj(c) z + c conj(z)).
class Potential {
 public:
  Potential() = default;
  explicit Potential(DualLattice dual) : dual_(dual) {}
  // Validates every frequency against the dual lattice.
  Potential(DualLattice dual, const std::vector<std::pair<cplx, cplx>>& coeffs);

  static Potential constant(DualLattice dual, cplx q0) { return Potential(dual, {{cplx(0), q0}}); }

  const DualLattice& dual() const { return dual_; }
  const FourierSeries& coeffs() const { return coeffs_; }
  FourierSeries& coeffs() { return coeffs_; }
  bool is_zero() const;
  // max |c| over the support (0 for an empty support).
  double support_radius() const;

 private:
  DualLattice dual_{cplx(1.0), cplx(0.0, 1.0)};
  FourierSeries coeffs_;
};

// Section (u1, u2) = sum_c first_c v_c + second_c w_c with
// v_c = (exp(conj(c) z - c conj(z)), 0) and w_c = (0, exp(-conj(c) z + c conj(z))).
struct SectionCoeffs {
  FourierSeries first;
  FourierSeries second;
};

double wiener_norm(const SectionCoeffs& s);
double wiener_norm(const Potential& q);
SectionCoeffs subtract(const SectionCoeffs& x, const SectionCoeffs& y);

enum class Species { v, w };

struct BasisIndex {
  Species species;
  DualPoint point;
  cplx c;
};

// Galerkin truncation of D_{a,b}: basis v_c, w_c for |c| <= R.
struct OperatorMatrix {
  LogCoord at;
  double radius = 0.0;
  std::shared_ptr<const std::vector<BasisIndex>> basis;
  // Index sets of the connected components of the coupling graph; the matrix
  // is block diagonal after permuting to this order.
  std::shared_ptr<const std::vector<std::vector<int>>> components;
  CMatrix entries;

  Eigen::Index dim() const { return entries.rows(); }
  CMatrix block(std::size_t k) const;
};

// Caches the truncated basis and coupling structure for one (lattice, q, R).
class SpectralModel {
 public:
  SpectralModel(TorusLattice lattice, Potential q, double radius);

  const TorusLattice& lattice() const { return lattice_; }
  const DualLattice& dual() const { return dual_; }
  const Potential& potential() const { return q_; }
  double radius() const { return radius_; }
  const std::vector<BasisIndex>& basis() const { return *basis_; }
  const std::vector<std::vector<int>>& components() const { return *components_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_->size()); }

  std::optional<int> index_of(Species s, DualPoint p) const;
  // Component number containing the basis index.
  int component_of(int index) const { return component_of_[static_cast<std::size_t>(index)]; }

  OperatorMatrix assemble(LogCoord at) const;
  // Matrix of component k at (a, b), rows and columns in the order of components()[k].
  CMatrix block_matrix(std::size_t k, LogCoord at) const;
  // Block-diagonal matrix over the listed components, local orders concatenated.
  CMatrix restricted_matrix(const std::vector<std::size_t>& comps, LogCoord at) const;
  std::vector<int> restricted_indices(const std::vector<std::size_t>& comps) const;
  // Position of a basis index inside its component.
  int local_index(int index) const { return local_index_[static_cast<std::size_t>(index)]; }
  // Diagonal of the unperturbed operator at (a, b).
  CVector vacuum_diagonal(LogCoord at) const;

  CVector to_vector(const SectionCoeffs& s) const;
  SectionCoeffs from_vector(const CVector& x) const;

 private:
  struct Coupling {
    int row;
    int col;
    cplx value;
  };

  TorusLattice lattice_;
  DualLattice dual_;
  Potential q_;
  double radius_;
  std::shared_ptr<std::vector<BasisIndex>> basis_;
  std::shared_ptr<std::vector<std::vector<int>>> components_;
  std::vector<int> component_of_;
  std::vector<int> local_index_;
  std::vector<std::vector<Coupling>> block_couplings_;
  std::map<std::pair<int, DualPoint>, int> position_;
  std::vector<Coupling> couplings_;
};

OperatorMatrix assemble(cplx a, cplx b, const Potential& q, double radius, const TorusLattice& lat);

// Pointwise value of the section at z.
std::pair<cplx, cplx> evaluate_pointwise(const SectionCoeffs& s, cplx z, const DualLattice& dual);

// Applies M = [[0, -conj(q)], [q, 0]] in coefficient space (no truncation).
SectionCoeffs multiply_by_potential(const Potential& q, const SectionCoeffs& s);

enum class GaugeKind { tc, Tc };

// Multiplication by t_c = diag(e_c, e_c) or T_c = diag(e_c, e_{-c}),
// e_c(z) = exp(-conj(c) z + c conj(z)).
SectionCoeffs gauge_shift(GaugeKind kind, cplx c, const SectionCoeffs& s, const DualLattice& dual);

// Shift of the potential: q_c -> q_{c + shift}, i.e. multiplication by e_{-shift}.
Potential shift_potential(const Potential& q, DualPoint shift);

// Diagonal of G_{a,b}; throws singular_resolvent within tol_vac of the vacuum lines.
CVector vacuum_resolvent_diag(cplx a, cplx b, double radius, const DualLattice& dual,
                              double tol_vac = 1e-9);

// Distance from (a, b) to the full vacuum spectrum (C x Gamma') u (conj(Gamma') x C).
double vacuum_distance(LogCoord at, const DualLattice& dual);

}  // namespace specurve

#endif  // SPECURVE_FOURIER_HPP
