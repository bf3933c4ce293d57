#include "specurve/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specurve/error.hpp"

namespace specurve {

namespace {

// e_c(z) = exp(-conj(c) z + c conj(z)); the exponent is purely imaginary.
cplx monomial(cplx c, cplx z) { return std::exp(-std::conj(c) * z + c * std::conj(z)); }

void accumulate(FourierSeries& series, DualPoint p, cplx value) {
  auto [it, inserted] = series.try_emplace(p, value);
  if (!inserted) it->second += value;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

Potential::Potential(DualLattice dual, const std::vector<std::pair<cplx, cplx>>& coeffs) : dual_(dual) {
  for (const auto& [c, value] : coeffs) accumulate(coeffs_, dual_.index_of(c), value);
}

bool Potential::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second == cplx(0); });
}

double Potential::support_radius() const {
  double r = 0.0;
  for (const auto& [p, value] : coeffs_) {
    if (value != cplx(0)) r = std::max(r, std::abs(dual_.point(p)));
  }
  return r;
}

double wiener_norm(const SectionCoeffs& s) {
  double total = 0.0;
  for (const auto& kv : s.first) total += std::abs(kv.second);
  for (const auto& kv : s.second) total += std::abs(kv.second);
  return total;
}

double wiener_norm(const Potential& q) {
  double total = 0.0;
  for (const auto& kv : q.coeffs()) total += std::abs(kv.second);
  return total;
}

SectionCoeffs subtract(const SectionCoeffs& x, const SectionCoeffs& y) {
  SectionCoeffs out = x;
  for (const auto& [p, v] : y.first) accumulate(out.first, p, -v);
  for (const auto& [p, v] : y.second) accumulate(out.second, p, -v);
  return out;
}

CMatrix OperatorMatrix::block(std::size_t k) const {
  const auto& idx = (*components)[k];
  const auto n = static_cast<Eigen::Index>(idx.size());
  CMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = entries(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

SpectralModel::SpectralModel(TorusLattice lattice, Potential q, double radius)
    : lattice_(lattice), dual_(dual_lattice(lattice)), q_(std::move(q)), radius_(radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::invalid_input, "truncation radius must be positive");
  // Re-express the potential over the canonical generators of this lattice.
  Potential canonical(dual_);
  for (const auto& [p, value] : q_.coeffs()) {
    const cplx c = q_.dual().point(p);
    accumulate(canonical.coeffs(), dual_.index_of(c, 1e-9), value);
  }
  q_ = std::move(canonical);

  basis_ = std::make_shared<std::vector<BasisIndex>>();
  for (DualPoint p : enumerate_dual_points(dual_, radius_)) {
    const cplx c = dual_.point(p);
    position_[{0, p}] = static_cast<int>(basis_->size());
    basis_->push_back({Species::v, p, c});
    position_[{1, p}] = static_cast<int>(basis_->size());
    basis_->push_back({Species::w, p, c});
  }

  // Column (v, c) gets +q_{c'} in row (w, c' - c); column (w, c) gets
  // -conj(q_{c'}) in row (v, c' - c). Rows outside the disc are dropped.
  for (const auto& [cp, value] : q_.coeffs()) {
    if (value == cplx(0)) continue;
    for (std::size_t col = 0; col < basis_->size(); ++col) {
      const BasisIndex& bi = (*basis_)[col];
      const DualPoint target = cp - bi.point;
      if (bi.species == Species::v) {
        auto it = position_.find({1, target});
        if (it != position_.end()) couplings_.push_back({it->second, static_cast<int>(col), value});
      } else {
        auto it = position_.find({0, target});
        if (it != position_.end()) couplings_.push_back({it->second, static_cast<int>(col), -std::conj(value)});
      }
    }
  }

  const int n = static_cast<int>(basis_->size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (const Coupling& cp : couplings_) {
    const int r1 = find_root(parent, cp.row), r2 = find_root(parent, cp.col);
    if (r1 != r2) parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
  }
  components_ = std::make_shared<std::vector<std::vector<int>>>();
  component_of_.assign(static_cast<std::size_t>(n), -1);
  std::map<int, int> root_to_component;
  for (int i = 0; i < n; ++i) {
    const int r = find_root(parent, i);
    auto [it, inserted] = root_to_component.try_emplace(r, static_cast<int>(components_->size()));
    if (inserted) components_->emplace_back();
    auto& members = (*components_)[static_cast<std::size_t>(it->second)];
    local_index_.push_back(static_cast<int>(members.size()));
    members.push_back(i);
    component_of_[static_cast<std::size_t>(i)] = it->second;
  }
  block_couplings_.resize(components_->size());
  for (const Coupling& cp : couplings_) {
    block_couplings_[static_cast<std::size_t>(component_of(cp.col))].push_back(
        {local_index(cp.row), local_index(cp.col), cp.value});
  }
}

std::optional<int> SpectralModel::index_of(Species s, DualPoint p) const {
  auto it = position_.find({s == Species::v ? 0 : 1, p});
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

CVector SpectralModel::vacuum_diagonal(LogCoord at) const {
  CVector d(dim());
  for (std::size_t i = 0; i < basis_->size(); ++i) {
    const BasisIndex& bi = (*basis_)[i];
    d(static_cast<Eigen::Index>(i)) = bi.species == Species::v ? at.b - bi.c : at.a - std::conj(bi.c);
  }
  return d;
}

OperatorMatrix SpectralModel::assemble(LogCoord at) const {
  OperatorMatrix out;
  out.at = at;
  out.radius = radius_;
  out.basis = basis_;
  out.components = components_;
  out.entries = CMatrix::Zero(dim(), dim());
  out.entries.diagonal() = vacuum_diagonal(at);
  for (const Coupling& cp : couplings_) out.entries(cp.row, cp.col) += cp.value;
  return out;
}

CMatrix SpectralModel::block_matrix(std::size_t k, LogCoord at) const {
  const auto& members = (*components_)[k];
  const auto n = static_cast<Eigen::Index>(members.size());
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const BasisIndex& bi = (*basis_)[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])];
    out(i, i) = bi.species == Species::v ? at.b - bi.c : at.a - std::conj(bi.c);
  }
  for (const Coupling& cp : block_couplings_[k]) out(cp.row, cp.col) += cp.value;
  return out;
}

CMatrix SpectralModel::restricted_matrix(const std::vector<std::size_t>& comps, LogCoord at) const {
  Eigen::Index n = 0;
  for (std::size_t k : comps) n += static_cast<Eigen::Index>((*components_)[k].size());
  CMatrix out = CMatrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (std::size_t k : comps) {
    const CMatrix b = block_matrix(k, at);
    out.block(offset, offset, b.rows(), b.cols()) = b;
    offset += b.rows();
  }
  return out;
}

std::vector<int> SpectralModel::restricted_indices(const std::vector<std::size_t>& comps) const {
  std::vector<int> out;
  for (std::size_t k : comps) {
    const auto& members = (*components_)[k];
    out.insert(out.end(), members.begin(), members.end());
  }
  return out;
}

CVector SpectralModel::to_vector(const SectionCoeffs& s) const {
  CVector x = CVector::Zero(dim());
  for (const auto& [p, v] : s.first) {
    if (auto i = index_of(Species::v, p)) x(*i) += v;
  }
  for (const auto& [p, v] : s.second) {
    if (auto i = index_of(Species::w, p)) x(*i) += v;
  }
  return x;
}

SectionCoeffs SpectralModel::from_vector(const CVector& x) const {
  SectionCoeffs s;
  for (std::size_t i = 0; i < basis_->size(); ++i) {
    const cplx v = x(static_cast<Eigen::Index>(i));
    if (v == cplx(0)) continue;
    const BasisIndex& bi = (*basis_)[i];
    (bi.species == Species::v ? s.first : s.second)[bi.point] = v;
  }
  return s;
}

OperatorMatrix assemble(cplx a, cplx b, const Potential& q, double radius, const TorusLattice& lat) {
  return SpectralModel(lat, q, radius).assemble({a, b});
}

std::pair<cplx, cplx> evaluate_pointwise(const SectionCoeffs& s, cplx z, const DualLattice& dual) {
  cplx u1 = 0.0, u2 = 0.0;
  for (const auto& [p, v] : s.first) u1 += v * monomial(-dual.point(p), z);
  for (const auto& [p, v] : s.second) u2 += v * monomial(dual.point(p), z);
  return {u1, u2};
}

SectionCoeffs multiply_by_potential(const Potential& q, const SectionCoeffs& s) {
  SectionCoeffs out;
  for (const auto& [cp, value] : q.coeffs()) {
    if (value == cplx(0)) continue;
    for (const auto& [p, v] : s.first) accumulate(out.second, cp - p, value * v);
    for (const auto& [p, v] : s.second) accumulate(out.first, cp - p, -std::conj(value) * v);
  }
  return out;
}

SectionCoeffs gauge_shift(GaugeKind kind, cplx c, const SectionCoeffs& s, const DualLattice& dual) {
  const DualPoint shift = dual.index_of(c);
  SectionCoeffs out;
  // First slot: e_c * e_{-c0} = e_{-(c0 - c)}, so v_{c0} -> v_{c0 - c} for both kinds.
  for (const auto& [p, v] : s.first) out.first[p - shift] = v;
  // Second slot: t_c gives w_{c0} -> w_{c0 + c}; T_c gives w_{c0} -> w_{c0 - c}.
  for (const auto& [p, v] : s.second) out.second[kind == GaugeKind::tc ? p + shift : p - shift] = v;
  return out;
}

Potential shift_potential(const Potential& q, DualPoint shift) {
  Potential out(q.dual());
  for (const auto& [p, v] : q.coeffs()) out.coeffs()[p - shift] = v;
  return out;
}

CVector vacuum_resolvent_diag(cplx a, cplx b, double radius, const DualLattice& dual, double tol_vac) {
  const auto points = enumerate_dual(dual, radius);
  CVector g(static_cast<Eigen::Index>(2 * points.size()));
  for (std::size_t k = 0; k < points.size(); ++k) {
    const cplx ev_v = b - points[k];
    const cplx ev_w = a - std::conj(points[k]);
    if (std::abs(ev_v) <= tol_vac || std::abs(ev_w) <= tol_vac) {
      throw Error(ErrorCode::singular_resolvent, "point lies on the vacuum spectrum");
    }
    g(static_cast<Eigen::Index>(2 * k)) = 1.0 / ev_v;
    g(static_cast<Eigen::Index>(2 * k + 1)) = 1.0 / ev_w;
  }
  return g;
}

double vacuum_distance(LogCoord at, const DualLattice& dual) {
  return std::min(dual.distance_to_lattice(at.b), dual.distance_to_lattice(std::conj(at.a)));
}

}  // namespace specurve
