#include "specurve/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "specurve/error.hpp"

namespace specurve {

namespace {

std::vector<double> block_singular_values(const CMatrix& b) {
  if (b.rows() == 1) return {std::abs(b(0, 0))};
  return singular_values_ascending(b);
}

std::vector<SingularPair> block_pairs(const CMatrix& b, int k) {
  if (b.rows() == 1) return {{std::abs(b(0, 0)), CVector::Ones(1)}};
  return smallest_singular_pairs(b, k);
}

LogDet block_log_det(const CMatrix& b) {
  if (b.rows() == 1) {
    const cplx d = b(0, 0);
    if (d == cplx(0)) return {std::numeric_limits<double>::lowest(), 0.0, true};
    return {std::log(std::abs(d)), std::arg(d), false};
  }
  return log_det(b);
}

CVector embed(const SpectralModel& model, std::size_t k, const CVector& local) {
  CVector x = CVector::Zero(model.dim());
  const auto& members = model.components()[k];
  for (std::size_t i = 0; i < members.size(); ++i) x(members[i]) = local(static_cast<Eigen::Index>(i));
  return x;
}

Eigen::Index dominant_index(const CVector& x) {
  Eigen::Index best = 0;
  double mag = -1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > mag) {
      mag = std::abs(x(i));
      best = i;
    }
  }
  return best;
}

void fix_phase(CVector& x) {
  const cplx top = x(dominant_index(x));
  if (top != cplx(0)) x *= std::conj(top) / std::abs(top);
}

}  // namespace

SpectralIndicator indicator(const SpectralModel& model, LogCoord at, double ker_tol) {
  SpectralIndicator out;
  out.at = at;
  out.R = model.radius();
  out.sigma_min = std::numeric_limits<double>::infinity();
  bool singular = false;
  for (std::size_t k = 0; k < model.components().size(); ++k) {
    const CMatrix b = model.block_matrix(k, at);
    for (double s : block_singular_values(b)) {
      out.sigma_min = std::min(out.sigma_min, s);
      if (s <= ker_tol) ++out.kernel_dim;
    }
    const LogDet ld = block_log_det(b);
    if (ld.singular) singular = true;
    else out.log_abs_det += ld.log_abs;
  }
  if (singular || out.sigma_min == 0.0) out.log_abs_det = std::numeric_limits<double>::lowest();
  return out;
}

SpectralIndicator indicator(cplx a, cplx b, const Potential& q, double R, const TorusLattice& lat) {
  return indicator(SpectralModel(lat, q, R), {a, b});
}

CVector kernel_column(const SpectralModel& model, LogCoord at, double ker_tol) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  CVector best_v;
  for (std::size_t k = 0; k < model.components().size(); ++k) {
    SingularPair p = block_pairs(model.block_matrix(k, at), 1).front();
    if (p.sigma < best) {
      best = p.sigma;
      best_k = k;
      best_v = std::move(p.right);
    }
  }
  if (!(best <= ker_tol)) throw Error(ErrorCode::no_kernel, "smallest singular value exceeds ker_tol");
  CVector x = embed(model, best_k, best_v);
  fix_phase(x);
  return x;
}

SectionCoeffs kernel_vector(const SpectralModel& model, LogCoord at, double ker_tol) {
  return model.from_vector(kernel_column(model, at, ker_tol));
}

std::vector<CVector> kernel_basis(const SpectralModel& model, LogCoord at, double ker_tol) {
  std::vector<CVector> out;
  for (std::size_t k = 0; k < model.components().size(); ++k) {
    const CMatrix b = model.block_matrix(k, at);
    for (SingularPair& p : block_pairs(b, static_cast<int>(b.rows()))) {
      if (p.sigma > ker_tol) break;
      CVector x = embed(model, k, p.right);
      fix_phase(x);
      out.push_back(std::move(x));
    }
  }
  if (out.empty()) throw Error(ErrorCode::no_kernel, "smallest singular value exceeds ker_tol");
  std::stable_sort(out.begin(), out.end(),
                   [](const CVector& x, const CVector& y) { return dominant_index(x) < dominant_index(y); });
  return out;
}

double second_singular_value(const SpectralModel& model, LogCoord at) {
  std::vector<double> all;
  for (std::size_t k = 0; k < model.components().size(); ++k) {
    auto s = block_singular_values(model.block_matrix(k, at));
    all.insert(all.end(), s.begin(), s.begin() + std::min<std::size_t>(2, s.size()));
  }
  std::sort(all.begin(), all.end());
  return all.size() > 1 ? all[1] : std::numeric_limits<double>::infinity();
}

Projector riesz_projector(const SpectralModel& model, LogCoord center, double eps, const ProjectorOptions& opts) {
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_input, "contour radius must be positive");
  const double margin = opts.margin < 0.0 ? eps / 10.0 : opts.margin;
  Projector out;
  out.center = center;
  out.radius = eps;
  out.nodes = opts.quad.nodes;
  out.matrix = CMatrix::Zero(model.dim(), model.dim());
  for (std::size_t k = 0; k < model.components().size(); ++k) {
    const CMatrix b = model.block_matrix(k, center);
    const CVector ev = eigenvalues(b);
    int inside = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const double r = std::abs(ev(i));
      if (std::abs(r - eps) < margin) {
        throw Error(ErrorCode::ill_conditioned_contour, "spectrum too close to the transversal circle");
      }
      if (r < eps) ++inside;
    }
    // Cauchy's theorem makes the block exactly zero when nothing is enclosed.
    if (inside == 0) continue;
    ContourResult cr = resolvent_contour(b, 0.0, eps, opts.quad);
    out.nodes = std::max(out.nodes, cr.nodes);
    out.trace += cr.p.trace();
    out.idempotency_defect = std::max(out.idempotency_defect, norm1(cr.p * cr.p - cr.p));
    const auto& members = model.components()[k];
    for (std::size_t j = 0; j < members.size(); ++j) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        out.matrix(members[i], members[j]) = cr.p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  out.rank = static_cast<int>(std::lround(out.trace.real()));
  return out;
}

int det_winding(const SpectralModel& model, LogCoord base, double eps, int nodes, double floor) {
  std::vector<CMatrix> blocks;
  for (std::size_t k = 0; k < model.components().size(); ++k) blocks.push_back(model.block_matrix(k, base));
  return count_zeros_winding_log(
      [&](cplx lambda) {
        LogDet total;
        for (const CMatrix& b : blocks) {
          CMatrix m = b;
          m.diagonal().array() += lambda;
          const LogDet ld = block_log_det(m);
          if (ld.singular) return ld;
          total.log_abs += ld.log_abs;
          total.phase += ld.phase;
        }
        return total;
      },
      0.0, eps, nodes, floor);
}

RestrictedPencil::RestrictedPencil(const SpectralModel& model, cplx c_second, cplx c_first, double lambda_radius,
                                   QuadratureOptions quad)
    : model_(&model), c_second_(c_second), c_first_(c_first), lambda_radius_(lambda_radius), quad_(quad) {
  const auto iv = model.index_of(Species::v, model.dual().index_of(c_first));
  const auto iw = model.index_of(Species::w, model.dual().index_of(c_second));
  if (!iv || !iw) throw Error(ErrorCode::invalid_input, "double point lies outside the truncation");
  std::set<std::size_t> comps{static_cast<std::size_t>(model.component_of(*iv)),
                              static_cast<std::size_t>(model.component_of(*iw))};
  comps_.assign(comps.begin(), comps.end());
  indices_ = model.restricted_indices(comps_);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] == *iv) local_v_ = static_cast<int>(i);
    if (indices_[i] == *iw) local_w_ = static_cast<int>(i);
  }
}

LogCoord RestrictedPencil::base(cplx x) const { return {std::conj(c_second_) + x, c_first_ - x}; }

CMatrix RestrictedPencil::matrix(cplx x) const { return model_->restricted_matrix(comps_, base(x)); }

CMatrix RestrictedPencil::projector(cplx x) const {
  return resolvent_contour(matrix(x), 0.0, lambda_radius_, quad_).p;
}

CVector RestrictedPencil::roots(cplx x) const { return -eigenvalues(matrix(x)); }

PencilSample RestrictedPencil::at(cplx x) const {
  const CMatrix d = matrix(x);
  const CMatrix p = resolvent_contour(d, 0.0, lambda_radius_, quad_).p;
  PencilSample out;
  out.x = x;
  out.rank = static_cast<int>(std::lround(p.trace().real()));
  if (out.rank != 2) throw Error(ErrorCode::unexpected_rank, "double-point projector does not have rank 2");
  const CMatrix basis = range_basis(p, 2);
  out.restricted = basis.adjoint() * d * basis;
  out.p1 = out.restricted.trace();
  out.p2 = out.restricted.determinant();
  out.discriminant = out.p1 * out.p1 - 4.0 * out.p2;
  return out;
}

LogCoord SliceGrid::point(int i, int j) const {
  const double s = n1 > 1 ? s0 + (s1 - s0) * i / (n1 - 1) : s0;
  const double t = n2 > 1 ? t0 + (t1 - t0) * j / (n2 - 1) : t0;
  return {origin.a + s * dir1.a + t * dir2.a, origin.b + s * dir1.b + t * dir2.b};
}

std::vector<SpectralIndicator> indicator_sweep(const SpectralModel& model, const SliceGrid& grid, double ker_tol,
                                               Exec exec) {
  if (grid.n1 < 1 || grid.n2 < 1) throw Error(ErrorCode::invalid_input, "grid must have at least one point per axis");
  const int total = grid.n1 * grid.n2;
  std::vector<SpectralIndicator> out(static_cast<std::size_t>(total));
  auto one = [&](int flat) { out[static_cast<std::size_t>(flat)] = indicator(model, grid.point(flat % grid.n1, flat / grid.n1), ker_tol); };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int f = 0; f < total; ++f) one(f);
  } else {
    for (int f = 0; f < total; ++f) one(f);
  }
  return out;
}

}  // namespace specurve
