#include "specurve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace specurve {

namespace {

// Inverse iteration on m^H m through one LU of m.
SingularPair inverse_iteration(const CMatrix& m) {
  Eigen::PartialPivLU<CMatrix> lu(m);
  const CMatrix mh = m.adjoint();
  Eigen::PartialPivLU<CMatrix> luh(mh);
  CVector x = CVector::Ones(m.cols()).normalized();
  double sigma = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    CVector y = luh.solve(x);
    CVector z = lu.solve(y);
    const double nz = z.norm();
    if (!std::isfinite(nz) || nz == 0.0) return {0.0, x};
    z /= nz;
    const double next = (m * z).norm();
    const bool done = std::abs(next - sigma) <= 1e-15 * std::max(1.0, next);
    sigma = next;
    x = z;
    if (done) break;
  }
  return {sigma, x};
}

}  // namespace

std::vector<double> singular_values_ascending(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SingularPair> smallest_singular_pairs(const CMatrix& m, int k) {
  std::vector<SingularPair> out;
  if (m.size() == 0 || k <= 0) return out;
  if (m.rows() > kDenseSvdLimit && k == 1) {
    out.push_back(inverse_iteration(m));
    return out;
  }
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index n = s.size();
  for (int j = 0; j < k && j < n; ++j) {
    const Eigen::Index col = n - 1 - j;
    out.push_back({s(col), svd.matrixV().col(col)});
  }
  return out;
}

SingularPair smallest_singular_pair(const CMatrix& m) { return smallest_singular_pairs(m, 1).front(); }

LogDet log_det(const CMatrix& m) {
  LogDet out;
  if (m.size() == 0) return out;
  Eigen::PartialPivLU<CMatrix> lu(m);
  const CMatrix& u = lu.matrixLU();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const cplx d = u(i, i);
    if (d == cplx(0)) {
      out.singular = true;
      out.log_abs = std::numeric_limits<double>::lowest();
      continue;
    }
    if (!out.singular) out.log_abs += std::log(std::abs(d));
    out.phase += std::arg(d);
  }
  if (lu.permutationP().determinant() < 0) out.phase += std::numbers::pi;
  out.phase = std::remainder(out.phase, 2.0 * std::numbers::pi);
  return out;
}

double norm1(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

CVector eigenvalues(const CMatrix& m) {
  if (m.rows() == 1) return m.diagonal();
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  return es.eigenvalues();
}

CMatrix range_basis(const CMatrix& p, int rank) {
  Eigen::BDCSVD<CMatrix> svd(p, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

}  // namespace specurve
