#ifndef SPECURVE_LINALG_HPP
#define SPECURVE_LINALG_HPP

#include <vector>

#include "specurve/fourier.hpp"

namespace specurve {

// Loop scheduling for the parallel kernels. Both variants reduce in the same
// fixed order, so results are bitwise identical.
enum class Exec { serial, parallel };

struct SingularPair {
  double sigma = 0.0;
  CVector right;
};

// Dense SVD up to this dimension, inverse iteration above.
inline constexpr Eigen::Index kDenseSvdLimit = 600;

std::vector<double> singular_values_ascending(const CMatrix& m);
SingularPair smallest_singular_pair(const CMatrix& m);
// Right singular vectors of the k smallest singular values, ascending.
std::vector<SingularPair> smallest_singular_pairs(const CMatrix& m, int k);

// log(det m) = log_abs + i*phase; log_abs is lowest() for an exactly singular factor.
struct LogDet {
  double log_abs = 0.0;
  double phase = 0.0;
  bool singular = false;
};
LogDet log_det(const CMatrix& m);

// Induced norm of l^1 (the Wiener norm on coefficient vectors): max column sum.
double norm1(const CMatrix& m);

// Eigenvalues of a square matrix (unordered).
CVector eigenvalues(const CMatrix& m);

// Orthonormal basis of the dominant rank-dimensional column space.
CMatrix range_basis(const CMatrix& p, int rank);

}  // namespace specurve

#endif  // SPECURVE_LINALG_HPP
