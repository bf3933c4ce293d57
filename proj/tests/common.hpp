#ifndef SPECURVE_TESTS_COMMON_HPP
#define SPECURVE_TESTS_COMMON_HPP

#include <numbers>

#include "specurve/lattice.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

inline specurve::TorusLattice square() {
  return specurve::TorusLattice(specurve::cplx(2.0 * kPi, 0.0), specurve::cplx(0.0, 2.0 * kPi));
}

}  // namespace testing

#endif  // SPECURVE_TESTS_COMMON_HPP
