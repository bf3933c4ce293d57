#ifndef SPECURVE_SERIES_HPP
#define SPECURVE_SERIES_HPP

#include <map>

#include "specurve/lattice.hpp"

namespace specurve {

// Truncated Laurent series sum_k c_k x^k with finitely many terms.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  explicit LaurentSeries(std::map<int, cplx> terms);
  static LaurentSeries monomial(int k, cplx c = 1.0) { return LaurentSeries({{k, c}}); }

  cplx operator[](int k) const;
  const std::map<int, cplx>& terms() const { return terms_; }

  LaurentSeries derivative() const;
  // Primitive with zero constant term; throws invalid_input on an x^{-1} term.
  LaurentSeries primitive() const;
  cplx residue() const { return (*this)[-1]; }

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator*(cplx s) const;

 private:
  std::map<int, cplx> terms_;
};

// (w1, w2)_p = Res_p(w1 * F2) with dF2 = w2; the forms are given by their dx-coefficients.
cplx residue_pairing(const LaurentSeries& w1, const LaurentSeries& w2);

}  // namespace specurve

#endif  // SPECURVE_SERIES_HPP
