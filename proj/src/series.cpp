#include "specurve/series.hpp"

#include "specurve/error.hpp"

namespace specurve {

LaurentSeries::LaurentSeries(std::map<int, cplx> terms) : terms_(std::move(terms)) {}

cplx LaurentSeries::operator[](int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

LaurentSeries LaurentSeries::derivative() const {
  std::map<int, cplx> out;
  for (const auto& [k, c] : terms_) {
    if (k != 0) out[k - 1] += static_cast<double>(k) * c;
  }
  return LaurentSeries(std::move(out));
}

LaurentSeries LaurentSeries::primitive() const {
  std::map<int, cplx> out;
  for (const auto& [k, c] : terms_) {
    if (k == -1) {
      if (c != cplx(0)) throw Error(ErrorCode::invalid_input, "form has a residue, no single-valued primitive");
      continue;
    }
    out[k + 1] += c / static_cast<double>(k + 1);
  }
  return LaurentSeries(std::move(out));
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  std::map<int, cplx> out = terms_;
  for (const auto& [k, c] : o.terms_) out[k] += c;
  return LaurentSeries(std::move(out));
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  std::map<int, cplx> out;
  for (const auto& [i, a] : terms_) {
    for (const auto& [j, b] : o.terms_) out[i + j] += a * b;
  }
  return LaurentSeries(std::move(out));
}

LaurentSeries LaurentSeries::operator*(cplx s) const {
  std::map<int, cplx> out = terms_;
  for (auto& kv : out) kv.second *= s;
  return LaurentSeries(std::move(out));
}

cplx residue_pairing(const LaurentSeries& w1, const LaurentSeries& w2) { return (w1 * w2.primitive()).residue(); }

}  // namespace specurve
