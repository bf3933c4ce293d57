#include "specurve/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace specurve {

namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& item : j.items()) {
        os << (first ? "" : ",") << pad << json(item.key()).dump() << sep;
        emit(os, item.value(), indent, depth + 1);
        first = false;
      }
      os << close << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Short numeric arrays such as complex pairs stay on one line.
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      os << '[';
      bool first = true;
      for (const json& e : j) {
        os << (first ? "" : ",") << (flat ? (first ? "" : " ") : pad);
        emit(os, e, indent, depth + 1);
        first = false;
      }
      os << (flat ? "" : close) << ']';
      return;
    }
    case json::value_t::number_float:
      os << number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const json& doc, int indent) {
  std::ostringstream os;
  emit(os, doc, indent, 0);
  os << '\n';
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<SpectrumSample>& samples) {
  os << "a_re,a_im,b_re,b_im,sigma_min,kernel_dim,branch_tag\n";
  for (const SpectrumSample& s : samples) {
    os << number(s.coord.a.real()) << ',' << number(s.coord.a.imag()) << ',' << number(s.coord.b.real()) << ','
       << number(s.coord.b.imag()) << ',' << number(s.sigma_min) << ',' << s.kernel_dim << ','
       << to_string(s.branch_tag) << '\n';
  }
}

void write_indicator_csv(std::ostream& os, const std::vector<SpectralIndicator>& values) {
  os << "a_re,a_im,b_re,b_im,sigma_min,kernel_dim,branch_tag\n";
  for (const SpectralIndicator& v : values) {
    os << number(v.at.a.real()) << ',' << number(v.at.a.imag()) << ',' << number(v.at.b.real()) << ','
       << number(v.at.b.imag()) << ',' << number(v.sigma_min) << ',' << v.kernel_dim << ",none\n";
  }
}

json error_json(ErrorCode code, const std::string& message) {
  return {{"error", {{"code", std::string(to_string(code))}, {"message", message}}}};
}

}  // namespace specurve
