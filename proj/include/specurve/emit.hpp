#ifndef SPECURVE_EMIT_HPP
#define SPECURVE_EMIT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "specurve/config.hpp"

namespace specurve {

// JSON text with every floating-point number printed as %.17g.
std::string dump_json(const json& doc, int indent = 2);

// Header a_re,a_im,b_re,b_im,sigma_min,kernel_dim,branch_tag and one row per sample.
void write_csv(std::ostream& os, const std::vector<SpectrumSample>& samples);

// Indicator rows have no branch; their tag column holds "none".
void write_indicator_csv(std::ostream& os, const std::vector<SpectralIndicator>& values);

json error_json(ErrorCode code, const std::string& message);

}  // namespace specurve

#endif  // SPECURVE_EMIT_HPP
