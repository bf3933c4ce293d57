#ifndef SPECURVE_ERROR_HPP
#define SPECURVE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace specurve {

// Failure categories surfaced to callers and serialized by the CLI.
enum class ErrorCode {
  invalid_input,
  singular_resolvent,
  no_kernel,
  ill_conditioned_contour,
  unexpected_rank,
  unreliable_contour,
  root_bracketing,
  branch_ambiguity,
  classification_window,
  non_graph_end,
  wrong_branch,
  zero_of_section,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::singular_resolvent: return "singular_resolvent";
    case ErrorCode::no_kernel: return "no_kernel";
    case ErrorCode::ill_conditioned_contour: return "ill_conditioned_contour";
    case ErrorCode::unexpected_rank: return "unexpected_rank";
    case ErrorCode::unreliable_contour: return "unreliable_contour";
    case ErrorCode::root_bracketing: return "root_bracketing";
    case ErrorCode::branch_ambiguity: return "branch_ambiguity";
    case ErrorCode::classification_window: return "classification_window";
    case ErrorCode::non_graph_end: return "non_graph_end";
    case ErrorCode::wrong_branch: return "wrong_branch";
    case ErrorCode::zero_of_section: return "zero_of_section";
  }
  return "unknown";
}

}  // namespace specurve

#endif  // SPECURVE_ERROR_HPP
