#pragma once

#include <string>

#include "qconnect/qcore.hpp"

namespace qconnect {

enum class CheckStatus { pass, fail, error };

/// Structured outcome of one identity check. `scale` is the sum of the
/// magnitudes of all individual summands entering the identity, so that
/// cancellation-heavy relations are judged against their pre-cancellation
/// size; rel_residual = abs_residual / scale whenever scale > 0.
struct IdentityReport {
  Scalar lhs{0.0};
  Scalar rhs{0.0};
  double scale = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  CheckStatus status = CheckStatus::error;
  long terms_used = 0;
  std::string note;  // diagnostic text; error message when status == error

  bool passed() const { return status == CheckStatus::pass; }
};

/// Assemble a report from an lhs/rhs pair at the given tolerance.
IdentityReport make_report(Scalar lhs, Scalar rhs, double scale, double tol,
                           long terms_used = 0);

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "error";
  }
}

}  // namespace qconnect
