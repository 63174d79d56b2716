#include "qconnect/report.hpp"

#include <cmath>

namespace qconnect {

IdentityReport make_report(Scalar lhs, Scalar rhs, double scale, double tol,
                           long terms_used) {
  IdentityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.scale = scale;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = scale > 0.0 ? r.abs_residual / scale : r.abs_residual;
  r.status = (is_finite(lhs) && is_finite(rhs) && r.rel_residual <= tol)
                 ? CheckStatus::pass
                 : CheckStatus::fail;
  r.terms_used = terms_used;
  return r;
}

}  // namespace qconnect
