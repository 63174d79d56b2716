#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qconnect/params.hpp"
#include "qconnect/qcore.hpp"
#include "qconnect/report.hpp"

// q-difference operators acting on lattice functions (T_x f(x) = f(qx)):
// the Heine operator, the degree-three variant H3, the rank-(M+1) operator
// E_M, the three-term recurrence equivalent to E_1, and the parameter /
// gauge maps tying them together.

namespace qconnect {

/// A function of one complex variable, evaluable at all q-shifts the
/// operators request. May be called concurrently.
using LatticeFn = std::function<Scalar(Scalar)>;

/// Operator application result: the value and the sum of the magnitudes of
/// the individual shift terms (the natural scale for residual judgments).
struct OperatorValue {
  Scalar value{0.0};
  double term_scale = 0.0;
};

// ---------------------------------------------------------------------------
// Heine operator  [x(1-aT)(1-bT) - (1-T)(1-c q^{-1} T)] y  at x

OperatorValue heine_apply_scaled(const HeineParams& hp, const LatticeFn& y,
                                 const Nome& q);
Scalar heine_apply(const HeineParams& hp, const LatticeFn& y, const Nome& q);

// ---------------------------------------------------------------------------
// Degree-three variant operator H3 at hp.x; shifts used: {-1, 0, 1}

/// Coefficients of y(x/q), y(x), y(qx).
std::array<Scalar, 3> h3_shift_coefficients(const H3Params& hp, const Nome& q);

OperatorValue h3_apply_scaled(const H3Params& hp, const LatticeFn& y,
                              const Nome& q);
Scalar h3_apply(const H3Params& hp, const LatticeFn& y, const Nome& q);

// ---------------------------------------------------------------------------
// E_M operator

/// Scalar coefficients of E_M expanded as a shift polynomial:
/// E_M y(x) = sum_{j=-1}^{M} c[j+1] y(q^j x).
std::vector<Scalar> em_shift_coefficients(const EMParams& em, Scalar x,
                                          const Nome& q);

OperatorValue em_apply_scaled(const EMParams& em, Scalar x, const LatticeFn& y,
                              const Nome& q);
Scalar em_apply(const EMParams& em, Scalar x, const LatticeFn& y,
                const Nome& q);

/// Right-hand side of the non-homogeneous equation satisfied by the
/// single-endpoint integrals: -prod_{i=0}^{M-1}(B - A q^i) * q(1-q) x^{M+1}.
Scalar em_nonhomog_rhs(const EMParams& em, Scalar x, const Nome& q);

/// Check E_M y_tau = rhs for y_tau(x) = int_0^tau of the split integrand,
/// tau_choice = 0 selects tau = q/(A x) (recomputed per shift), tau_choice =
/// i in 1..M+2 selects the fixed endpoint q/a_{i+1}.
IdentityReport em_nonhomog_residual(const EMParams& em, Scalar x,
                                    int tau_choice, const Nome& q,
                                    const TruncationPolicy& pol = {},
                                    double tol = 1e-9);

// ---------------------------------------------------------------------------
// Parameter and gauge maps

struct EMSplit {
  EMParams em;
  Scalar x{1.0};
};

/// Variant -> rank-2 data with the normalization A = 1:
/// B = q^{-nu}, a_{i+1} = B q^{h_i+1/2} t_i, b_{i+1} = A q^{l_i-1/2} t_i.
EMSplit h3_to_rp(const H3Params& hp, const Nome& q);

/// Rank-2 data -> variant parameters with t_i = 1 (alpha is free):
/// nu = -log_q(B/A), h_i = log_q(a_{i+1}/B) - 1/2, l_i = log_q(b_{i+1}/A) + 1/2.
H3Params rp_to_h3(const EMParams& em, Scalar x, Scalar alpha, const Nome& q);

// ---------------------------------------------------------------------------
// Three-term recurrence  Y_{n+1} - c_n Y_n + d_n Y_{n-1} = 0

/// The displayed coefficient pieces; d_n = C_{n-1} D_n.
Scalar gm_Cn(const GMParams& g, const Nome& q);
Scalar gm_Dn(const GMParams& g, const Nome& q);

/// (c_n, d_n) of the recurrence at g.n.
std::pair<Scalar, Scalar> gm_coeffs(const GMParams& g, const Nome& q);

/// Recurrence data equivalent to E_1 y = 0 on the lattice x_n = x0 q^n:
///   a = a_2 A/(a_3 B), (b,c,d) = q(b_2,b_3,b_4)/a_3, e = A/B, h = a_2/(B x0)
/// with the gauge Y_n = (-1)^n y(x_n) / (A x_n/b_2, A x_n/b_3, A x_n/b_4)_inf.
GMParams gm_from_em(const EMParams& em, Scalar x0, const Nome& q);

/// Residual of the recurrence over n in [n_lo, n_hi] for y = phi_{i,j}
/// built from the E_1 data (a solution of E_1 y = 0).
IdentityReport gm_recurrence_residual(const EMParams& em, Scalar x0, int sol_i,
                                      int sol_j, int n_lo, int n_hi,
                                      const Nome& q,
                                      const TruncationPolicy& pol = {},
                                      double tol = 1e-8);

/// Same residual for an arbitrary lattice function (used by tests).
IdentityReport gm_recurrence_residual_fn(const EMParams& em, Scalar x0,
                                         const LatticeFn& y, int n_lo,
                                         int n_hi, const Nome& q,
                                         const TruncationPolicy& pol = {},
                                         double tol = 1e-8);

}  // namespace qconnect
