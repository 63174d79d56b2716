#pragma once

#include <functional>

#include "qconnect/params.hpp"
#include "qconnect/qcore.hpp"

// Jackson q-integrals over geometric lattices, and the specific integrands
// used throughout: the Riemann-Papperitz product, the Jordan-Pochhammer
// integral with a t^{rho-1} weight, the Heine integral solutions, and the
// gauge-prefixed integrals of the degree-three variant equation.
//
//   int_0^tau f(t) d_q t          = (1-q) sum_{n>=0} f(tau q^n) tau q^n
//   int_0^{tau inf} f(t) d_q t    = (1-q) sum_{n in Z} f(tau q^n) tau q^n
//   int_{tau1}^{tau2} f(t) d_q t  = int_0^{tau2} - int_0^{tau1}

namespace qconnect {

/// One complex argument to one complex value, total on the q-lattices the
/// integrators actually visit.
using Integrand = std::function<Scalar(Scalar)>;

/// Unilateral Jackson integral from 0 to tau (tau != 0). Truncates after the
/// running term magnitude stays below pol.tol * (accumulated term scale) for
/// five consecutive terms.
Scalar jackson_0_to(Scalar tau, const Integrand& f, const Nome& q,
                    const TruncationPolicy& pol = {});

/// Bilateral Jackson integral over the full lattice tau q^Z, with
/// independent tail stopping in each direction.
Scalar jackson_bilateral(Scalar tau, const Integrand& f, const Nome& q,
                         const TruncationPolicy& pol = {});

/// Difference of two unilateral integrals; endpoints equal to 0 contribute 0.
Scalar jackson_between(Scalar tau1, Scalar tau2, const Integrand& f,
                       const Nome& q, const TruncationPolicy& pol = {});

// ---------------------------------------------------------------------------
// Riemann-Papperitz integrals

/// The map t -> prod_k (a_k t)_inf / (b_k t)_inf.
/// The returned closure throws PoleHit when a denominator factor falls
/// below 1e-13 in magnitude at a visited node.
Integrand rp_integrand(const RPParams& p, const Nome& q,
                       const TruncationPolicy& pol = {});

/// phi_{i,j} = int_{q/a_i}^{q/a_j} of the Riemann-Papperitz integrand,
/// 1-based endpoint indices. Rejects endpoint pairs on a common q-lattice.
Scalar phi(const RPParams& p, int i, int j, const Nome& q,
           const TruncationPolicy& pol = {});

/// Assemble balanced RPParams from the split a_1 = A x, b_1 = B x.
/// Requires A a_2...a_{M+3} = q^2 B b_2...b_{M+3}.
RPParams rp_from_ABx(int M, Scalar A, Scalar B, Scalar x,
                     std::span<const Scalar> a_rest,
                     std::span<const Scalar> b_rest, const Nome& q);
RPParams rp_from_ABx(const EMParams& em, Scalar x, const Nome& q);

// ---------------------------------------------------------------------------
// Jordan-Pochhammer integrals

/// int_0^{q b_1} t^{rho-1} prod_i (t/b_i)_inf / (t/a_i)_inf d_q t.
/// Requires Re(rho) > 0; t^{rho-1} uses the principal branch.
Scalar jp_lhs_integral(const JPParams& p, const Nome& q,
                       const TruncationPolicy& pol = {});

/// int_0^{q/a_k} t^{alpha-1} prod_i (a_i t)_inf / (b_i t)_inf d_q t,
/// 1-based index k.
Scalar jp_rhs_integral(const JPParams& p, int k, const Nome& q,
                       const TruncationPolicy& pol = {});

// ---------------------------------------------------------------------------
// Degree-three variant integrals

/// x^{nu-alpha} int_{tau_i}^{tau_j} of the variant integrand, with
/// tau_1..tau_3 = q^{-h_i-1/2}/t_i and tau_4 = q^{1-nu}/x.
Scalar h3_phi(const H3Params& hp, int i, int j, const Nome& q,
              const TruncationPolicy& pol = {});

/// The unilateral piece x^{nu-alpha} int_0^{tau_i}; h3_phi(i,j) is the
/// difference of the j- and i-pieces.
Scalar h3_phi_unilateral(const H3Params& hp, int i, const Nome& q,
                         const TruncationPolicy& pol = {});

// ---------------------------------------------------------------------------
// Heine integral solutions

/// int_{tau1}^{tau2} t^{alpha-1} (qt, bxt)_inf / (ct/a, xt)_inf d_q t
/// with alpha = log_q a; admissible endpoints are 0, 1 and q/(bx).
Scalar heine_integral_first(const HeineParams& hp, Scalar tau1, Scalar tau2,
                            const Nome& q, const TruncationPolicy& pol = {});

/// x^{-beta} int_{sigma1}^{sigma2} s^{beta-gamma}
///   (q a s/c, q s/x)_inf / ((s)_inf (q s/(b x))_inf) d_q s
/// with beta = log_q b, gamma = log_q c; endpoints 0, x and c/a.
Scalar heine_integral_second(const HeineParams& hp, Scalar sigma1,
                             Scalar sigma2, const Nome& q,
                             const TruncationPolicy& pol = {});

}  // namespace qconnect
