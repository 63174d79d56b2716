#pragma once

#include <vector>

#include "qconnect/params.hpp"
#include "qconnect/qcore.hpp"
#include "qconnect/report.hpp"

// Explicit q-hypergeometric series: the multiple-sum series W^{M,N}, its
// wrapper W tied to the Riemann-Papperitz integral, very-well-poised
// (r+1)W_r series, and the Bailey closed form of the q-integral.

namespace qconnect {

/// Arguments of the multiple sum
///   W^{M,N}({a_i};{x_i} | s; {u_k}; {v_k}; z)
///   = sum_{l in (Z>=0)^M} z^{|l|} Delta(x q^l)/Delta(x) * ...
struct KajiharaParams {
  int M = 1;
  int N = 2;
  std::vector<Scalar> a;  // size M
  std::vector<Scalar> x;  // size M, pairwise distinct
  Scalar s{0.0};
  std::vector<Scalar> u;  // size N
  std::vector<Scalar> v;  // size N
  Scalar z{0.0};

  void validate() const;
};

/// Very-well-poised series data: (r+1)W_r(a1; a4..a_{r+1}; z) with
/// r = upper.size() + 2.
struct VWPParams {
  Scalar a1{0.0};
  std::vector<Scalar> upper;
  Scalar z{0.0};
};

/// Evaluate W^{M,N} by graded layers |l| = L; a layer is accepted once the
/// magnitude of its sum stays below pol.tol times the accumulated term scale
/// for three consecutive layers. Layers are capped by pol.max_total_index.
Scalar kajihara_w(const KajiharaParams& p, const Nome& q,
                  const TruncationPolicy& pol = {});

/// The prefactored W^{M,2} specialization attached to balanced RP data.
/// Requires |a_3/b_1| < 1.
Scalar w_wrapper(const RPParams& p, const Nome& q,
                 const TruncationPolicy& pol = {});

/// The W^{M,2} argument list used by w_wrapper (exposed so samplers can
/// guard its denominator lattices).
KajiharaParams w_series_args(const RPParams& p, const Nome& q);

/// Very-well-poised sum with term-recursive evaluation. Terminating upper
/// parameters (a_i on the q^{-m} lattice) stop the sum exactly.
Scalar vwp_series(const VWPParams& p, const Nome& q,
                  const TruncationPolicy& pol = {});

/// 8W7 convenience wrapper.
Scalar w87(Scalar a1, Scalar a4, Scalar a5, Scalar a6, Scalar a7, Scalar a8,
           Scalar z, const Nome& q, const TruncationPolicy& pol = {});

/// Closed form of int_a^b (qt/a, qt/b, ct, dt)_inf / (et, ft, gt, ht)_inf d_q t:
/// prefactor times 8W7(bcd/(hq); be, bf, bg, c/h, d/h; ah).
/// Requires cd = abefgh and |ah| < 1.
Scalar bailey_rhs(Scalar a, Scalar b, Scalar c, Scalar d, Scalar e, Scalar f,
                  Scalar g, Scalar h, const Nome& q,
                  const TruncationPolicy& pol = {});

}  // namespace qconnect
