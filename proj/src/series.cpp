#include "qconnect/series.hpp"

#include <cmath>

namespace qconnect {

namespace {

constexpr double kPoleFloor = 1e-12;
constexpr int kQuietLayers = 3;
constexpr int kQuietTerms = 5;

// Finite Pochhammer that rejects nearly-vanishing factors; used for the
// denominators of series terms.
Scalar qpoch_fin_checked(Scalar a, const Nome& q, long l, const char* what) {
  Scalar prod = 1.0;
  Scalar aq = a;
  for (long i = 0; i < l; ++i) {
    const Scalar factor = 1.0 - aq;
    if (std::abs(factor) < kPoleFloor)
      throw PoleHit(std::string(what) + ": vanishing denominator factor");
    prod *= factor;
    aq *= q.value();
  }
  return prod;
}

// Advance an M-part weak composition to the next one with the same total;
// returns false after the last. First composition is (L, 0, ..., 0).
bool next_composition(std::vector<long>& l) {
  const std::size_t m = l.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (l[i] > 0) {
      const long v = l[i];
      l[i] = 0;
      ++l[i + 1];
      l[0] = v - 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void KajiharaParams::validate() const {
  if (M < 1 || N < 1) throw DomainError("KajiharaParams: M, N must be >= 1");
  if (a.size() != std::size_t(M) || x.size() != std::size_t(M) ||
      u.size() != std::size_t(N) || v.size() != std::size_t(N))
    throw DomainError("KajiharaParams: list sizes must match M and N");
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j)
      if (x[i] == x[j]) throw DomainError("KajiharaParams: x_i must be distinct");
}

Scalar kajihara_w(const KajiharaParams& p, const Nome& q,
                  const TruncationPolicy& pol) {
  p.validate();
  pol.validate();
  const int M = p.M;
  const Scalar xM = p.x[M - 1];

  // q^0 .. q^{2*max_total_index}, enough for the q^{|l|+l_i} factor
  std::vector<Scalar> qpow(2 * std::size_t(pol.max_total_index) + 2);
  qpow[0] = 1.0;
  for (std::size_t m = 1; m < qpow.size(); ++m) qpow[m] = qpow[m - 1] * q.value();

  Scalar sum = 0.0;
  double abs_scale = 0.0;
  int quiet = 0;
  Scalar z_pow = 1.0;

  std::vector<long> l(M, 0);
  for (long L = 0; L <= pol.max_total_index; ++L) {
    // part of the term depending on |l| = L only
    Scalar layer_pref = z_pow;
    for (int j = 0; j < M; ++j) {
      layer_pref *= qpoch_fin(p.s * p.x[j] / xM, q, L);
      layer_pref /= qpoch_fin_checked((p.s * q.value() / p.a[j]) * p.x[j] / xM,
                                      q, L, "kajihara_w");
    }
    for (int k = 0; k < p.N; ++k) {
      layer_pref *= qpoch_fin(p.v[k], q, L);
      layer_pref /= qpoch_fin_checked(p.s * q.value() / p.u[k], q, L,
                                      "kajihara_w");
    }

    std::fill(l.begin(), l.end(), 0);
    l[0] = L;
    Scalar layer = 0.0;
    while (true) {
      Scalar term = layer_pref;

      // Vandermonde ratio as a product of factor ratios, not determinants
      for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j)
          term *= (p.x[i] * qpow[l[i]] - p.x[j] * qpow[l[j]]) /
                  (p.x[i] - p.x[j]);

      for (int i = 0; i < M; ++i) {
        const Scalar r = p.s * p.x[i] / xM;
        const Scalar den = 1.0 - r;
        if (std::abs(den) < kPoleFloor)
          throw PoleHit("kajihara_w: 1 - s x_i/x_M vanished");
        term *= (1.0 - qpow[L + l[i]] * r) / den;
      }

      for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
          term *= qpoch_fin(p.a[j] * p.x[i] / p.x[j], q, l[i]);
          term /= qpoch_fin_checked(q.value() * p.x[i] / p.x[j], q, l[i],
                                    "kajihara_w");
        }

      for (int k = 0; k < p.N; ++k)
        for (int i = 0; i < M; ++i) {
          term *= qpoch_fin(p.u[k] * p.x[i] / xM, q, l[i]);
          term /= qpoch_fin_checked((p.s * q.value() / p.v[k]) * p.x[i] / xM,
                                    q, l[i], "kajihara_w");
        }

      require_finite(term, "kajihara_w");
      layer += term;
      abs_scale += std::abs(term);
      if (!next_composition(l)) break;
    }

    sum += layer;
    if (std::abs(layer) <= pol.tol * abs_scale)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= kQuietLayers) return sum;
    z_pow *= p.z;
  }
  throw TruncationExceeded("kajihara_w: layer tail not converged");
}

Scalar w_wrapper(const RPParams& p, const Nome& q,
                 const TruncationPolicy& pol) {
  p.validate(q);
  const int M = p.M;
  const Scalar qv = q.value();
  const auto& a = p.a;
  const auto& b = p.b;

  const Scalar z = a[2] / b[0];
  if (!(std::abs(z) < 1.0))
    throw ConvergenceDomain("w_wrapper: |a_3/b_1| must be < 1");

  const Scalar q2_over_a2a1 = qv * qv / (a[1] * a[0]);
  Scalar pre = qpoch_inf({a[2] / b[0], b[2] * b[0] * q2_over_a2a1,
                          b[1] * b[0] * q2_over_a2a1, a[1] * qv / a[0],
                          a[0] / a[1]},
                         q, pol);
  const Scalar den =
      a[0] * qpoch_inf({b[2] * qv / a[1], b[1] * qv / a[1], b[0] * qv / a[1],
                        b[2] * qv / a[0], b[1] * qv / a[0], b[0] * qv / a[0]},
                       q, pol);
  if (std::abs(den) < 1e-120)
    throw PoleHit("w_wrapper: prefactor denominator vanished");
  pre /= den;
  for (int i = 3; i < M + 3; ++i) {
    const Scalar dden = qpoch_inf(
        {a[i] * b[0] * q2_over_a2a1, b[i] * qv / a[1], b[i] * qv / a[0]}, q,
        pol);
    if (std::abs(dden) < 1e-120)
      throw PoleHit("w_wrapper: prefactor denominator vanished");
    pre *= qpoch_inf({b[i] * b[0] * q2_over_a2a1, a[i] * qv / a[1],
                      a[i] * qv / a[0]},
                     q, pol) /
           dden;
  }

  return pre * kajihara_w(w_series_args(p, q), q, pol);
}

KajiharaParams w_series_args(const RPParams& p, const Nome& q) {
  p.validate_shape();
  const int M = p.M;
  const Scalar qv = q.value();
  const auto& a = p.a;
  const auto& b = p.b;
  KajiharaParams kp;
  kp.M = M;
  kp.N = 2;
  // pairs (a_i/b_i, a_i) over i = M+3..4; the index paired with the last
  // x-slot (a_4) also seeds s and the u-block
  for (int i = 1; i <= M; ++i) {
    const int idx = M + 4 - i;  // 1-based parameter index M+3 .. 4
    kp.a.push_back(a[idx - 1] / b[idx - 1]);
    kp.x.push_back(a[idx - 1]);
  }
  kp.s = a[3] * b[0] * qv / (a[1] * a[0]);
  kp.u = {a[3] / b[2], a[3] / b[1]};
  kp.v = {b[0] * qv / a[1], b[0] * qv / a[0]};
  kp.z = a[2] / b[0];
  return kp;
}

Scalar vwp_series(const VWPParams& p, const Nome& q,
                  const TruncationPolicy& pol) {
  pol.validate();
  if (p.a1 == Scalar(1.0)) throw DomainError("vwp_series: a1 = 1");
  const Scalar qv = q.value();
  const bool inside = std::abs(p.z) < 1.0;

  Scalar sum = 0.0;
  double abs_scale = 0.0;
  int quiet = 0;
  Scalar term = 1.0;   // full term at n, including the well-poised factor
  Scalar qn = 1.0;     // q^n
  Scalar q2n = 1.0;    // q^{2n}
  for (int n = 0; n < pol.max_terms; ++n) {
    sum += term;
    abs_scale += std::abs(term);
    if (std::abs(term) <= pol.tol * abs_scale)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= kQuietTerms) return sum;
    if (!inside && std::abs(term) > 1e120)
      throw ConvergenceDomain(
          "vwp_series: |z| >= 1 and series does not terminate");

    // ratio term_{n+1}/term_n
    Scalar num = (1.0 - p.a1 * q2n * qv * qv) * (1.0 - p.a1 * qn);
    Scalar den = (1.0 - p.a1 * q2n) * (1.0 - qv * qn);
    for (Scalar ai : p.upper) {
      const Scalar fac = 1.0 - ai * qn;
      // a terminating upper parameter ends the series exactly
      if (std::abs(fac) <= 1e-13 * (1.0 + std::abs(ai * qn))) return sum;
      num *= fac;
      den *= 1.0 - qv * p.a1 * qn / ai;
    }
    if (std::abs(den) < kPoleFloor)
      throw PoleHit("vwp_series: vanishing denominator factor");
    term *= num / den * p.z;
    require_finite(term, "vwp_series");
    qn *= qv;
    q2n *= qv * qv;
  }
  throw TruncationExceeded("vwp_series: not converged within max_terms");
}

Scalar w87(Scalar a1, Scalar a4, Scalar a5, Scalar a6, Scalar a7, Scalar a8,
           Scalar z, const Nome& q, const TruncationPolicy& pol) {
  VWPParams p;
  p.a1 = a1;
  p.upper = {a4, a5, a6, a7, a8};
  p.z = z;
  return vwp_series(p, q, pol);
}

Scalar bailey_rhs(Scalar a, Scalar b, Scalar c, Scalar d, Scalar e, Scalar f,
                  Scalar g, Scalar h, const Nome& q,
                  const TruncationPolicy& pol) {
  const Scalar cd = c * d;
  const Scalar balance = a * b * e * f * g * h;
  if (std::abs(cd - balance) > 1e-12 * std::abs(balance))
    throw BalanceViolation("bailey_rhs: cd != abefgh");
  if (!(std::abs(a * h) < 1.0))
    throw ConvergenceDomain("bailey_rhs: |ah| must be < 1");

  const Scalar qv = q.value();
  const Scalar num = qpoch_inf({qv, b * qv / a, a / b, cd / (e * h),
                                cd / (f * h), cd / (g * h), b * c, b * d},
                               q, pol);
  const Scalar den = qpoch_inf(
      {a * e, a * f, a * g, b * e, b * f, b * g, b * h, b * cd / h}, q, pol);
  if (std::abs(den) < 1e-120)
    throw PoleHit("bailey_rhs: prefactor denominator vanished");
  return b * (1.0 - qv) * num / den *
         w87(b * cd / (h * qv), b * e, b * f, b * g, c / h, d / h, a * h, q,
             pol);
}

}  // namespace qconnect
