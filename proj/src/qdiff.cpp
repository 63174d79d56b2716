#include "qconnect/qdiff.hpp"

#include <cmath>

#include "qconnect/jackson.hpp"

namespace qconnect {

namespace {

constexpr double kDenFloor = 1e-12;

using TPoly = std::vector<Scalar>;  // coefficients by power of T

TPoly poly_mul(const TPoly& p, const TPoly& r) {
  TPoly out(p.size() + r.size() - 1, Scalar(0.0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) out[i + j] += p[i] * r[j];
  return out;
}

// prod_{i=0}^{n-1} (B - A q^i T)
TPoly prod_B_minus_AqT(Scalar A, Scalar B, const Nome& q, int n) {
  TPoly out{Scalar(1.0)};
  Scalar Aq = A;
  for (int i = 0; i < n; ++i) {
    out = poly_mul(out, TPoly{B, -Aq});
    Aq *= q.value();
  }
  return out;
}

// prod_{i=0}^{n-1} (1 - q^{-i} T)
TPoly prod_one_minus_qmT(const Nome& q, int n) {
  TPoly out{Scalar(1.0)};
  Scalar qm = 1.0;
  for (int i = 0; i < n; ++i) {
    out = poly_mul(out, TPoly{Scalar(1.0), -qm});
    qm /= q.value();
  }
  return out;
}

Scalar ipow(Scalar base, long e) {
  Scalar out = 1.0;
  bool inv = e < 0;
  unsigned long k = inv ? -(unsigned long)e : (unsigned long)e;
  while (k) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return inv ? 1.0 / out : out;
}

}  // namespace

OperatorValue heine_apply_scaled(const HeineParams& hp, const LatticeFn& y,
                                 const Nome& q) {
  hp.validate();
  const Scalar qv = q.value();
  const Scalar x = hp.x;
  // x(1-aT)(1-bT) - (1-T)(1 - c q^{-1} T), expanded by shift
  const Scalar c0 = x - 1.0;
  const Scalar c1 = -(x * (hp.a + hp.b) - (1.0 + hp.c / qv));
  const Scalar c2 = x * hp.a * hp.b - hp.c / qv;

  const Scalar t0 = c0 * y(x);
  const Scalar t1 = c1 * y(qv * x);
  const Scalar t2 = c2 * y(qv * qv * x);
  OperatorValue out;
  out.value = t0 + t1 + t2;
  out.term_scale = std::abs(t0) + std::abs(t1) + std::abs(t2);
  require_finite(out.value, "heine_apply");
  return out;
}

Scalar heine_apply(const HeineParams& hp, const LatticeFn& y, const Nome& q) {
  return heine_apply_scaled(hp, y, q).value;
}

std::array<Scalar, 3> h3_shift_coefficients(const H3Params& hp,
                                            const Nome& q) {
  hp.validate(q);
  const Scalar qv = q.value();
  const Scalar x = hp.x;

  Scalar c_down = 1.0;  // coefficient of y(x/q)
  Scalar c_up = principal_power(qv, 2.0 * hp.alpha + 1.0);
  Scalar sum_h = 0.0, sum_l = 0.0;
  Scalar t123 = 1.0;
  Scalar s2 = 0.0;  // sum (q^{h_i}+q^{l_i}) t_i
  Scalar s1 = 0.0;  // sum (q^{-h_i}+q^{-l_i})/t_i
  for (int i = 0; i < 3; ++i) {
    const Scalar qh = principal_power(qv, hp.h[i]);
    const Scalar ql = principal_power(qv, hp.l[i]);
    c_down *= x - qh * std::sqrt(qv) * hp.t[i];
    c_up *= x - ql / std::sqrt(qv) * hp.t[i];
    sum_h += hp.h[i];
    sum_l += hp.l[i];
    t123 *= hp.t[i];
    s2 += (qh + ql) * hp.t[i];
    s1 += (1.0 / qh + 1.0 / ql) / hp.t[i];
  }
  const Scalar qa = principal_power(qv, hp.alpha);
  const Scalar c_mid =
      qa * (-(qv + 1.0) * x * x * x + std::sqrt(qv) * s2 * x * x -
            principal_power(qv, (sum_h + sum_l + 1.0) / 2.0) * t123 * s1 * x +
            principal_power(qv, (sum_h + sum_l) / 2.0) * (qv + 1.0) * t123);
  return {c_down, c_mid, c_up};
}

OperatorValue h3_apply_scaled(const H3Params& hp, const LatticeFn& y,
                              const Nome& q) {
  const std::array<Scalar, 3> c = h3_shift_coefficients(hp, q);
  const Scalar qv = q.value();
  const Scalar t_down = c[0] * y(hp.x / qv);
  const Scalar t_mid = c[1] * y(hp.x);
  const Scalar t_up = c[2] * y(qv * hp.x);
  OperatorValue out;
  out.value = t_down + t_mid + t_up;
  out.term_scale = std::abs(t_down) + std::abs(t_mid) + std::abs(t_up);
  require_finite(out.value, "h3_apply");
  return out;
}

Scalar h3_apply(const H3Params& hp, const LatticeFn& y, const Nome& q) {
  return h3_apply_scaled(hp, y, q).value;
}

std::vector<Scalar> em_shift_coefficients(const EMParams& em, Scalar x,
                                          const Nome& q) {
  em.validate(q);
  const int M = em.M;
  const Scalar qv = q.value();
  std::vector<Scalar> c(std::size_t(M) + 2, Scalar(0.0));  // shifts -1..M

  const auto at = [&](const TPoly& p, long k) -> Scalar {
    return (k >= 0 && k < long(p.size())) ? p[std::size_t(k)] : Scalar(0.0);
  };

  // x^{M+2} T^{-1} prod_{i=0}^{M} (B - A q^i T)
  {
    const TPoly P = prod_B_minus_AqT(em.A, em.B, q, M + 1);
    const Scalar xp = ipow(x, M + 2);
    for (int j = -1; j <= M; ++j) c[j + 1] += xp * at(P, j + 1);
  }

  // sum_k (-1)^k x^{M+2-k} [e_k(a) T^{-1} - q e_k(b)]
  //       prod_{i=0}^{M-k}(B - A q^i T) prod_{i=0}^{k-2}(1 - q^{-i} T)
  for (int k = 1; k <= M + 1; ++k) {
    const TPoly R = poly_mul(prod_B_minus_AqT(em.A, em.B, q, M - k + 1),
                             prod_one_minus_qmT(q, k - 1));
    const Scalar eka = elem_sym(std::size_t(k), em.a_rest);
    const Scalar ekb = elem_sym(std::size_t(k), em.b_rest);
    const Scalar sign = (k % 2 == 0) ? 1.0 : -1.0;
    const Scalar xp = sign * ipow(x, M + 2 - k);
    for (int j = -1; j <= M; ++j)
      c[j + 1] += xp * (eka * at(R, j + 1) - qv * ekb * at(R, j));
  }

  // (-1)^M (a_2...a_{M+3}/B) T^{-1} prod_{i=0}^{M}(1 - q^{-i} T)
  {
    const TPoly S = prod_one_minus_qmT(q, M + 1);
    const Scalar pref =
        ((M % 2 == 0) ? 1.0 : -1.0) * em.upper_product() / em.B;
    for (int j = -1; j <= M; ++j) c[j + 1] += pref * at(S, j + 1);
  }
  return c;
}

OperatorValue em_apply_scaled(const EMParams& em, Scalar x, const LatticeFn& y,
                              const Nome& q) {
  const std::vector<Scalar> c = em_shift_coefficients(em, x, q);
  OperatorValue out;
  Scalar arg = x / q.value();
  for (int j = -1; j <= em.M; ++j) {
    const Scalar term = c[j + 1] * y(arg);
    out.value += term;
    out.term_scale += std::abs(term);
    arg *= q.value();
  }
  require_finite(out.value, "em_apply");
  return out;
}

Scalar em_apply(const EMParams& em, Scalar x, const LatticeFn& y,
                const Nome& q) {
  return em_apply_scaled(em, x, y, q).value;
}

Scalar em_nonhomog_rhs(const EMParams& em, Scalar x, const Nome& q) {
  const Scalar qv = q.value();
  Scalar prod = 1.0;
  Scalar Aq = em.A;
  for (int i = 0; i < em.M; ++i) {
    prod *= em.B - Aq;
    Aq *= qv;
  }
  return -prod * qv * (1.0 - qv) * ipow(x, em.M + 1);
}

IdentityReport em_nonhomog_residual(const EMParams& em, Scalar x,
                                    int tau_choice, const Nome& q,
                                    const TruncationPolicy& pol, double tol) {
  em.validate(q);
  if (tau_choice < 0 || tau_choice > em.M + 1)
    throw DomainError("em_nonhomog_residual: tau_choice in 0..M+1");

  const LatticeFn y = [&em, tau_choice, &q, &pol](Scalar xs) -> Scalar {
    const Scalar tau = tau_choice == 0 ? q.value() / (em.A * xs)
                                       : q.value() / em.a_rest[tau_choice - 1];
    const Integrand f = [&em, xs, &q, &pol](Scalar t) -> Scalar {
      Scalar den = qpoch_inf(em.B * xs * t, q, pol);
      Scalar num = qpoch_inf(em.A * xs * t, q, pol);
      for (std::size_t k = 0; k < em.a_rest.size(); ++k) {
        num *= qpoch_inf(em.a_rest[k] * t, q, pol);
        den *= qpoch_inf(em.b_rest[k] * t, q, pol);
      }
      if (std::abs(den) < kDenFloor)
        throw PoleHit("em_nonhomog_residual: integrand denominator vanished");
      return num / den;
    };
    return jackson_0_to(tau, f, q, pol);
  };

  const OperatorValue lhs = em_apply_scaled(em, x, y, q);
  const Scalar rhs = em_nonhomog_rhs(em, x, q);
  return make_report(lhs.value, rhs, lhs.term_scale + std::abs(rhs), tol);
}

EMSplit h3_to_rp(const H3Params& hp, const Nome& q) {
  hp.validate(q);
  EMSplit out;
  out.em.M = 1;
  out.em.A = 1.0;
  out.em.B = principal_power(q.value(), -hp.nu);
  for (int i = 0; i < 3; ++i) {
    out.em.a_rest.push_back(out.em.B *
                            principal_power(q.value(), hp.h[i] + 0.5) *
                            hp.t[i]);
    out.em.b_rest.push_back(out.em.A *
                            principal_power(q.value(), hp.l[i] - 0.5) *
                            hp.t[i]);
  }
  out.x = hp.x;
  out.em.validate(q);
  return out;
}

H3Params rp_to_h3(const EMParams& em, Scalar x, Scalar alpha, const Nome& q) {
  em.validate(q);
  if (em.M != 1) throw DomainError("rp_to_h3: requires M = 1");
  std::array<Scalar, 3> h{}, l{}, t{};
  for (int i = 0; i < 3; ++i) {
    h[i] = log_q(em.a_rest[i] / em.B, q) - 0.5;
    l[i] = log_q(em.b_rest[i] / em.A, q) + 0.5;
    t[i] = 1.0;
  }
  return make_h3_params(alpha, h, l, t, x);
}

Scalar gm_Cn(const GMParams& g, const Nome& q) {
  const Scalar aq = g.a * ipow(q.value(), g.n + 1);  // a q^{n+1}
  const Scalar den = 1.0 - aq / g.h;
  if (std::abs(den) < kDenFloor)
    throw DomainError("gm_Cn: vanishing denominator 1 - a q^{n+1}/h");
  return -(1.0 - aq / (g.b * g.h)) * (1.0 - aq / (g.c * g.h)) *
         (1.0 - aq / (g.d * g.h)) * (1.0 - aq / (g.e * g.h)) / den;
}

Scalar gm_Dn(const GMParams& g, const Nome& q) {
  const Scalar qn = ipow(q.value(), g.n);
  const Scalar bcde = g.b * g.c * g.d * g.e;
  return -q.value() * (1.0 - qn / g.h) * (1.0 - g.a * qn / g.h) *
         (1.0 - g.a * g.a * qn * q.value() / (bcde * g.h));
}

std::pair<Scalar, Scalar> gm_coeffs(const GMParams& g, const Nome& q) {
  const Scalar aq = g.a * ipow(q.value(), g.n + 1);
  const Scalar den = 1.0 - aq / g.h;
  if (std::abs(den) < kDenFloor)
    throw DomainError("gm_coeffs: vanishing denominator 1 - a q^{n+1}/h");
  const Scalar bcde = g.b * g.c * g.d * g.e;
  const Scalar extra = g.a * g.a * ipow(q.value(), 2 * g.n + 2) /
                       (bcde * g.h * g.h) * (1.0 - g.b) * (1.0 - g.c) *
                       (1.0 - g.d) * (1.0 - g.e) / den;
  const Scalar cn = gm_Cn(g, q) + gm_Dn(g, q) + extra;
  GMParams gm1 = g;
  gm1.n = g.n - 1;
  const Scalar dn = gm_Cn(gm1, q) * gm_Dn(g, q);
  return {cn, dn};
}

GMParams gm_from_em(const EMParams& em, Scalar x0, const Nome& q) {
  if (em.M != 1) throw DomainError("gm_from_em: requires M = 1");
  GMParams g;
  const Scalar a3 = em.a_rest[1];
  g.a = em.a_rest[0] * em.A / (a3 * em.B);
  g.b = q.value() * em.b_rest[0] / a3;
  g.c = q.value() * em.b_rest[1] / a3;
  g.d = q.value() * em.b_rest[2] / a3;
  g.e = em.A / em.B;
  g.h = em.a_rest[0] / (em.B * x0);
  g.f = g.h;
  g.n = 0;
  return g;
}

IdentityReport gm_recurrence_residual_fn(const EMParams& em, Scalar x0,
                                         const LatticeFn& y, int n_lo,
                                         int n_hi, const Nome& q,
                                         const TruncationPolicy& pol,
                                         double tol) {
  em.validate(q);
  if (em.M != 1) throw DomainError("gm_recurrence_residual: requires M = 1");
  if (n_lo > n_hi) throw DomainError("gm_recurrence_residual: empty window");

  GMParams g = gm_from_em(em, x0, q);

  const auto gauge = [&](Scalar xs) -> Scalar {
    Scalar prod = 1.0;
    for (int i = 0; i < 3; ++i)
      prod *= qpoch_inf(em.A * xs / em.b_rest[i], q, pol);
    if (std::abs(prod) < kDenFloor)
      throw PoleHit("gm_recurrence_residual: gauge Pochhammer vanished");
    return prod;
  };
  const auto Y = [&](long n) -> Scalar {
    const Scalar xn = x0 * ipow(q.value(), n);
    const Scalar sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * y(xn) / gauge(xn);
  };

  double abs_res = 0.0, scale = 0.0;
  for (long n = n_lo; n <= n_hi; ++n) {
    g.n = n;
    const auto [cn, dn] = gm_coeffs(g, q);
    const Scalar t1 = Y(n + 1);
    const Scalar t2 = -cn * Y(n);
    const Scalar t3 = dn * Y(n - 1);
    abs_res += std::abs(t1 + t2 + t3);
    scale += std::abs(t1) + std::abs(t2) + std::abs(t3);
  }
  IdentityReport r = make_report(Scalar(abs_res), Scalar(0.0), scale, tol);
  r.terms_used = n_hi - n_lo + 1;
  return r;
}

IdentityReport gm_recurrence_residual(const EMParams& em, Scalar x0, int sol_i,
                                      int sol_j, int n_lo, int n_hi,
                                      const Nome& q,
                                      const TruncationPolicy& pol,
                                      double tol) {
  const LatticeFn y = [&](Scalar xs) -> Scalar {
    return phi(rp_from_ABx(em, xs, q), sol_i, sol_j, q, pol);
  };
  return gm_recurrence_residual_fn(em, x0, y, n_lo, n_hi, q, pol, tol);
}

}  // namespace qconnect
