#include "qconnect/jackson.hpp"

#include <cmath>

namespace qconnect {

namespace {

constexpr double kPoleFloor = 1e-13;
constexpr double kLatticeGuard = 1e-6;
constexpr int kQuietTerms = 5;

// One-sided lattice sum (1-q) sum_{n>=0} f(tau q^n) tau q^n starting from a
// given node value.
Scalar lattice_sum_down(Scalar tau, const Integrand& f, const Nome& q,
                        const TruncationPolicy& pol) {
  Scalar sum = 0.0;
  double abs_scale = 0.0;
  int quiet = 0;
  Scalar node = tau;
  for (int n = 0; n < pol.max_terms; ++n) {
    const Scalar fv = f(node);
    require_finite(fv, "jackson integrand");
    const Scalar term = fv * node;
    sum += term;
    abs_scale += std::abs(term);
    if (std::abs(term) <= pol.tol * abs_scale)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= kQuietTerms) return (1.0 - q.value()) * sum;
    node *= q.value();
  }
  throw TruncationExceeded("jackson: descending tail not converged");
}

}  // namespace

Scalar jackson_0_to(Scalar tau, const Integrand& f, const Nome& q,
                    const TruncationPolicy& pol) {
  pol.validate();
  if (tau == Scalar(0.0)) throw DomainError("jackson_0_to: tau = 0");
  return lattice_sum_down(tau, f, q, pol);
}

Scalar jackson_bilateral(Scalar tau, const Integrand& f, const Nome& q,
                         const TruncationPolicy& pol) {
  pol.validate();
  if (tau == Scalar(0.0)) throw DomainError("jackson_bilateral: tau = 0");
  const Scalar down = lattice_sum_down(tau, f, q, pol);

  // ascending tail: nodes tau q^{-n}, n >= 1
  Scalar sum = 0.0;
  double abs_scale = 0.0;
  int quiet = 0;
  Scalar node = tau / q.value();
  for (int n = 1; n < pol.max_terms; ++n) {
    const Scalar fv = f(node);
    require_finite(fv, "jackson integrand");
    const Scalar term = fv * node;
    sum += term;
    abs_scale += std::abs(term);
    if (std::abs(term) <= pol.tol * abs_scale)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= kQuietTerms) return down + (1.0 - q.value()) * sum;
    node /= q.value();
  }
  throw TruncationExceeded("jackson_bilateral: ascending tail not converged");
}

Scalar jackson_between(Scalar tau1, Scalar tau2, const Integrand& f,
                       const Nome& q, const TruncationPolicy& pol) {
  const Scalar upper =
      tau2 == Scalar(0.0) ? Scalar(0.0) : jackson_0_to(tau2, f, q, pol);
  const Scalar lower =
      tau1 == Scalar(0.0) ? Scalar(0.0) : jackson_0_to(tau1, f, q, pol);
  return upper - lower;
}

Integrand rp_integrand(const RPParams& p, const Nome& q,
                       const TruncationPolicy& pol) {
  p.validate_shape();
  return [p, q, pol](Scalar t) -> Scalar {
    Scalar value = 1.0;
    for (std::size_t k = 0; k < p.a.size(); ++k) {
      const Scalar den = qpoch_inf(p.b[k] * t, q, pol);
      if (std::abs(den) < kPoleFloor)
        throw PoleHit("rp_integrand: (b_k t)_inf vanished at a visited node");
      value *= qpoch_inf(p.a[k] * t, q, pol) / den;
    }
    return value;
  };
}

Scalar phi(const RPParams& p, int i, int j, const Nome& q,
           const TruncationPolicy& pol) {
  p.validate_shape();
  const int n = p.M + 3;
  if (i < 1 || i > n || j < 1 || j > n)
    throw DomainError("phi: endpoint index out of range");
  if (i == j) return 0.0;
  if (lattice_distance(p.a[i - 1] / p.a[j - 1], q) < kLatticeGuard)
    throw LatticeCollision("phi: endpoints q/a_i, q/a_j on a common q-lattice");
  const Integrand f = rp_integrand(p, q, pol);
  return jackson_between(q.value() / p.a[i - 1], q.value() / p.a[j - 1], f, q,
                         pol);
}

RPParams rp_from_ABx(int M, Scalar A, Scalar B, Scalar x,
                     std::span<const Scalar> a_rest,
                     std::span<const Scalar> b_rest, const Nome& q) {
  if (M < 1) throw DomainError("rp_from_ABx: M must be >= 1");
  if (a_rest.size() != std::size_t(M) + 2 || b_rest.size() != std::size_t(M) + 2)
    throw DomainError("rp_from_ABx: trailing lists must have length M+2");
  RPParams p;
  p.M = M;
  p.a.reserve(M + 3);
  p.b.reserve(M + 3);
  p.a.push_back(A * x);
  p.b.push_back(B * x);
  p.a.insert(p.a.end(), a_rest.begin(), a_rest.end());
  p.b.insert(p.b.end(), b_rest.begin(), b_rest.end());
  p.validate(q);  // x cancels in the balance ratio
  return p;
}

RPParams rp_from_ABx(const EMParams& em, Scalar x, const Nome& q) {
  return rp_from_ABx(em.M, em.A, em.B, x, em.a_rest, em.b_rest, q);
}

Scalar jp_lhs_integral(const JPParams& p, const Nome& q,
                       const TruncationPolicy& pol) {
  p.validate(q);
  const Scalar rho = p.rho(q);
  const Integrand f = [&p, &q, &pol, rho](Scalar t) -> Scalar {
    Scalar value = principal_power(t, rho - 1.0);
    for (std::size_t i = 0; i < p.a.size(); ++i) {
      const Scalar den = qpoch_inf(t / p.a[i], q, pol);
      if (std::abs(den) < kPoleFloor)
        throw PoleHit("jp_lhs_integral: (t/a_i)_inf vanished");
      value *= qpoch_inf(t / p.b[i], q, pol) / den;
    }
    return value;
  };
  return jackson_0_to(q.value() * p.b[0], f, q, pol);
}

Scalar jp_rhs_integral(const JPParams& p, int k, const Nome& q,
                       const TruncationPolicy& pol) {
  p.validate(q);
  const int n = p.M + 3;
  if (k < 1 || k > n) throw DomainError("jp_rhs_integral: index out of range");
  const Scalar alpha = p.alpha;
  const Integrand f = [&p, &q, &pol, alpha](Scalar t) -> Scalar {
    Scalar value = principal_power(t, alpha - 1.0);
    for (std::size_t i = 0; i < p.a.size(); ++i) {
      const Scalar den = qpoch_inf(p.b[i] * t, q, pol);
      if (std::abs(den) < kPoleFloor)
        throw PoleHit("jp_rhs_integral: (b_i t)_inf vanished");
      value *= qpoch_inf(p.a[i] * t, q, pol) / den;
    }
    return value;
  };
  return jackson_0_to(q.value() / p.a[k - 1], f, q, pol);
}

namespace {

Integrand h3_integrand(const H3Params& hp, const Nome& q,
                       const TruncationPolicy& pol) {
  const Scalar qv = q.value();
  const Scalar num_x = principal_power(qv, hp.nu) * hp.x;
  std::array<Scalar, 3> num_t, den_t;
  for (int k = 0; k < 3; ++k) {
    num_t[k] = principal_power(qv, hp.h[k] + 0.5) * hp.t[k];
    den_t[k] = principal_power(qv, hp.nu + hp.l[k] - 0.5) * hp.t[k];
  }
  const Scalar x = hp.x;
  return [q, pol, num_x, num_t, den_t, x](Scalar t) -> Scalar {
    Scalar value = qpoch_inf(num_x * t, q, pol);
    Scalar den = qpoch_inf(x * t, q, pol);
    for (int k = 0; k < 3; ++k) {
      value *= qpoch_inf(num_t[k] * t, q, pol);
      den *= qpoch_inf(den_t[k] * t, q, pol);
    }
    if (std::abs(den) < kPoleFloor)
      throw PoleHit("h3_phi: denominator Pochhammer vanished");
    return value / den;
  };
}

}  // namespace

Scalar h3_phi(const H3Params& hp, int i, int j, const Nome& q,
              const TruncationPolicy& pol) {
  hp.validate(q);
  if (i < 1 || i > 4 || j < 1 || j > 4)
    throw DomainError("h3_phi: endpoint index in 1..4");
  if (i == j) return 0.0;
  const Scalar ti = hp.tau(i, q), tj = hp.tau(j, q);
  if (lattice_distance(ti / tj, q) < kLatticeGuard)
    throw LatticeCollision("h3_phi: endpoints on a common q-lattice");
  const Integrand f = h3_integrand(hp, q, pol);
  return principal_power(hp.x, hp.nu - hp.alpha) *
         jackson_between(ti, tj, f, q, pol);
}

Scalar h3_phi_unilateral(const H3Params& hp, int i, const Nome& q,
                         const TruncationPolicy& pol) {
  hp.validate(q);
  if (i < 1 || i > 4) throw DomainError("h3_phi_unilateral: index in 1..4");
  const Integrand f = h3_integrand(hp, q, pol);
  return principal_power(hp.x, hp.nu - hp.alpha) *
         jackson_0_to(hp.tau(i, q), f, q, pol);
}

Scalar heine_integral_first(const HeineParams& hp, Scalar tau1, Scalar tau2,
                            const Nome& q, const TruncationPolicy& pol) {
  hp.validate();
  const Scalar alpha = log_q(hp.a, q);
  const Scalar qv = q.value();
  const Integrand f = [&, alpha](Scalar t) -> Scalar {
    const Scalar den =
        qpoch_inf(hp.c * t / hp.a, q, pol) * qpoch_inf(hp.x * t, q, pol);
    if (std::abs(den) < kPoleFloor)
      throw PoleHit("heine_integral_first: denominator vanished");
    return principal_power(t, alpha - 1.0) * qpoch_inf(qv * t, q, pol) *
           qpoch_inf(hp.b * hp.x * t, q, pol) / den;
  };
  return jackson_between(tau1, tau2, f, q, pol);
}

Scalar heine_integral_second(const HeineParams& hp, Scalar sigma1,
                             Scalar sigma2, const Nome& q,
                             const TruncationPolicy& pol) {
  hp.validate();
  const Scalar beta = log_q(hp.b, q);
  const Scalar gamma = log_q(hp.c, q);
  const Scalar qv = q.value();
  const Integrand f = [&, beta, gamma](Scalar s) -> Scalar {
    const Scalar den =
        qpoch_inf(s, q, pol) * qpoch_inf(qv * s / (hp.b * hp.x), q, pol);
    if (std::abs(den) < kPoleFloor)
      throw PoleHit("heine_integral_second: denominator vanished");
    return principal_power(s, beta - gamma) *
           qpoch_inf(qv * hp.a * s / hp.c, q, pol) *
           qpoch_inf(qv * s / hp.x, q, pol) / den;
  };
  return principal_power(hp.x, -beta) *
         jackson_between(sigma1, sigma2, f, q, pol);
}

}  // namespace qconnect
