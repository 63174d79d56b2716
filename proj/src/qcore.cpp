#include "qconnect/qcore.hpp"

#include <cmath>

namespace qconnect {

Nome::Nome(Scalar q) : q_(q), abs_(std::abs(q)), log_(std::log(q)) {
  if (!(abs_ > 0.0) || !(abs_ < 1.0) || !is_finite(q))
    throw DomainError("Nome: require 0 < |q| < 1");
}

Scalar qpoch_inf(Scalar a, const Nome& q, const TruncationPolicy& pol) {
  pol.validate();
  if (a == Scalar(0.0)) return 1.0;
  require_finite(a, "qpoch_inf");

  // Stop once |a q^i| <= tol*(1-|q|): the remaining log-tail is bounded by
  // the geometric series |a q^i|/(1-|q|) <= tol.
  const double cutoff = pol.tol * (1.0 - q.abs());
  Scalar prod = 1.0;
  Scalar aq = a;
  for (int i = 0; i < pol.max_terms; ++i) {
    if (std::abs(aq) <= cutoff) return prod;
    prod *= (1.0 - aq);
    aq *= q.value();
  }
  throw TruncationExceeded("qpoch_inf: tail bound not reached within max_terms");
}

Scalar qpoch_fin(Scalar a, const Nome& q, long l) {
  if (l < 0) throw DomainError("qpoch_fin: negative length");
  Scalar prod = 1.0;
  Scalar aq = a;
  for (long i = 0; i < l; ++i) {
    prod *= (1.0 - aq);
    aq *= q.value();
  }
  return prod;
}

Scalar qpoch_inf(std::span<const Scalar> as, const Nome& q,
                 const TruncationPolicy& pol) {
  Scalar prod = 1.0;
  for (Scalar a : as) prod *= qpoch_inf(a, q, pol);
  return prod;
}

Scalar qpoch_inf(std::initializer_list<Scalar> as, const Nome& q,
                 const TruncationPolicy& pol) {
  return qpoch_inf(std::span<const Scalar>(as.begin(), as.size()), q, pol);
}

Scalar qpoch_fin(std::span<const Scalar> as, const Nome& q, long l) {
  Scalar prod = 1.0;
  for (Scalar a : as) prod *= qpoch_fin(a, q, l);
  return prod;
}

Scalar qpoch_fin(std::initializer_list<Scalar> as, const Nome& q, long l) {
  return qpoch_fin(std::span<const Scalar>(as.begin(), as.size()), q, l);
}

Scalar theta(Scalar x, const Nome& q, const TruncationPolicy& pol) {
  if (x == Scalar(0.0)) throw DomainError("theta: x = 0");
  return qpoch_inf(x, q, pol) * qpoch_inf(q.value() / x, q, pol);
}

Scalar theta(std::span<const Scalar> xs, const Nome& q,
             const TruncationPolicy& pol) {
  Scalar prod = 1.0;
  for (Scalar x : xs) prod *= theta(x, q, pol);
  return prod;
}

Scalar theta(std::initializer_list<Scalar> xs, const Nome& q,
             const TruncationPolicy& pol) {
  return theta(std::span<const Scalar>(xs.begin(), xs.size()), q, pol);
}

Scalar elem_sym(std::size_t k, std::span<const Scalar> xs) {
  if (k > xs.size()) return 0.0;
  // e[j] after processing x_1..x_m holds e_j(x_1..x_m).
  std::vector<Scalar> e(k + 1, 0.0);
  e[0] = 1.0;
  for (Scalar x : xs)
    for (std::size_t j = k; j >= 1; --j) e[j] += x * e[j - 1];
  return e[k];
}

Scalar elem_sym(std::size_t k, std::initializer_list<Scalar> xs) {
  return elem_sym(k, std::span<const Scalar>(xs.begin(), xs.size()));
}

Scalar principal_power(Scalar x, Scalar e) {
  if (x == Scalar(0.0)) throw DomainError("principal_power: x = 0");
  if (e == Scalar(0.0)) return 1.0;
  return std::exp(e * std::log(x));
}

Scalar log_q(Scalar x, const Nome& q) {
  if (x == Scalar(0.0)) throw DomainError("log_q: x = 0");
  return std::log(x) / q.log();
}

double lattice_distance(Scalar ratio, const Nome& q) {
  const Scalar w = log_q(ratio, q);
  const double fr = w.real() - std::round(w.real());
  return std::hypot(fr, w.imag());
}

}  // namespace qconnect
