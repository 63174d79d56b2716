#pragma once

// Independent brute-force oracles for the test suites. These deliberately
// avoid the library's truncation logic: fixed factor counts, direct
// summations, no shared code paths with what they check.

#include <cmath>
#include <complex>
#include <vector>

#include "qconnect/qcore.hpp"

namespace oracles {

using qconnect::Scalar;

// (a)_inf by a blunt fixed-length product
inline Scalar qpoch_brute(Scalar a, Scalar q, int factors = 200) {
  Scalar prod = 1.0;
  Scalar aq = a;
  for (int i = 0; i < factors; ++i) {
    prod *= (1.0 - aq);
    aq *= q;
  }
  return prod;
}

// (a)_l
inline Scalar qpoch_fin_brute(Scalar a, Scalar q, long l) {
  Scalar prod = 1.0;
  Scalar aq = a;
  for (long i = 0; i < l; ++i) {
    prod *= (1.0 - aq);
    aq *= q;
  }
  return prod;
}

// (1-q) sum_{n=0}^{terms} f(tau q^n) tau q^n with a fixed term count
template <typename F>
Scalar jackson_down_brute(Scalar tau, F&& f, Scalar q, int terms = 400) {
  Scalar sum = 0.0;
  Scalar node = tau;
  for (int n = 0; n <= terms; ++n) {
    sum += f(node) * node;
    node *= q;
  }
  return (1.0 - q) * sum;
}

// two-sided lattice sum with fixed counts per tail
template <typename F>
Scalar jackson_bilateral_brute(Scalar tau, F&& f, Scalar q, int asc_terms,
                               int desc_terms = 200) {
  Scalar sum = 0.0;
  Scalar node = tau;
  for (int n = 0; n <= desc_terms; ++n) {
    sum += f(node) * node;
    node *= q;
  }
  node = tau / q;
  for (int n = 1; n <= asc_terms; ++n) {
    sum += f(node) * node;
    node /= q;
  }
  return (1.0 - q) * sum;
}

// Riemann-Papperitz integrand evaluated factor by factor with brute products
inline Scalar rp_integrand_brute(const std::vector<Scalar>& a,
                                 const std::vector<Scalar>& b, Scalar q,
                                 Scalar t) {
  Scalar v = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    v *= qpoch_brute(a[k] * t, q) / qpoch_brute(b[k] * t, q);
  return v;
}

// phi_{i,j} by direct fixed-length summation of the defining lattice sums
inline Scalar phi_brute(const std::vector<Scalar>& a,
                        const std::vector<Scalar>& b, Scalar q, int i, int j,
                        int terms = 400) {
  auto one_sided = [&](Scalar tau) {
    return jackson_down_brute(
        tau, [&](Scalar t) { return rp_integrand_brute(a, b, q, t); }, q,
        terms);
  };
  return one_sided(q / a[j - 1]) - one_sided(q / a[i - 1]);
}

// very-well-poised series by direct per-term evaluation (no recursion)
inline Scalar vwp_brute(Scalar a1, const std::vector<Scalar>& upper, Scalar z,
                        Scalar q, int terms = 500) {
  Scalar sum = 0.0;
  Scalar zn = 1.0;
  for (int n = 0; n <= terms; ++n) {
    Scalar qn = std::pow(q, Scalar(double(n)));
    Scalar term = (1.0 - a1 * qn * qn) / (1.0 - a1);
    term *= qpoch_fin_brute(a1, q, n) / qpoch_fin_brute(q, q, n);
    for (Scalar u : upper)
      term *= qpoch_fin_brute(u, q, n) / qpoch_fin_brute(q * a1 / u, q, n);
    sum += term * zn;
    zn *= z;
  }
  return sum;
}

// the M = 1 specialization of the multiple series as a directly coded
// one-dimensional sum
inline Scalar kajihara_m1_brute(Scalar a, Scalar s, Scalar u1, Scalar u2,
                                Scalar v1, Scalar v2, Scalar z, Scalar q,
                                int terms = 400) {
  Scalar sum = 0.0;
  Scalar zn = 1.0;
  for (int n = 0; n <= terms; ++n) {
    Scalar q2n = std::pow(q, Scalar(2.0 * n));
    Scalar term = (1.0 - q2n * s) / (1.0 - s);
    term *= qpoch_fin_brute(s, q, n) / qpoch_fin_brute(s * q / a, q, n);
    term *= qpoch_fin_brute(a, q, n) / qpoch_fin_brute(q, q, n);
    term *= qpoch_fin_brute(v1, q, n) / qpoch_fin_brute(s * q / u1, q, n);
    term *= qpoch_fin_brute(v2, q, n) / qpoch_fin_brute(s * q / u2, q, n);
    term *= qpoch_fin_brute(u1, q, n) / qpoch_fin_brute(s * q / v1, q, n);
    term *= qpoch_fin_brute(u2, q, n) / qpoch_fin_brute(s * q / v2, q, n);
    sum += term * zn;
    zn *= z;
  }
  return sum;
}

inline double rel_err(Scalar got, Scalar want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace oracles
