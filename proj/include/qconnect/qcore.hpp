#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Scalar foundation for the q-series toolkit: the nome q, truncation
// control, q-Pochhammer symbols, theta functions, elementary symmetric
// polynomials and principal complex powers.
//
// Conventions (fixed nome q, 0 < |q| < 1):
//   (a)_inf = prod_{i>=0} (1 - a q^i)
//   (a)_l   = prod_{i=0}^{l-1} (1 - a q^i)
//   theta(x) = (x)_inf (q/x)_inf
//
// All functions are pure; values are immutable and thread-safe to share.

namespace qconnect {

using Scalar = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument outside a function's mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

/// A truncated product/sum hit its term cap before the tail bound held.
struct TruncationExceeded : Error {
  using Error::Error;
};

/// An evaluation produced NaN or infinity.
struct NonFiniteError : Error {
  using Error::Error;
};

/// A denominator factor vanished (or nearly vanished) at a visited node.
struct PoleHit : Error {
  using Error::Error;
};

/// Two q-integral endpoints landed on the same q-lattice.
struct LatticeCollision : Error {
  using Error::Error;
};

/// A parameter set violates its required product balance.
struct BalanceViolation : Error {
  using Error::Error;
};

/// A series argument lies outside the convergence domain.
struct ConvergenceDomain : Error {
  using Error::Error;
};

/// Rejection sampling failed to produce admissible parameters.
struct SamplerExhausted : Error {
  using Error::Error;
};

/// A connection-coefficient denominator is numerically degenerate.
struct DegenerateCoefficient : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Nome and truncation policy

/// The base q shared by all evaluations. Requires 0 < |q| < 1.
class Nome {
 public:
  explicit Nome(Scalar q);
  explicit Nome(double q) : Nome(Scalar(q, 0.0)) {}

  Scalar value() const { return q_; }
  double abs() const { return abs_; }
  /// Principal log(q); used for log-q lattice coordinates.
  Scalar log() const { return log_; }

 private:
  Scalar q_;
  double abs_;
  Scalar log_;
};

/// Tail tolerance and hard caps for all infinite products and sums.
struct TruncationPolicy {
  double tol = 1e-15;        // target absolute tail bound
  int max_terms = 10000;     // cap per product / one-dimensional sum
  int max_total_index = 60;  // cap on |l| for multiple sums

  void validate() const {
    if (!(tol > 0.0)) throw DomainError("TruncationPolicy: tol must be > 0");
    if (max_terms < 1) throw DomainError("TruncationPolicy: max_terms must be >= 1");
    if (max_total_index < 1)
      throw DomainError("TruncationPolicy: max_total_index must be >= 1");
  }
};

// ---------------------------------------------------------------------------
// q-Pochhammer symbols

/// (a)_inf, truncated once |a q^i| and its geometric tail drop below pol.tol.
Scalar qpoch_inf(Scalar a, const Nome& q, const TruncationPolicy& pol = {});

/// (a)_l as a finite product (exact at poles of the infinite-product form).
Scalar qpoch_fin(Scalar a, const Nome& q, long l);

/// (a_1,...,a_r)_inf
Scalar qpoch_inf(std::span<const Scalar> as, const Nome& q,
                 const TruncationPolicy& pol = {});
Scalar qpoch_inf(std::initializer_list<Scalar> as, const Nome& q,
                 const TruncationPolicy& pol = {});

/// (a_1,...,a_r)_l
Scalar qpoch_fin(std::span<const Scalar> as, const Nome& q, long l);
Scalar qpoch_fin(std::initializer_list<Scalar> as, const Nome& q, long l);

// ---------------------------------------------------------------------------
// Theta functions

/// theta(x) = (x)_inf (q/x)_inf. Vanishes exactly on the q-power lattice.
Scalar theta(Scalar x, const Nome& q, const TruncationPolicy& pol = {});

/// theta(x_1)...theta(x_r)
Scalar theta(std::span<const Scalar> xs, const Nome& q,
             const TruncationPolicy& pol = {});
Scalar theta(std::initializer_list<Scalar> xs, const Nome& q,
             const TruncationPolicy& pol = {});

// ---------------------------------------------------------------------------
// Misc scalar helpers

/// Elementary symmetric polynomial e_k(xs); e_0 = 1, e_k = 0 for k > len(xs).
Scalar elem_sym(std::size_t k, std::span<const Scalar> xs);
Scalar elem_sym(std::size_t k, std::initializer_list<Scalar> xs);

/// x^e on the principal branch: exp(e Log x), Im Log x in (-pi, pi].
Scalar principal_power(Scalar x, Scalar e);

/// log base q on the principal branch: log(x)/log(q).
Scalar log_q(Scalar x, const Nome& q);

/// Distance of the log-q coordinate of `ratio` from the integer lattice.
/// Real part is reduced mod 1; the imaginary part counts in full.
double lattice_distance(Scalar ratio, const Nome& q);

inline bool is_finite(Scalar v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline void require_finite(Scalar v, const char* what) {
  if (!is_finite(v)) throw NonFiniteError(std::string(what) + ": non-finite value");
}

}  // namespace qconnect
