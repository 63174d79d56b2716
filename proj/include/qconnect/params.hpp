#pragma once

#include <array>
#include <vector>

#include "qconnect/qcore.hpp"

// Parameter bundles shared by the integral, operator and series layers.

namespace qconnect {

/// Balanced parameter vector of the Riemann-Papperitz integral:
/// a_1..a_{M+3}, b_1..b_{M+3} with a_1...a_{M+3} = q^2 b_1...b_{M+3}.
struct RPParams {
  int M = 1;
  std::vector<Scalar> a;  // size M+3
  std::vector<Scalar> b;  // size M+3

  /// Throws BalanceViolation / DomainError when the invariants fail.
  void validate(const Nome& q, double rel_tol = 1e-12) const;
  /// Sizes and nonzero entries only; the generic integrals do not need the
  /// balance, only the connection relations do.
  void validate_shape() const;

  Scalar product_a() const;
  Scalar product_b() const;
};

/// Jordan-Pochhammer data: like RPParams but unbalanced, with the exponent
/// alpha and q^rho = a_1...a_{M+3} / (b_1...b_{M+3} q^alpha).
struct JPParams {
  int M = 1;
  std::vector<Scalar> a;
  std::vector<Scalar> b;
  Scalar alpha{1.0};
  Scalar rho_value{0.0};  // q^rho

  void validate(const Nome& q, double rel_tol = 1e-12) const;
  /// rho = Log(rho_value)/Log(q) on principal branches.
  Scalar rho(const Nome& q) const;
};

/// Data of the degree-three variant equation: exponents h_i, l_i, scale
/// factors t_i, the equation exponent alpha, and nu tied to the h/l balance.
struct H3Params {
  Scalar alpha{1.0};
  Scalar nu{0.0};  // must equal (h_1+h_2+h_3-l_1-l_2-l_3+1)/2
  std::array<Scalar, 3> h{};
  std::array<Scalar, 3> l{};
  std::array<Scalar, 3> t{};
  Scalar x{1.0};

  void validate(const Nome& q, double rel_tol = 1e-10) const;
  /// Integration endpoints tau_1..tau_4.
  Scalar tau(int i, const Nome& q) const;
};

/// Construct H3Params with nu derived from h and l.
H3Params make_h3_params(Scalar alpha, std::array<Scalar, 3> h,
                        std::array<Scalar, 3> l, std::array<Scalar, 3> t,
                        Scalar x);

/// Rank-(M+1) operator data: scalars A, B and the trailing parameter lists
/// a_2..a_{M+3}, b_2..b_{M+3} (the leading pair is A x, B x).
struct EMParams {
  int M = 1;
  Scalar A{1.0};
  Scalar B{1.0};
  std::vector<Scalar> a_rest;  // a_2..a_{M+3}, size M+2
  std::vector<Scalar> b_rest;  // b_2..b_{M+3}, size M+2

  void validate(const Nome& q, double rel_tol = 1e-12) const;
  Scalar upper_product() const;  // a_2...a_{M+3}
};

/// Heine equation data; a = q^alpha, b = q^beta, c = q^gamma.
struct HeineParams {
  Scalar a{0.5}, b{0.5}, c{0.5};
  Scalar x{0.5};

  void validate() const;
};

/// Three-term recurrence data (a..e, h constants of the recurrence, f the
/// companion series parameter slot, n the lattice index).
struct GMParams {
  Scalar a{1.0}, b{1.0}, c{1.0}, d{1.0}, e{1.0}, f{1.0}, h{1.0};
  long n = 0;
};

}  // namespace qconnect
