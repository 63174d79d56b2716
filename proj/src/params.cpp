#include "qconnect/params.hpp"

#include <cmath>

namespace qconnect {

namespace {

Scalar product(const std::vector<Scalar>& v) {
  Scalar p = 1.0;
  for (Scalar s : v) p *= s;
  return p;
}

void require_nonzero(const std::vector<Scalar>& v, const char* what) {
  for (Scalar s : v)
    if (s == Scalar(0.0)) throw DomainError(std::string(what) + ": zero entry");
}

}  // namespace

Scalar RPParams::product_a() const { return product(a); }
Scalar RPParams::product_b() const { return product(b); }

void RPParams::validate_shape() const {
  if (M < 1) throw DomainError("RPParams: M must be >= 1");
  const std::size_t n = std::size_t(M) + 3;
  if (a.size() != n || b.size() != n)
    throw DomainError("RPParams: parameter lists must have length M+3");
  require_nonzero(a, "RPParams.a");
  require_nonzero(b, "RPParams.b");
}

void RPParams::validate(const Nome& q, double rel_tol) const {
  validate_shape();
  const Scalar target = q.value() * q.value() * product_b();
  if (std::abs(product_a() - target) > rel_tol * std::abs(target))
    throw BalanceViolation("RPParams: a_1...a_{M+3} != q^2 b_1...b_{M+3}");
}

void JPParams::validate(const Nome& q, double rel_tol) const {
  if (M < 1) throw DomainError("JPParams: M must be >= 1");
  const std::size_t n = std::size_t(M) + 3;
  if (a.size() != n || b.size() != n)
    throw DomainError("JPParams: parameter lists must have length M+3");
  require_nonzero(a, "JPParams.a");
  require_nonzero(b, "JPParams.b");
  const Scalar expect =
      product(a) / (product(b) * principal_power(q.value(), alpha));
  if (std::abs(rho_value - expect) > rel_tol * std::abs(expect))
    throw DomainError("JPParams: rho_value inconsistent with its defining ratio");
  if (!(rho(q).real() > 0.0))
    throw ConvergenceDomain("JPParams: Re(rho) must be > 0");
}

Scalar JPParams::rho(const Nome& q) const { return std::log(rho_value) / q.log(); }

void H3Params::validate(const Nome& q, double rel_tol) const {
  (void)q;
  for (Scalar ti : t)
    if (ti == Scalar(0.0)) throw DomainError("H3Params: t_i = 0");
  if (x == Scalar(0.0)) throw DomainError("H3Params: x = 0");
  // nu = (h_1+h_2+h_3 - l_1-l_2-l_3 + 1)/2 is the balance condition of the
  // induced Riemann-Papperitz parameters.
  Scalar expect = 0.5;
  for (int i = 0; i < 3; ++i) expect += 0.5 * (h[i] - l[i]);
  if (std::abs(nu - expect) > rel_tol * std::max(1.0, std::abs(expect)))
    throw BalanceViolation("H3Params: nu != (sum h - sum l + 1)/2");
}

Scalar H3Params::tau(int i, const Nome& q) const {
  if (i < 1 || i > 4) throw DomainError("H3Params::tau: index in 1..4");
  if (i == 4) return principal_power(q.value(), 1.0 - nu) / x;
  return principal_power(q.value(), -h[i - 1] - 0.5) / t[i - 1];
}

H3Params make_h3_params(Scalar alpha, std::array<Scalar, 3> h,
                        std::array<Scalar, 3> l, std::array<Scalar, 3> t,
                        Scalar x) {
  H3Params p;
  p.alpha = alpha;
  p.h = h;
  p.l = l;
  p.t = t;
  p.x = x;
  p.nu = 0.5;
  for (int i = 0; i < 3; ++i) p.nu += 0.5 * (h[i] - l[i]);
  return p;
}

Scalar EMParams::upper_product() const { return product(a_rest); }

void EMParams::validate(const Nome& q, double rel_tol) const {
  if (M < 1) throw DomainError("EMParams: M must be >= 1");
  const std::size_t n = std::size_t(M) + 2;
  if (a_rest.size() != n || b_rest.size() != n)
    throw DomainError("EMParams: parameter lists must have length M+2");
  if (A == Scalar(0.0) || B == Scalar(0.0))
    throw DomainError("EMParams: A, B must be nonzero");
  require_nonzero(a_rest, "EMParams.a_rest");
  require_nonzero(b_rest, "EMParams.b_rest");
  const Scalar target = q.value() * q.value() * B * product(b_rest);
  const Scalar lhs = A * product(a_rest);
  if (std::abs(lhs - target) > rel_tol * std::abs(target))
    throw BalanceViolation("EMParams: A a_2...a_{M+3} != q^2 B b_2...b_{M+3}");
}

void HeineParams::validate() const {
  if (a == Scalar(0.0) || b == Scalar(0.0) || c == Scalar(0.0) ||
      x == Scalar(0.0))
    throw DomainError("HeineParams: a, b, c, x must be nonzero");
}

}  // namespace qconnect
