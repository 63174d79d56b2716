#include "qconnect/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace qconnect {

namespace {

constexpr int kMaxRejections = 10000;
constexpr double kThetaFloor = 1e-10;

// ---------------------------------------------------------------------------
// deterministic RNG

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // 53-bit mantissa scaling; bit-identical across platforms
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

 private:
  std::mt19937_64 eng_;
};

Scalar sample_scalar(Rng& rng, const SampleConfig& cfg) {
  const double mag = rng.log_uniform(cfg.mag_min, cfg.mag_max);
  if (cfg.real_only) return mag;
  const double phase = rng.uniform(0.0, 2.0 * M_PI);
  return std::polar(mag, phase);
}

bool margin_ok(Scalar ratio, const Nome& q, double margin) {
  return lattice_distance(ratio, q) >= margin;
}

bool all_margins_ok(std::span<const Scalar> args, const Nome& q,
                    double margin) {
  for (Scalar r : args)
    if (!margin_ok(r, q, margin)) return false;
  return true;
}

// pairwise a_i/a_j and cross a_i/b_j lattice margins
bool rp_margins_ok(const RPParams& p, const Nome& q, double margin) {
  const std::size_t n = p.a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j)
      if (!margin_ok(p.a[i] / p.a[j], q, margin)) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (!margin_ok(p.a[i] / p.b[j], q, margin)) return false;
  }
  return true;
}

// every denominator theta of the connection coefficients stays above 1e-4:
// theta(a_1/b_i) for all i, and theta(a_k/a_i) for k >= 2, i != k
bool rp_thetas_conditioned(const RPParams& p, const Nome& q) {
  constexpr double kFloor = 1e-4;
  const std::size_t n = p.a.size();
  TruncationPolicy pol;
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(theta(p.a[0] / p.b[j], q, pol)) < kFloor) return false;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (i != k && std::abs(theta(p.a[k] / p.a[i], q, pol)) < kFloor)
        return false;
  return true;
}

RPParams permuted_rp(const RPParams& p, int k) {
  RPParams out = p;
  out.a.clear();
  out.a.push_back(p.a[0]);
  out.a.push_back(p.a[k - 1]);
  for (int i = 2; i <= p.M + 3; ++i)
    if (i != k) out.a.push_back(p.a[i - 1]);
  return out;
}

// Distance of a Pochhammer-denominator argument from its pole set q^{-m},
// m >= 0 (only the nonpositive side of the log-q lattice can pole).
double poch_pole_distance(Scalar y, const Nome& q) {
  const Scalar w = log_q(y, q);
  double m = std::round(w.real());
  if (m > 0.0) m = 0.0;
  return std::hypot(w.real() - m, w.imag());
}

// denominator lattice guards for one w_wrapper evaluation
bool w_args_ok(const RPParams& p, const Nome& q, double margin, double z_cap) {
  if (std::abs(p.a[2] / p.b[0]) > z_cap) return false;
  const KajiharaParams kp = w_series_args(p, q);
  std::vector<Scalar> args;
  const Scalar xM = kp.x[kp.M - 1];
  for (int j = 0; j < kp.M; ++j)
    args.push_back(kp.s * q.value() / kp.a[j] * kp.x[j] / xM);
  for (int k = 0; k < kp.N; ++k) {
    args.push_back(kp.s * q.value() / kp.u[k]);
    for (int i = 0; i < kp.M; ++i)
      args.push_back(kp.s * q.value() / kp.v[k] * kp.x[i] / xM);
  }
  for (int i = 0; i < kp.M; ++i) args.push_back(kp.s * kp.x[i] / xM);
  const Scalar q2aa = q.value() * q.value() / (p.a[1] * p.a[0]);
  for (int i = 3; i < p.M + 3; ++i) args.push_back(p.a[i] * p.b[0] * q2aa);
  for (Scalar y : args)
    if (poch_pole_distance(y, q) < margin) return false;
  return true;
}

TruncationPolicy series_policy(const TruncationPolicy& pol) {
  TruncationPolicy out = pol;
  out.max_total_index = std::max(out.max_total_index, 240);
  return out;
}

Scalar theta_checked(Scalar x, const Nome& q, const TruncationPolicy& pol,
                     const char* what) {
  const Scalar v = theta(x, q, pol);
  if (std::abs(v) < kThetaFloor)
    throw PoleHit(std::string(what) + ": denominator theta below 1e-10");
  return v;
}

// ---------------------------------------------------------------------------
// parameter snapshots (plain JSON, complex numbers as [re, im])

void json_num(std::ostringstream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void json_scalar(std::ostringstream& os, Scalar v) {
  os << '[';
  json_num(os, v.real());
  os << ',';
  json_num(os, v.imag());
  os << ']';
}

void json_list(std::ostringstream& os, std::span<const Scalar> vs) {
  os << '[';
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) os << ',';
    json_scalar(os, vs[i]);
  }
  os << ']';
}

std::string rp_json(const Nome& q, const RPParams& p) {
  std::ostringstream os;
  os << "{\"type\":\"rp\",\"q\":";
  json_num(os, q.value().real());
  os << ",\"m\":" << p.M << ",\"a\":";
  json_list(os, p.a);
  os << ",\"b\":";
  json_list(os, p.b);
  os << '}';
  return os.str();
}

std::string split_json(const SampledSplit& s) {
  std::ostringstream os;
  os << "{\"type\":\"split\",\"q\":";
  json_num(os, s.q.value().real());
  os << ",\"m\":" << s.em.M << ",\"A\":";
  json_scalar(os, s.em.A);
  os << ",\"B\":";
  json_scalar(os, s.em.B);
  os << ",\"x\":";
  json_scalar(os, s.x);
  os << ",\"alpha\":";
  json_scalar(os, s.alpha);
  os << ",\"a_rest\":";
  json_list(os, s.em.a_rest);
  os << ",\"b_rest\":";
  json_list(os, s.em.b_rest);
  os << '}';
  return os.str();
}

std::string jp_json(const SampledJP& s) {
  std::ostringstream os;
  os << "{\"type\":\"jp\",\"q\":";
  json_num(os, s.q.value().real());
  os << ",\"m\":" << s.jp.M << ",\"alpha\":";
  json_scalar(os, s.jp.alpha);
  os << ",\"a\":";
  json_list(os, s.jp.a);
  os << ",\"b\":";
  json_list(os, s.jp.b);
  os << '}';
  return os.str();
}

std::string heine_json(const SampledHeine& s) {
  std::ostringstream os;
  os << "{\"type\":\"heine\",\"q\":";
  json_num(os, s.q.value().real());
  os << ",\"a\":";
  json_scalar(os, s.hp.a);
  os << ",\"b\":";
  json_scalar(os, s.hp.b);
  os << ",\"c\":";
  json_scalar(os, s.hp.c);
  os << ",\"x\":";
  json_scalar(os, s.hp.x);
  os << '}';
  return os.str();
}

std::string bailey_json(const SampledBailey& s) {
  std::ostringstream os;
  os << "{\"type\":\"bailey\",\"q\":";
  json_num(os, s.q.value().real());
  const Scalar vals[8] = {s.bp.a, s.bp.b, s.bp.c, s.bp.d,
                          s.bp.e, s.bp.f, s.bp.g, s.bp.h};
  const char* names[8] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int i = 0; i < 8; ++i) {
    os << ",\"" << names[i] << "\":";
    json_scalar(os, vals[i]);
  }
  os << '}';
  return os.str();
}

std::string w87_json(const SampledW87& s) {
  std::ostringstream os;
  os << "{\"type\":\"w87\",\"q\":";
  json_num(os, s.q.value().real());
  const Scalar vals[6] = {s.wp.a, s.wp.b, s.wp.c, s.wp.d, s.wp.e, s.wp.f};
  const char* names[6] = {"a", "b", "c", "d", "e", "f"};
  for (int i = 0; i < 6; ++i) {
    os << ",\"" << names[i] << "\":";
    json_scalar(os, vals[i]);
  }
  os << '}';
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// samplers

void SampleConfig::validate() const {
  if (!(q_min > 0.0 && q_max < 1.0 && q_min <= q_max))
    throw DomainError("SampleConfig: q range must lie inside (0,1)");
  if (!(pole_margin > 0.0)) throw DomainError("SampleConfig: pole_margin <= 0");
  if (!(mag_min > 0.0 && mag_min <= mag_max))
    throw DomainError("SampleConfig: bad magnitude range");
  if (M < 1) throw DomainError("SampleConfig: M must be >= 1");
  if (!(z_cap > 0.0)) throw DomainError("SampleConfig: z_cap <= 0");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SampledRP sample_params(const SampleConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const int n = cfg.M + 3;
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const Nome q(rng.uniform(cfg.q_min, cfg.q_max));
    RPParams rp;
    rp.M = cfg.M;
    rp.a.resize(n);
    rp.b.resize(n);
    for (int i = 0; i < n; ++i) rp.a[i] = sample_scalar(rng, cfg);
    for (int i = 0; i + 1 < n; ++i) rp.b[i] = sample_scalar(rng, cfg);
    // balance solved for the last lower parameter
    Scalar partial = q.value() * q.value();
    for (int i = 0; i + 1 < n; ++i) partial *= rp.b[i];
    rp.b[n - 1] = rp.product_a() / partial;
    const double mag = std::abs(rp.b[n - 1]);
    if (mag < cfg.mag_min / 6.0 || mag > cfg.mag_max * 6.0) continue;

    if (std::abs(rp.a[2] / rp.b[0]) > cfg.z_cap) continue;
    if (!rp_margins_ok(rp, q, cfg.pole_margin)) continue;
    if (!rp_thetas_conditioned(rp, q)) continue;
    if (cfg.w_guard == WGuard::single) {
      if (!w_args_ok(rp, q, cfg.pole_margin / 2.0, cfg.z_cap)) continue;
    } else if (cfg.w_guard == WGuard::all_permutations) {
      if (std::abs(rp.a[1] / rp.b[0]) > cfg.z_cap) continue;
      bool ok = true;
      for (int k = 2; k <= n && ok; ++k)
        ok = w_args_ok(permuted_rp(rp, k), q, cfg.pole_margin / 2.0, cfg.z_cap);
      if (!ok) continue;
    }
    rp.validate(q);
    return {q, rp};
  }
  throw SamplerExhausted("sample_params: no admissible parameters found");
}

SampledSplit sample_split(const SampleConfig& cfg) {
  SampledRP s = sample_params(cfg);
  Rng rng(splitmix64(cfg.seed ^ 0x517CC1B727220A95ULL));
  const Scalar x = rng.log_uniform(0.6, 1.7);
  const Scalar alpha = rng.uniform(0.3, 1.7);
  SampledSplit out{s.q, EMParams{}, x, alpha};
  out.em.M = s.rp.M;
  out.em.A = s.rp.a[0] / x;
  out.em.B = s.rp.b[0] / x;
  out.em.a_rest.assign(s.rp.a.begin() + 1, s.rp.a.end());
  out.em.b_rest.assign(s.rp.b.begin() + 1, s.rp.b.end());
  out.em.validate(s.q);
  return out;
}

SampledJP sample_jp(const SampleConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const int n = cfg.M + 3;
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const Nome q(rng.uniform(cfg.q_min, cfg.q_max));
    JPParams jp;
    jp.M = cfg.M;
    jp.a.resize(n);
    jp.b.resize(n);
    for (int i = 0; i < n; ++i) jp.a[i] = sample_scalar(rng, cfg);
    for (int i = 0; i < n; ++i) jp.b[i] = sample_scalar(rng, cfg);
    jp.alpha = rng.uniform(0.25, 1.75);

    Scalar pa = 1.0, pb = 1.0;
    for (int i = 0; i < n; ++i) {
      pa *= jp.a[i];
      pb *= jp.b[i];
    }
    jp.rho_value = pa / (pb * principal_power(q.value(), jp.alpha));
    const Scalar rho = std::log(jp.rho_value) / q.log();
    if (!(rho.real() > 0.15)) continue;
    // keep theta(q^rho) well away from its zero lattice
    if (!margin_ok(jp.rho_value, q, cfg.pole_margin)) continue;

    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j)
        ok = margin_ok(jp.a[i] / jp.a[j], q, cfg.pole_margin);
      for (int j = 0; j < n && ok; ++j)
        ok = margin_ok(jp.a[i] / jp.b[j], q, cfg.pole_margin);
    }
    if (!ok) continue;
    jp.validate(q);
    return {q, jp};
  }
  throw SamplerExhausted("sample_jp: no admissible parameters found");
}

SampledHeine sample_heine(const SampleConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const Nome q(rng.uniform(cfg.q_min, cfg.q_max));
    const double alpha = rng.uniform(0.2, 1.6);
    const double beta = rng.uniform(-1.5, 1.5);
    const double gamma = rng.uniform(-1.5, 1.5);
    const double xi = rng.uniform(-1.0, 1.0);
    if (beta - gamma + 1.0 < 0.15) continue;  // convergence of the s-integral

    const double m = cfg.pole_margin;
    const auto off_lattice = [&](double v) {
      return std::abs(v - std::round(v)) >= m;
    };
    if (!off_lattice(beta) || !off_lattice(beta - alpha) ||
        !off_lattice(gamma - beta) || !off_lattice(gamma - alpha) ||
        !off_lattice(xi) || !off_lattice(alpha + xi) ||
        !off_lattice(beta + xi) || !off_lattice(gamma - alpha - beta - xi))
      continue;

    HeineParams hp;
    hp.a = principal_power(q.value(), alpha);
    hp.b = principal_power(q.value(), beta);
    hp.c = principal_power(q.value(), gamma);
    hp.x = principal_power(q.value(), xi);
    return {q, hp};
  }
  throw SamplerExhausted("sample_heine: no admissible parameters found");
}

SampledBailey sample_bailey(const SampleConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const Nome q(rng.uniform(cfg.q_min, cfg.q_max));
    BaileyParams bp;
    bp.a = sample_scalar(rng, cfg);
    bp.b = sample_scalar(rng, cfg);
    bp.c = sample_scalar(rng, cfg);
    bp.d = sample_scalar(rng, cfg);
    bp.e = sample_scalar(rng, cfg);
    bp.f = sample_scalar(rng, cfg);
    bp.g = sample_scalar(rng, cfg);
    bp.h = bp.c * bp.d / (bp.a * bp.b * bp.e * bp.f * bp.g);
    const double hm = std::abs(bp.h);
    if (hm < cfg.mag_min / 6.0 || hm > cfg.mag_max * 6.0) continue;
    // both endpoint orderings must stay inside the series disc
    if (std::abs(bp.a * bp.h) > cfg.z_cap) continue;
    if (std::abs(bp.b * bp.h) > cfg.z_cap) continue;

    const Scalar a1 = bp.b * bp.c * bp.d / (bp.h * q.value());
    const Scalar cd = bp.c * bp.d;
    const Scalar args[] = {
        // integrand denominators on both endpoint lattices
        bp.e * bp.a, bp.f * bp.a, bp.g * bp.a, bp.h * bp.a, bp.e * bp.b,
        bp.f * bp.b, bp.g * bp.b, bp.h * bp.b,
        // endpoint ratio and prefactor denominators
        bp.a / bp.b, bp.b * cd / bp.h,
        // series parameter lattices
        a1, cd / (bp.h * bp.e), cd / (bp.h * bp.f), cd / (bp.h * bp.g),
        bp.b * bp.c, bp.b * bp.d};
    if (!all_margins_ok(args, q, cfg.pole_margin)) continue;
    return {q, bp};
  }
  throw SamplerExhausted("sample_bailey: no admissible parameters found");
}

SampledW87 sample_w87(const SampleConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const Nome q(rng.uniform(cfg.q_min, cfg.q_max));
    W87Params wp;
    wp.a = sample_scalar(rng, cfg);
    wp.b = sample_scalar(rng, cfg);
    wp.c = sample_scalar(rng, cfg);
    wp.d = sample_scalar(rng, cfg);
    wp.e = sample_scalar(rng, cfg);
    const double zt = rng.uniform(0.15, std::min(cfg.z_cap, 0.8));
    wp.f = q.value() * q.value() * wp.a * wp.a / (wp.b * wp.c * wp.d * wp.e * zt);
    const double fm = std::abs(wp.f);
    if (fm < cfg.mag_min / 8.0 || fm > cfg.mag_max * 8.0) continue;

    const Scalar a = wp.a, b = wp.b, c = wp.c, d = wp.d, e = wp.e, f = wp.f;
    const Scalar a2 = a * a;
    const Scalar args[] = {a, b, c, d, e, f,
                           a / b, a / c, a / d, a / e, a / f,
                           b / c, b / d, b / e, b / f,
                           c / d, c / e, c / f,
                           b * b / a, c * c / a, b * c / a,
                           b * d / a, b * e / a, b * f / a,
                           c * d / a, c * e / a, c * f / a,
                           b * d * e * f / a2, c * d * e * f / a2,
                           d * e * f / a2 * b * c / 1.0};
    if (!all_margins_ok(args, q, cfg.pole_margin)) continue;

    // non-degenerate denominator of the theta-quotient coefficient
    const auto B = [&](Scalar x, Scalar y) -> Scalar {
      return theta({x, x / a, x * d * e * f / a2}, q) *
             theta({y * d / a, y * e / a, y * f / a}, q);
    };
    const Scalar b1 = B(b, c), b2 = B(c, b);
    if (std::abs(b1 - b2) < 1e-5 * (std::abs(b1) + std::abs(b2))) continue;
    return {q, wp};
  }
  throw SamplerExhausted("sample_w87: no admissible parameters found");
}

// ---------------------------------------------------------------------------
// connection coefficients

Scalar coeff_mimachi_C(const JPParams& p, int k, const Nome& q,
                       const TruncationPolicy& pol) {
  p.validate(q);
  if (k < 1 || k > p.M + 3) throw DomainError("coeff_mimachi_C: bad index");
  const Scalar rho = p.rho(q);
  const Scalar ak = p.a[k - 1];
  Scalar val = principal_power(q.value() * p.b[0], rho) *
               principal_power(ak / q.value(), p.alpha);
  val *= theta(principal_power(q.value(), rho + 1.0) * p.b[0] / ak, q, pol);
  for (int j = 2; j <= p.M + 3; ++j) val *= theta(ak / p.b[j - 1], q, pol);
  for (int j = 1; j <= p.M + 3; ++j) {
    if (j == k) continue;
    val /= theta_checked(ak / p.a[j - 1], q, pol, "coeff_mimachi_C");
  }
  return val;
}

Scalar coeff_rp_Ctilde(const RPParams& p, int k, const Nome& q,
                       const TruncationPolicy& pol) {
  p.validate_shape();
  if (k < 2 || k > p.M + 3) throw DomainError("coeff_rp_Ctilde: k in 2..M+3");
  const Scalar a1 = p.a[0];
  const Scalar ak = p.a[k - 1];
  Scalar val = (ak / a1) * (ak / a1);
  for (int i = 1; i <= p.M + 3; ++i) {
    val *= theta(ak / p.b[i - 1], q, pol) /
           theta_checked(a1 / p.b[i - 1], q, pol, "coeff_rp_Ctilde");
    if (i != 1) val *= theta(a1 / p.a[i - 1], q, pol);
    if (i != k)
      val /= theta_checked(ak / p.a[i - 1], q, pol, "coeff_rp_Ctilde");
  }
  return val;
}

RPCoeffs rp_connection_coeffs(const RPParams& p, const Nome& q,
                              const TruncationPolicy& pol) {
  RPCoeffs out;
  out.params = p;
  for (int k = 2; k <= p.M + 3; ++k)
    out.Ctilde.push_back(coeff_rp_Ctilde(p, k, q, pol));
  return out;
}

namespace {

// the distinguished-index coefficient of the variant three-term relation
Scalar h3_coeff_first(const H3Params& hp, const Nome& q,
                      const TruncationPolicy& pol) {
  const Scalar qv = q.value();
  const auto qp = [&](Scalar e) { return principal_power(qv, e); };
  const Scalar h1 = hp.h[0], h2 = hp.h[1], h3 = hp.h[2];
  const Scalar l1 = hp.l[0], l2 = hp.l[1], l3 = hp.l[2];
  const Scalar t1 = hp.t[0], t2 = hp.t[1], t3 = hp.t[2];
  const Scalar x = hp.x, nu = hp.nu;
  const Scalar num =
      theta({qp(h1 - l1 - nu + 1.0), t1 / t2 * qp(h1 - l2 - nu + 1.0),
             t1 / t3 * qp(h1 - l3 - nu + 1.0), x / t1 * qp(1.5 - h1),
             x / t2 * qp(nu - h2 - 0.5), x / t3 * qp(nu - h3 - 0.5)},
            q, pol);
  const Scalar den_args[6] = {qp(nu - 1.0),       t1 / t2 * qp(h1 - h2),
                              t1 / t3 * qp(h1 - h3), x / t1 * qp(0.5 - l1),
                              x / t2 * qp(0.5 - l2), x / t3 * qp(0.5 - l3)};
  Scalar den = 1.0;
  for (Scalar arg : den_args)
    den *= theta_checked(arg, q, pol, "h3_three_term_coeffs");
  return num / den;
}

H3Params h3_swapped(const H3Params& hp, int i) {
  H3Params out = hp;
  std::swap(out.h[0], out.h[i]);
  std::swap(out.l[0], out.l[i]);
  std::swap(out.t[0], out.t[i]);
  return out;
}

}  // namespace

H3ThreeTermCoeffs h3_three_term_coeffs(const H3Params& hp, const Nome& q,
                                       const TruncationPolicy& pol) {
  H3ThreeTermCoeffs out;
  out.params = hp;
  out.C[0] = h3_coeff_first(hp, q, pol);
  out.C[1] = h3_coeff_first(h3_swapped(hp, 1), q, pol);
  out.C[2] = h3_coeff_first(h3_swapped(hp, 2), q, pol);
  return out;
}

Scalar w87_three_term_coeff(const W87Params& p, const Nome& q,
                            const TruncationPolicy& pol) {
  const Scalar a = p.a, b = p.b, c = p.c;
  const Scalar qv = q.value();
  const Scalar den = qpoch_inf(
      {c / b, qv * a / b, b * c / a, qv * b * b / a}, q, pol);
  if (std::abs(den) < 1e-120)
    throw PoleHit("w87_three_term_coeff: denominator vanished");
  Scalar val = qpoch_inf({qv * a, c, c / a, qv * b / a}, q, pol) / den;
  for (Scalar eta : {p.d, p.e, p.f}) {
    const Scalar dd = qpoch_inf({qv / eta, qv * a / eta}, q, pol);
    if (std::abs(dd) < 1e-120)
      throw PoleHit("w87_three_term_coeff: denominator vanished");
    val *= qpoch_inf({qv * a / (b * eta), qv * b / eta}, q, pol) / dd;
  }
  return val;
}

Scalar gm_three_term_coeff(const W87Params& p, const Nome& q,
                           const TruncationPolicy& pol) {
  const Scalar a = p.a, b = p.b, c = p.c, d = p.d, e = p.e, f = p.f;
  const Scalar qv = q.value();
  const Scalar a2 = a * a;

  const auto A = [&](Scalar x, Scalar y) -> Scalar {
    return theta({x, a / x, a / (y * f), y * d / a, y * e / a,
                  x * d * e * f / a2},
                 q, pol);
  };
  const auto B = [&](Scalar x, Scalar y) -> Scalar {
    return theta({x, x / a, x * d * e * f / a2}, q, pol) *
           theta({y * d / a, y * e / a, y * f / a}, q, pol);
  };
  const Scalar sq = qpoch_inf(
      {c / a, qv * b / a, qv * a / c, qv * a / (b * f)}, q, pol);
  const Scalar D =
      theta(a / (c * f), q, pol) * sq * sq *
      qpoch_inf({c, a / qv, a / b, b / c, b * f / a, qv * a / (b * d),
                 qv * a / (b * e), qv * c * c / a},
                q, pol) *
      qpoch_inf({qv * c / d, qv * c / e, qv * c / f}, q, pol);
  const Scalar E =
      qpoch_inf({b / c, c / b, qv * b * b / a, qv * c * c / a, qv / d,
                 qv / e, qv / f, qv * a / b, qv * a / c, qv * a / d,
                 qv * a / e, qv * a / f},
                q, pol) *
      theta(a / b, q, pol) * theta(a / c, q, pol);
  const Scalar Bbc = B(b, c), Bcb = B(c, b);
  if (std::abs(Bbc - Bcb) < 1e-10 * (std::abs(Bbc) + std::abs(Bcb)))
    throw DegenerateCoefficient("gm_three_term_coeff: B(b,c) - B(c,b) ~ 0");
  if (std::abs(E) < 1e-120)
    throw PoleHit("gm_three_term_coeff: E denominator vanished");
  return D / E * (A(b, c) - A(c, b)) / (Bbc - Bcb);
}

// ---------------------------------------------------------------------------
// checkers

IdentityReport check_mimachi(const JPParams& p, const Nome& q,
                             const TruncationPolicy& pol, double tol) {
  const Scalar lhs = theta(p.rho_value, q, pol) * jp_lhs_integral(p, q, pol);
  Scalar rhs = 0.0;
  double scale = std::abs(lhs);
  for (int k = 1; k <= p.M + 3; ++k) {
    const Scalar term =
        coeff_mimachi_C(p, k, q, pol) * jp_rhs_integral(p, k, q, pol);
    rhs += term;
    scale += std::abs(term);
  }
  return make_report(lhs, rhs, scale, tol);
}

IdentityReport check_rp_connection(const RPParams& p, const Nome& q,
                                   const TruncationPolicy& pol, double tol) {
  Scalar sum = 0.0;
  double scale = 0.0;
  for (int k = 2; k <= p.M + 3; ++k) {
    const Scalar term = coeff_rp_Ctilde(p, k, q, pol) * phi(p, 1, k, q, pol);
    sum += term;
    scale += std::abs(term);
  }
  return make_report(sum, 0.0, scale, tol);
}

IdentityReport check_heine_connection(const HeineParams& hp, const Nome& q,
                                      const TruncationPolicy& pol,
                                      double tol) {
  hp.validate();
  const Scalar qv = q.value();
  const Scalar alpha = log_q(hp.a, q);
  const Scalar beta = log_q(hp.b, q);
  const Scalar gamma = log_q(hp.c, q);

  const Scalar I1 = heine_integral_first(hp, 0.0, 1.0, q, pol);
  const Scalar I2 =
      heine_integral_first(hp, 0.0, qv / (hp.b * hp.x), q, pol);
  const Scalar I3 = heine_integral_second(hp, 0.0, hp.c / hp.a, q, pol);

  const Scalar thx = theta_checked(hp.x, q, pol, "check_heine_connection");
  const Scalar c1 =
      principal_power(hp.b / qv, alpha) * theta(hp.b, q, pol) /
      theta_checked(hp.b / hp.a, q, pol, "check_heine_connection") *
      principal_power(hp.x, alpha) * theta(hp.a * hp.x, q, pol) / thx;
  const Scalar c2 =
      principal_power(hp.a / hp.c, beta - gamma + 1.0) *
      theta(hp.c / hp.b, q, pol) /
      theta_checked(hp.a / hp.b, q, pol, "check_heine_connection") *
      principal_power(hp.x, beta) * theta(hp.b * hp.x, q, pol) / thx;

  const Scalar t1 = c1 * I2;
  const Scalar t2 = c2 * I3;
  return make_report(I1, t1 + t2,
                     std::abs(I1) + std::abs(t1) + std::abs(t2), tol);
}

IdentityReport check_w_relation(const RPParams& p, const Nome& q,
                                const TruncationPolicy& pol, double tol) {
  Scalar sum = 0.0;
  double scale = 0.0;
  for (int k = 2; k <= p.M + 3; ++k) {
    const Scalar Dk = coeff_rp_Ctilde(p, k, q, pol);
    const Scalar term = Dk * w_wrapper(permuted_rp(p, k), q, pol);
    sum += term;
    scale += std::abs(term);
  }
  return make_report(sum, 0.0, scale, tol);
}

IdentityReport check_w_integral_consistency(const RPParams& p, const Nome& q,
                                            const TruncationPolicy& pol,
                                            double tol) {
  const Scalar qv = q.value();
  const Scalar lhs = w_wrapper(p, q, pol);
  const Scalar rhs = -phi(p, 1, 2, q, pol) /
                     (qv * (1.0 - qv) * qpoch_inf(qv, q, pol));
  return make_report(lhs, rhs, std::abs(lhs) + std::abs(rhs), tol);
}

IdentityReport check_h3_three_term(const H3Params& hp, const Nome& q,
                                   const TruncationPolicy& pol, double tol) {
  const H3ThreeTermCoeffs coeffs = h3_three_term_coeffs(hp, q, pol);
  Scalar sum = 0.0;
  double scale = 0.0;
  for (int i = 1; i <= 3; ++i) {
    const Scalar term = coeffs.C[i - 1] * h3_phi(hp, i, 4, q, pol);
    sum += term;
    scale += std::abs(term);
  }
  return make_report(sum, 0.0, scale, tol);
}

std::vector<std::vector<Scalar>> rank_check_matrix(
    const std::array<Scalar, 3>& C) {
  return {{1.0, -1.0, 0.0, 1.0, 0.0, 0.0},
          {1.0, 0.0, -1.0, 0.0, 1.0, 0.0},
          {0.0, 1.0, -1.0, 0.0, 0.0, 1.0},
          {0.0, 0.0, C[0], 0.0, C[1], C[2]}};
}

std::vector<double> singular_values(
    const std::vector<std::vector<Scalar>>& rows) {
  // one-sided Jacobi on the row vectors (singular values of the matrix and
  // of its transpose coincide)
  std::vector<std::vector<Scalar>> u = rows;
  const std::size_t m = u.size();
  const auto dot = [&](std::size_t p, std::size_t r) -> Scalar {
    Scalar s = 0.0;
    for (std::size_t k = 0; k < u[p].size(); ++k)
      s += std::conj(u[p][k]) * u[r][k];
    return s;
  };
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t r = p + 1; r < m; ++r) {
        const double alpha = dot(p, p).real();
        const double beta = dot(r, r).real();
        const Scalar gamma = dot(p, r);
        const double g = std::abs(gamma);
        if (g <= 1e-300 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        off = std::max(off, g / std::sqrt(alpha * beta));
        const Scalar phase = gamma / g;
        const double tau = (beta - alpha) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cc = 1.0 / std::sqrt(1.0 + t * t);
        const double ss = cc * t;
        for (std::size_t k = 0; k < u[p].size(); ++k) {
          const Scalar up = u[p][k];
          const Scalar ur = u[r][k];
          u[p][k] = cc * up - ss * std::conj(phase) * ur;
          u[r][k] = ss * phase * up + cc * ur;
        }
      }
    if (off < 1e-15) break;
  }
  std::vector<double> sv;
  for (std::size_t p = 0; p < m; ++p) sv.push_back(std::sqrt(dot(p, p).real()));
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

IdentityReport check_rank(const H3Params& hp, const Nome& q,
                          const TruncationPolicy& pol, double tol) {
  const H3ThreeTermCoeffs coeffs = h3_three_term_coeffs(hp, q, pol);
  const auto mat = rank_check_matrix(coeffs.C);

  const Scalar v[6] = {h3_phi(hp, 1, 2, q, pol), h3_phi(hp, 1, 3, q, pol),
                       h3_phi(hp, 1, 4, q, pol), h3_phi(hp, 2, 3, q, pol),
                       h3_phi(hp, 2, 4, q, pol), h3_phi(hp, 3, 4, q, pol)};

  const std::vector<double> sv = singular_values(mat);
  int rank = 0;
  for (double s : sv)
    if (s > 1e-8 * sv[0]) ++rank;

  double mnorm2 = 0.0, vnorm2 = 0.0, rnorm2 = 0.0;
  for (const auto& row : mat) {
    Scalar acc = 0.0;
    for (int k = 0; k < 6; ++k) {
      acc += row[k] * v[k];
      mnorm2 += std::norm(row[k]);
    }
    rnorm2 += std::norm(acc);
  }
  for (const Scalar& vi : v) vnorm2 += std::norm(vi);

  IdentityReport r =
      make_report(std::sqrt(rnorm2), 0.0,
                  std::sqrt(mnorm2) * std::sqrt(vnorm2), tol);
  std::ostringstream note;
  note << "rank=" << rank << " sigma_min/sigma_max=" << sv.back() / sv[0];
  r.note = note.str();
  if (rank != 4) r.status = CheckStatus::fail;
  return r;
}

IdentityReport check_w87_three_term(const W87Params& p, const Nome& q,
                                    const TruncationPolicy& pol, double tol) {
  const Scalar a = p.a, b = p.b, c = p.c, d = p.d, e = p.e, f = p.f;
  const Scalar z =
      q.value() * q.value() * a * a / (b * c * d * e * f);
  const Scalar lhs = w87(a, b, c, d, e, f, z, q, pol);

  W87Params swapped = p;
  std::swap(swapped.b, swapped.c);
  const Scalar t1 = w87_three_term_coeff(p, q, pol) *
                    w87(b * b / a, b, b * e / a, b * c / a, b * d / a,
                        b * f / a, z, q, pol);
  const Scalar t2 = w87_three_term_coeff(swapped, q, pol) *
                    w87(c * c / a, c, c * e / a, c * b / a, c * d / a,
                        c * f / a, z, q, pol);
  return make_report(lhs, t1 + t2,
                     std::abs(lhs) + std::abs(t1) + std::abs(t2), tol);
}

IdentityReport check_gm_three_term(const W87Params& p, const Nome& q,
                                   const TruncationPolicy& pol, double tol) {
  const Scalar a = p.a, b = p.b, c = p.c, d = p.d, e = p.e, f = p.f;
  const Scalar z =
      q.value() * q.value() * a * a / (b * c * d * e * f);
  const Scalar lhs = w87(a, b, c, d, e, f, z, q, pol);

  W87Params swapped = p;
  std::swap(swapped.b, swapped.c);
  const Scalar Cbc = gm_three_term_coeff(p, q, pol);
  const Scalar Ccb = gm_three_term_coeff(swapped, q, pol);
  const Scalar t1 = Cbc * w87(b * b / a, b, b * e / a, b * c / a, b * d / a,
                              b * f / a, z, q, pol);
  const Scalar t2 = Ccb * w87(c * c / a, c, c * e / a, c * b / a, c * d / a,
                              c * f / a, z, q, pol);
  IdentityReport r = make_report(
      lhs, t1 + t2, std::abs(lhs) + std::abs(t1) + std::abs(t2), tol);

  // ratio against the direct-form coefficients (same relation, two forms)
  const Scalar k1 = w87_three_term_coeff(p, q, pol);
  const Scalar k2 = w87_three_term_coeff(swapped, q, pol);
  std::ostringstream note;
  note << "coeff_ratio_bc=" << std::abs(k1 / Cbc)
       << " coeff_ratio_cb=" << std::abs(k2 / Ccb);
  r.note = note.str();
  return r;
}

IdentityReport check_bailey(const BaileyParams& bp, const Nome& q,
                            const TruncationPolicy& pol, double tol) {
  const Scalar qv = q.value();
  const Integrand f = [&](Scalar t) -> Scalar {
    const Scalar den = qpoch_inf(
        {bp.e * t, bp.f * t, bp.g * t, bp.h * t}, q, pol);
    if (std::abs(den) < 1e-13)
      throw PoleHit("check_bailey: integrand denominator vanished");
    return qpoch_inf({qv * t / bp.a, qv * t / bp.b, bp.c * t, bp.d * t}, q,
                     pol) /
           den;
  };
  const Scalar lhs = jackson_between(bp.a, bp.b, f, q, pol);
  const Scalar rhs =
      bailey_rhs(bp.a, bp.b, bp.c, bp.d, bp.e, bp.f, bp.g, bp.h, q, pol);
  return make_report(lhs, rhs, std::abs(lhs) + std::abs(rhs), tol);
}

IdentityReport check_cocycle(const RPParams& p, int i, int j, int k,
                             const Nome& q, const TruncationPolicy& pol,
                             double tol) {
  const Scalar pij = phi(p, i, j, q, pol);
  const Scalar pjk = phi(p, j, k, q, pol);
  const Scalar pki = phi(p, k, i, q, pol);
  return make_report(pij + pjk + pki, 0.0,
                     std::abs(pij) + std::abs(pjk) + std::abs(pki), tol);
}

// The two-endpoint integrals are differences of unilateral sums, so the
// honest residual scale keeps the magnitudes of both parts (the identity is
// a cancellation on top of a cancellation).
IdentityReport check_em_solution(const EMParams& em, Scalar x, int i, int j,
                                 const Nome& q, const TruncationPolicy& pol,
                                 double tol) {
  const std::vector<Scalar> c = em_shift_coefficients(em, x, q);
  Scalar value = 0.0;
  double scale = 0.0;
  Scalar arg = x / q.value();
  for (int shift = -1; shift <= em.M; ++shift) {
    const RPParams rp = rp_from_ABx(em, arg, q);
    const Integrand f = rp_integrand(rp, q, pol);
    const Scalar upper = jackson_0_to(q.value() / rp.a[j - 1], f, q, pol);
    const Scalar lower = jackson_0_to(q.value() / rp.a[i - 1], f, q, pol);
    value += c[shift + 1] * (upper - lower);
    scale += std::abs(c[shift + 1]) * (std::abs(upper) + std::abs(lower));
    arg *= q.value();
  }
  return make_report(value, 0.0, scale, tol);
}

IdentityReport check_h3_solution(const H3Params& hp, int i, int j,
                                 const Nome& q, const TruncationPolicy& pol,
                                 double tol) {
  const std::array<Scalar, 3> c = h3_shift_coefficients(hp, q);
  const Scalar shifts[3] = {hp.x / q.value(), hp.x, q.value() * hp.x};
  Scalar value = 0.0;
  double scale = 0.0;
  for (int k = 0; k < 3; ++k) {
    H3Params moved = hp;
    moved.x = shifts[k];
    const Scalar upper = h3_phi_unilateral(moved, j, q, pol);
    const Scalar lower = h3_phi_unilateral(moved, i, q, pol);
    value += c[k] * (upper - lower);
    scale += std::abs(c[k]) * (std::abs(upper) + std::abs(lower));
  }
  require_finite(value, "check_h3_solution");
  return make_report(value, 0.0, scale, tol);
}

IdentityReport check_em_nonhomog(const EMParams& em, Scalar x, const Nome& q,
                                 const TruncationPolicy& pol, double tol) {
  IdentityReport worst;
  worst.rel_residual = -1.0;
  for (int choice = 0; choice <= em.M + 1; ++choice) {
    IdentityReport r = em_nonhomog_residual(em, x, choice, q, pol, tol);
    if (r.rel_residual > worst.rel_residual) worst = r;
  }
  return worst;
}

IdentityReport check_gm_recurrence(const EMParams& em, Scalar x0,
                                   const Nome& q, const TruncationPolicy& pol,
                                   double tol) {
  return gm_recurrence_residual(em, x0, 1, 2, 1, 5, q, pol, tol);
}

IdentityReport check_remark_equivalence(const EMParams& em, Scalar x,
                                        Scalar alpha, int i, int j,
                                        const Nome& q,
                                        const TruncationPolicy& pol,
                                        double tol) {
  IdentityReport r1 = check_em_solution(em, x, i, j, q, pol, tol);

  // the mapped variant integral is a constant multiple of phi_{i,j} times
  // x^{nu-alpha}, so its operator residual vanishes together with the
  // rank-2 one; endpoint 1 maps to the moving endpoint slot 4
  const H3Params hp = rp_to_h3(em, x, alpha, q);
  const auto mapped = [](int idx) { return idx == 1 ? 4 : idx - 1; };
  IdentityReport r2 = check_h3_solution(hp, mapped(i), mapped(j), q, pol, tol);

  IdentityReport& worse = r1.rel_residual >= r2.rel_residual ? r1 : r2;
  std::ostringstream note;
  note << "em_rel=" << r1.rel_residual << " h3_rel=" << r2.rel_residual;
  worse.note = note.str();
  if (r1.status == CheckStatus::fail || r2.status == CheckStatus::fail)
    worse.status = CheckStatus::fail;
  return worse;
}

// ---------------------------------------------------------------------------
// suite runner

namespace {

struct RelationInfo {
  RelationKind kind;
  const char* name;
  const char* anchor;
  double tol;
};

constexpr RelationInfo kRelations[] = {
    {RelationKind::heine_connection, "heine-connection",
     "Heine 2phi1 integral-solution connection (theta-quotient coefficients)",
     1e-8},
    {RelationKind::mimachi, "mimachi",
     "Jordan-Pochhammer q-integral connection formula", 1e-8},
    {RelationKind::rp_connection, "rp-connection",
     "balanced Riemann-Papperitz connection: sum_k C~_k phi_{1,k} = 0", 1e-8},
    {RelationKind::w_relation, "w-relation",
     "linear relation for the prefactored W^{M,2} series", 1e-8},
    {RelationKind::h3_three_term, "h3-three-term",
     "degree-three variant: C_1 phi_{1,4} + C_2 phi_{2,4} + C_3 phi_{3,4} = 0",
     1e-8},
    {RelationKind::cocycle, "cocycle",
     "q-integral cocycle: phi_{i,j} + phi_{j,k} + phi_{k,i} = 0", 1e-11},
    {RelationKind::bailey, "bailey",
     "Bailey transformation: q-integral equals its 8W7 closed form", 1e-8},
    {RelationKind::w87_three_term, "w87-three-term",
     "8W7 three-term relation, direct-form coefficients", 1e-8},
    {RelationKind::gm_three_term, "gm-three-term",
     "8W7 three-term relation, theta-quotient coefficients", 1e-8},
    {RelationKind::em_solution, "em-solution",
     "E_M annihilates the two-endpoint integrals phi_{i,j}", 1e-9},
    {RelationKind::h3_solution, "h3-solution",
     "H3 annihilates the gauge-prefixed variant integrals", 1e-9},
    {RelationKind::em_nonhomog, "em-nonhomog",
     "E_M non-homogeneous equation for single-endpoint integrals", 1e-9},
    {RelationKind::gm_recurrence, "gm-recurrence",
     "three-term recurrence for gauge-transformed E_1 solutions", 1e-8},
    {RelationKind::rank_check, "rank-check",
     "4x6 relation matrix has rank 4 with the phi-vector in its kernel", 1e-8},
    {RelationKind::w_integral_consistency, "w-integral-consistency",
     "W wrapper equals -phi_{1,2}/(q(1-q)(q)_inf)", 1e-9},
};

const RelationInfo& info_for(RelationKind kind) {
  for (const auto& info : kRelations)
    if (info.kind == kind) return info;
  throw DomainError("unknown relation kind");
}

}  // namespace

std::span<const RelationKind> all_relations() {
  static const RelationKind kinds[] = {
      RelationKind::heine_connection, RelationKind::mimachi,
      RelationKind::rp_connection,    RelationKind::w_relation,
      RelationKind::h3_three_term,    RelationKind::cocycle,
      RelationKind::bailey,           RelationKind::w87_three_term,
      RelationKind::gm_three_term,    RelationKind::em_solution,
      RelationKind::h3_solution,      RelationKind::em_nonhomog,
      RelationKind::gm_recurrence,    RelationKind::rank_check,
      RelationKind::w_integral_consistency,
  };
  return kinds;
}

const char* relation_name(RelationKind kind) { return info_for(kind).name; }
const char* relation_anchor(RelationKind kind) { return info_for(kind).anchor; }
double default_tolerance(RelationKind kind) { return info_for(kind).tol; }

std::optional<RelationKind> relation_from_name(const std::string& name) {
  for (const auto& info : kRelations)
    if (name == info.name) return info.kind;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (trials < 1) throw DomainError("RunConfig: trials must be >= 1");
  if (tol < 0.0) throw DomainError("RunConfig: tol must be >= 0");
  if (M < 1) throw DomainError("RunConfig: M must be >= 1");
  if (q_fixed != 0.0 && !(q_fixed > 0.0 && q_fixed < 1.0))
    throw DomainError("RunConfig: q must lie in (0,1)");
  pol.validate();
}

TrialOutcome run_trial(RelationKind kind, const SampleConfig& cfg,
                       const TruncationPolicy& pol, double tol) {
  switch (kind) {
    case RelationKind::rp_connection: {
      const SampledRP s = sample_params(cfg);
      return {check_rp_connection(s.rp, s.q, pol, tol), rp_json(s.q, s.rp)};
    }
    case RelationKind::cocycle: {
      const SampledRP s = sample_params(cfg);
      return {check_cocycle(s.rp, 1, 2, 3, s.q, pol, tol), rp_json(s.q, s.rp)};
    }
    case RelationKind::mimachi: {
      const SampledJP s = sample_jp(cfg);
      return {check_mimachi(s.jp, s.q, pol, tol), jp_json(s)};
    }
    case RelationKind::heine_connection: {
      const SampledHeine s = sample_heine(cfg);
      return {check_heine_connection(s.hp, s.q, pol, tol), heine_json(s)};
    }
    case RelationKind::w_relation: {
      SampleConfig c = cfg;
      c.w_guard = WGuard::all_permutations;
      c.z_cap = std::min(c.z_cap, 0.7);
      const SampledRP s = sample_params(c);
      return {check_w_relation(s.rp, s.q, series_policy(pol), tol),
              rp_json(s.q, s.rp)};
    }
    case RelationKind::w_integral_consistency: {
      SampleConfig c = cfg;
      c.w_guard = WGuard::single;
      c.z_cap = std::min(c.z_cap, 0.7);
      const SampledRP s = sample_params(c);
      return {check_w_integral_consistency(s.rp, s.q, series_policy(pol), tol),
              rp_json(s.q, s.rp)};
    }
    case RelationKind::h3_three_term: {
      SampleConfig c = cfg;
      c.M = 1;
      const SampledSplit s = sample_split(c);
      const H3Params hp = rp_to_h3(s.em, s.x, s.alpha, s.q);
      return {check_h3_three_term(hp, s.q, pol, tol), split_json(s)};
    }
    case RelationKind::rank_check: {
      SampleConfig c = cfg;
      c.M = 1;
      const SampledSplit s = sample_split(c);
      const H3Params hp = rp_to_h3(s.em, s.x, s.alpha, s.q);
      return {check_rank(hp, s.q, pol, tol), split_json(s)};
    }
    case RelationKind::h3_solution: {
      SampleConfig c = cfg;
      c.M = 1;
      const SampledSplit s = sample_split(c);
      const H3Params hp = rp_to_h3(s.em, s.x, s.alpha, s.q);
      return {check_h3_solution(hp, 1, 4, s.q, pol, tol), split_json(s)};
    }
    case RelationKind::em_solution: {
      const SampledSplit s = sample_split(cfg);
      return {check_em_solution(s.em, s.x, 1, 2, s.q, pol, tol),
              split_json(s)};
    }
    case RelationKind::em_nonhomog: {
      const SampledSplit s = sample_split(cfg);
      return {check_em_nonhomog(s.em, s.x, s.q, pol, tol), split_json(s)};
    }
    case RelationKind::gm_recurrence: {
      SampleConfig c = cfg;
      c.M = 1;
      const SampledSplit s = sample_split(c);
      return {check_gm_recurrence(s.em, s.x, s.q, pol, tol), split_json(s)};
    }
    case RelationKind::bailey: {
      const SampledBailey s = sample_bailey(cfg);
      return {check_bailey(s.bp, s.q, pol, tol), bailey_json(s)};
    }
    case RelationKind::w87_three_term: {
      const SampledW87 s = sample_w87(cfg);
      return {check_w87_three_term(s.wp, s.q, pol, tol), w87_json(s)};
    }
    case RelationKind::gm_three_term: {
      const SampledW87 s = sample_w87(cfg);
      return {check_gm_three_term(s.wp, s.q, pol, tol), w87_json(s)};
    }
  }
  throw DomainError("run_trial: unknown relation kind");
}

SuiteReport run_suite(const RunConfig& cfg) {
  cfg.validate();
  const RelationInfo& info = info_for(cfg.relation);
  const double tol = cfg.tol > 0.0 ? cfg.tol : info.tol;

  SampleConfig base = cfg.sample;
  base.M = cfg.M;
  if (cfg.q_fixed != 0.0) base.q_min = base.q_max = cfg.q_fixed;

  SuiteReport report;
  report.relation = info.name;
  report.anchor = info.anchor;
  report.M = cfg.M;
  report.trials = cfg.trials;
  report.tol = tol;
  report.seed = cfg.seed;

  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < cfg.trials; ++t) {
    SampleConfig c = base;
    c.seed = splitmix64(cfg.seed ^ std::uint64_t(t + 1));
    TrialOutcome outcome;
    try {
      outcome = run_trial(cfg.relation, c, cfg.pol, tol);
    } catch (const Error& e) {
      outcome.report.status = CheckStatus::error;
      outcome.report.note = e.what();
      outcome.params_json = "{}";
    }
    switch (outcome.report.status) {
      case CheckStatus::pass: ++report.passes; break;
      case CheckStatus::fail: ++report.failures; break;
      case CheckStatus::error: ++report.errors; break;
    }
    if (outcome.report.status != CheckStatus::error &&
        outcome.report.rel_residual >= report.max_rel_residual) {
      report.max_rel_residual = outcome.report.rel_residual;
      report.worst_trial = t;
      report.worst_params_json = outcome.params_json;
    }
    if (!outcome.report.note.empty() && report.notes.empty())
      report.notes = outcome.report.note;
  }
  const auto end = std::chrono::steady_clock::now();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(end - start).count();
  return report;
}

}  // namespace qconnect
