#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qconnect/jackson.hpp"
#include "qconnect/params.hpp"
#include "qconnect/qcore.hpp"
#include "qconnect/qdiff.hpp"
#include "qconnect/report.hpp"
#include "qconnect/series.hpp"

// Residual checkers for the connection formulas and linear relations of the
// toolkit, their explicit theta-quotient coefficients, the admissible
// parameter sampler, and the seeded suite runner.

namespace qconnect {

// ---------------------------------------------------------------------------
// Sampling

/// Which W^{M,2} evaluations the sampler must keep pole-free: none, the
/// identity ordering only, or every permuted ordering of the linear relation.
enum class WGuard { none, single, all_permutations };

/// Knobs of the admissible-parameter sampler. All randomness flows from
/// `seed` through mt19937_64; doubles are drawn as (x >> 11) * 2^-53 so the
/// stream is identical across platforms.
struct SampleConfig {
  std::uint64_t seed = 1;
  int M = 1;
  double q_min = 0.3, q_max = 0.7;        // q sampled uniformly in [q_min,q_max]
  double mag_min = 0.4, mag_max = 2.2;    // |parameter| range (log-uniform)
  bool real_only = true;
  double pole_margin = 0.05;  // min log-q distance of sensitive ratios from Z
  double z_cap = 0.8;
  WGuard w_guard = WGuard::none;

  void validate() const;
};

struct SampledRP {
  Nome q;
  RPParams rp;
};

struct SampledSplit {
  Nome q;
  EMParams em;
  Scalar x;
  Scalar alpha;  // free exponent for the variant-equation view
};

struct SampledJP {
  Nome q;
  JPParams jp;
};

struct SampledHeine {
  Nome q;
  HeineParams hp;
};

/// Integral data of the 8W7 closed form: endpoints a, b; numerator scales
/// c, d; denominator scales e, f, g, h with cd = abefgh.
struct BaileyParams {
  Scalar a, b, c, d, e, f, g, h;
};

struct SampledBailey {
  Nome q;
  BaileyParams bp;
};

/// Arguments of the 8W7 three-term relations with z = q^2 a^2/(bcdef).
struct W87Params {
  Scalar a, b, c, d, e, f;
};

struct SampledW87 {
  Nome q;
  W87Params wp;
};

/// Deterministic seeded sampler for balanced RP parameters. Enforces the
/// balance by solving for b_{M+3}, keeps every ratio a_i/a_j and a_i/b_j at
/// log-q distance >= pole_margin from the integer lattice, and caps
/// |a_3/b_1| (plus |a_2/b_1| and the W-series argument lattice when w_safe).
SampledRP sample_params(const SampleConfig& cfg);

/// Balanced RP sample split as a_1 = A x, b_1 = B x with sampled x, plus a
/// sampled variant exponent alpha.
SampledSplit sample_split(const SampleConfig& cfg);

/// Unbalanced Jordan-Pochhammer sample with Re(alpha) > 0, Re(rho) > 0 and
/// rho kept away from the integer lattice.
SampledJP sample_jp(const SampleConfig& cfg);

SampledHeine sample_heine(const SampleConfig& cfg);
SampledBailey sample_bailey(const SampleConfig& cfg);
SampledW87 sample_w87(const SampleConfig& cfg);

/// splitmix64 finalizer; per-trial seeds are splitmix64(seed ^ (trial+1)).
std::uint64_t splitmix64(std::uint64_t x);

// ---------------------------------------------------------------------------
// Connection coefficients

/// C_k of the Jordan-Pochhammer connection formula (1-based k).
Scalar coeff_mimachi_C(const JPParams& p, int k, const Nome& q,
                       const TruncationPolicy& pol = {});

/// C~_k of the balanced RP connection formula (k in 2..M+3).
Scalar coeff_rp_Ctilde(const RPParams& p, int k, const Nome& q,
                       const TruncationPolicy& pol = {});

struct RPCoeffs {
  std::vector<Scalar> Ctilde;  // index k-2 holds C~_k
  RPParams params;
};
RPCoeffs rp_connection_coeffs(const RPParams& p, const Nome& q,
                              const TruncationPolicy& pol = {});

struct H3ThreeTermCoeffs {
  std::array<Scalar, 3> C;
  H3Params params;
};
H3ThreeTermCoeffs h3_three_term_coeffs(const H3Params& hp, const Nome& q,
                                       const TruncationPolicy& pol = {});

/// Coefficient of the direct-form 8W7 three-term relation (the b,c slot);
/// the swapped slot is obtained by exchanging the b and c arguments.
Scalar w87_three_term_coeff(const W87Params& p, const Nome& q,
                            const TruncationPolicy& pol = {});

/// Coefficient C(b,c) of the theta-quotient form of the same relation.
Scalar gm_three_term_coeff(const W87Params& p, const Nome& q,
                           const TruncationPolicy& pol = {});

// ---------------------------------------------------------------------------
// Checkers

IdentityReport check_mimachi(const JPParams& p, const Nome& q,
                             const TruncationPolicy& pol = {},
                             double tol = 1e-8);

IdentityReport check_rp_connection(const RPParams& p, const Nome& q,
                                   const TruncationPolicy& pol = {},
                                   double tol = 1e-8);

IdentityReport check_heine_connection(const HeineParams& hp, const Nome& q,
                                      const TruncationPolicy& pol = {},
                                      double tol = 1e-8);

IdentityReport check_w_relation(const RPParams& p, const Nome& q,
                                const TruncationPolicy& pol = {},
                                double tol = 1e-8);

IdentityReport check_w_integral_consistency(const RPParams& p, const Nome& q,
                                            const TruncationPolicy& pol = {},
                                            double tol = 1e-9);

IdentityReport check_h3_three_term(const H3Params& hp, const Nome& q,
                                   const TruncationPolicy& pol = {},
                                   double tol = 1e-8);

IdentityReport check_rank(const H3Params& hp, const Nome& q,
                          const TruncationPolicy& pol = {}, double tol = 1e-8);

IdentityReport check_w87_three_term(const W87Params& p, const Nome& q,
                                    const TruncationPolicy& pol = {},
                                    double tol = 1e-8);

IdentityReport check_gm_three_term(const W87Params& p, const Nome& q,
                                   const TruncationPolicy& pol = {},
                                   double tol = 1e-8);

IdentityReport check_bailey(const BaileyParams& bp, const Nome& q,
                            const TruncationPolicy& pol = {},
                            double tol = 1e-8);

IdentityReport check_cocycle(const RPParams& p, int i, int j, int k,
                             const Nome& q, const TruncationPolicy& pol = {},
                             double tol = 1e-11);

IdentityReport check_em_solution(const EMParams& em, Scalar x, int i, int j,
                                 const Nome& q,
                                 const TruncationPolicy& pol = {},
                                 double tol = 1e-9);

IdentityReport check_h3_solution(const H3Params& hp, int i, int j,
                                 const Nome& q,
                                 const TruncationPolicy& pol = {},
                                 double tol = 1e-9);

/// Runs every admissible endpoint choice; reports the worst residual.
IdentityReport check_em_nonhomog(const EMParams& em, Scalar x, const Nome& q,
                                 const TruncationPolicy& pol = {},
                                 double tol = 1e-9);

IdentityReport check_gm_recurrence(const EMParams& em, Scalar x0,
                                   const Nome& q,
                                   const TruncationPolicy& pol = {},
                                   double tol = 1e-8);

/// E_1 residual of y = phi_{i,j} and H3 residual of Y = x^{nu-alpha} y on the
/// mapped parameters; the report carries the worse of the two.
IdentityReport check_remark_equivalence(const EMParams& em, Scalar x,
                                        Scalar alpha, int i, int j,
                                        const Nome& q,
                                        const TruncationPolicy& pol = {},
                                        double tol = 1e-9);

// ---------------------------------------------------------------------------
// Numerical rank helpers

/// The 4x6 matrix of the cocycle rows plus the three-term coefficient row.
std::vector<std::vector<Scalar>> rank_check_matrix(
    const std::array<Scalar, 3>& C);

/// Singular values (descending) via one-sided complex Jacobi.
std::vector<double> singular_values(
    const std::vector<std::vector<Scalar>>& rows);

// ---------------------------------------------------------------------------
// Suite runner

enum class RelationKind {
  heine_connection,
  mimachi,
  rp_connection,
  w_relation,
  h3_three_term,
  cocycle,
  bailey,
  w87_three_term,
  gm_three_term,
  em_solution,
  h3_solution,
  em_nonhomog,
  gm_recurrence,
  rank_check,
  w_integral_consistency,
};

std::span<const RelationKind> all_relations();
const char* relation_name(RelationKind kind);
const char* relation_anchor(RelationKind kind);
std::optional<RelationKind> relation_from_name(const std::string& name);
double default_tolerance(RelationKind kind);

struct RunConfig {
  RelationKind relation = RelationKind::rp_connection;
  int M = 1;
  int trials = 25;
  std::uint64_t seed = 1;
  double tol = 0.0;     // 0: use the relation's default tolerance
  double q_fixed = 0.0; // 0: sample q from the config range
  TruncationPolicy pol{};
  SampleConfig sample{};

  void validate() const;
};

struct TrialOutcome {
  IdentityReport report;
  std::string params_json;  // snapshot of the sampled parameters
};

/// Sample admissible parameters from cfg and run the checker once.
TrialOutcome run_trial(RelationKind kind, const SampleConfig& cfg,
                       const TruncationPolicy& pol, double tol);

struct SuiteReport {
  std::string relation;
  std::string anchor;
  int M = 1;
  int trials = 0;
  int passes = 0;
  int failures = 0;
  int errors = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  double max_rel_residual = 0.0;
  int worst_trial = -1;
  std::string worst_params_json;
  std::string notes;
  double wall_ms = 0.0;
};

SuiteReport run_suite(const RunConfig& cfg);

}  // namespace qconnect
