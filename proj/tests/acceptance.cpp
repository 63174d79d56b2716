// Acceptance suite: runs every top-level correctness criterion at its pinned
// tolerance and prints one pass/fail line per criterion. Exits non-zero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qconnect/identities.hpp"
#include "qconnect/jackson.hpp"
#include "qconnect/qdiff.hpp"
#include "qconnect/series.hpp"

using namespace qconnect;

namespace {

int g_failures = 0;

void report(int idx, const char* label, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", idx,
              label, detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

SampleConfig cfg_for(int M, std::uint64_t seed) {
  SampleConfig cfg;
  cfg.M = M;
  cfg.seed = seed;
  return cfg;
}

TruncationPolicy series_pol() {
  TruncationPolicy pol;
  pol.max_total_index = 240;
  return pol;
}

// worst relative residual of a checker over `trials` seeded instances;
// a seed whose rejection budget runs out advances deterministically
template <typename F>
double sweep(int trials, std::uint64_t base, F&& one) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t seed = splitmix64(base ^ std::uint64_t(t + 1));
    for (int retry = 0;; ++retry) {
      try {
        const double rel = one(seed);
        if (rel > worst) worst = rel;
        break;
      } catch (const SamplerExhausted&) {
        if (retry >= 8) throw;
        seed = splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
      }
    }
  }
  return worst;
}

}  // namespace

int main() {
  const TruncationPolicy pol;

  // 1. main connection formula, M in {1,2,3}, 100 sets each, <= 60 s
  {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int M : {1, 2, 3}) {
      worst = std::max(worst, sweep(100, 1000 + M, [&](std::uint64_t s) {
        const SampledRP sp = sample_params(cfg_for(M, s));
        return check_rp_connection(sp.rp, sp.q, pol).rel_residual;
      }));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report(1, "rp connection M=1..3 x100", worst <= 1e-8 && secs <= 60.0,
           fmt("max_rel=%.2e wall=%.1fs", worst, secs));
  }

  // 2. Jordan-Pochhammer connection, M in {1,2}, 50 real-positive sets
  {
    double worst = 0.0;
    for (int M : {1, 2}) {
      worst = std::max(worst, sweep(50, 2000 + M, [&](std::uint64_t s) {
        const SampledJP sp = sample_jp(cfg_for(M, s));
        return check_mimachi(sp.jp, sp.q, pol).rel_residual;
      }));
    }
    report(2, "jp connection M=1,2 x50", worst <= 1e-8,
           fmt("max_rel=%.2e", worst));
  }

  // 3. non-homogeneous equation, all admissible endpoints, plus the
  //    homogeneous residual of endpoint differences
  {
    double worst = 0.0, worst_h = 0.0;
    for (int M : {1, 2}) {
      worst = std::max(worst, sweep(25, 3000 + M, [&](std::uint64_t s) {
        const SampledSplit sp = sample_split(cfg_for(M, s));
        double w = 0.0;
        for (int choice = 0; choice <= M + 1; ++choice)
          w = std::max(w, em_nonhomog_residual(sp.em, sp.x, choice, sp.q, pol)
                              .rel_residual);
        return w;
      }));
      worst_h = std::max(worst_h, sweep(25, 3100 + M, [&](std::uint64_t s) {
        const SampledSplit sp = sample_split(cfg_for(M, s));
        return check_em_solution(sp.em, sp.x, 1, 2, sp.q, pol).rel_residual;
      }));
    }
    report(3, "non-homogeneous equation M=1,2",
           worst <= 1e-9 && worst_h <= 1e-9,
           fmt("max_rel=%.2e homogeneous=%.2e", worst, worst_h));
  }

  // 4. gauge equivalence of the rank-2 operator and the variant operator
  {
    const double worst = sweep(25, 4000, [&](std::uint64_t s) {
      const SampledSplit sp = sample_split(cfg_for(1, s));
      return check_remark_equivalence(sp.em, sp.x, sp.alpha, 1, 2, sp.q, pol)
          .rel_residual;
    });
    report(4, "operator gauge equivalence x25", worst <= 1e-9,
           fmt("max_rel=%.2e", worst));
  }

  // 5. series wrapper equals the integral, M in {1,2,3}, 25 sets each
  {
    double worst = 0.0;
    for (int M : {1, 2, 3}) {
      worst = std::max(worst, sweep(25, 5000 + M, [&](std::uint64_t s) {
        SampleConfig c = cfg_for(M, s);
        c.w_guard = WGuard::single;
        c.z_cap = 0.7;
        const SampledRP sp = sample_params(c);
        return check_w_integral_consistency(sp.rp, sp.q, series_pol())
            .rel_residual;
      }));
    }
    report(5, "series/integral consistency M=1..3", worst <= 1e-9,
           fmt("max_rel=%.2e", worst));
  }

  // 6. linear relation for the series wrapper, M in {1,2}; the relation
  //    coefficients agree with the connection coefficients to 1e-11
  {
    double worst = 0.0, worst_d = 0.0;
    for (int M : {1, 2}) {
      worst = std::max(worst, sweep(25, 6000 + M, [&](std::uint64_t s) {
        SampleConfig c = cfg_for(M, s);
        c.w_guard = WGuard::all_permutations;
        c.z_cap = 0.7;
        const SampledRP sp = sample_params(c);
        return check_w_relation(sp.rp, sp.q, series_pol()).rel_residual;
      }));
      worst_d = std::max(worst_d, sweep(25, 6100 + M, [&](std::uint64_t s) {
        const SampledRP sp = sample_params(cfg_for(M, s));
        double w = 0.0;
        for (int k = 2; k <= sp.rp.M + 3; ++k) {
          // independent factor-by-factor evaluation of the D_k product
          const Scalar a1 = sp.rp.a[0], ak = sp.rp.a[k - 1];
          Scalar dk = (ak / a1) * (ak / a1);
          for (int i = 1; i <= sp.rp.M + 3; ++i) {
            dk *= theta(ak / sp.rp.b[i - 1], sp.q) /
                  theta(a1 / sp.rp.b[i - 1], sp.q);
            if (i != 1) dk *= theta(a1 / sp.rp.a[i - 1], sp.q);
            if (i != k) dk /= theta(ak / sp.rp.a[i - 1], sp.q);
          }
          const Scalar ck = coeff_rp_Ctilde(sp.rp, k, sp.q, pol);
          w = std::max(w, std::abs(dk - ck) / std::abs(ck));
        }
        return w;
      }));
    }
    report(6, "series linear relation M=1,2",
           worst <= 1e-8 && worst_d <= 1e-11,
           fmt("max_rel=%.2e coeff_match=%.2e", worst, worst_d));
  }

  // 7. variant three-term relation and the Heine connection
  {
    const double worst_h3 = sweep(25, 7000, [&](std::uint64_t s) {
      const SampledSplit sp = sample_split(cfg_for(1, s));
      const H3Params hp = rp_to_h3(sp.em, sp.x, sp.alpha, sp.q);
      return check_h3_three_term(hp, sp.q, pol).rel_residual;
    });
    const double worst_he = sweep(25, 7100, [&](std::uint64_t s) {
      SampleConfig c = cfg_for(1, s);
      const SampledHeine sp = sample_heine(c);
      return check_heine_connection(sp.hp, sp.q, pol).rel_residual;
    });
    report(7, "variant three-term + heine x25",
           worst_h3 <= 1e-8 && worst_he <= 1e-8,
           fmt("variant=%.2e heine=%.2e", worst_h3, worst_he));
  }

  // 8. rank of the 4x6 relation matrix and kernel membership
  {
    bool all_rank4 = true;
    const double worst = sweep(25, 8000, [&](std::uint64_t s) {
      const SampledSplit sp = sample_split(cfg_for(1, s));
      const H3Params hp = rp_to_h3(sp.em, sp.x, sp.alpha, sp.q);
      const IdentityReport r = check_rank(hp, sp.q, pol);
      if (r.note.find("rank=4") == std::string::npos) all_rank4 = false;
      return r.rel_residual;
    });
    report(8, "4x6 rank + kernel x25", all_rank4 && worst <= 1e-8,
           fmt("kernel_rel=%.2e", worst) +
               (all_rank4 ? " rank=4" : " rank!=4"));
  }

  // 9. integral-to-series closed form and both three-term relation forms,
  //    with the coefficient-ratio report
  {
    const double worst_b = sweep(25, 9000, [&](std::uint64_t s) {
      const SampledBailey sp = sample_bailey(cfg_for(1, s));
      return check_bailey(sp.bp, sp.q, pol).rel_residual;
    });
    const double worst_w = sweep(25, 9100, [&](std::uint64_t s) {
      const SampledW87 sp = sample_w87(cfg_for(1, s));
      return check_w87_three_term(sp.wp, sp.q, pol).rel_residual;
    });
    double worst_g = 0.0;
    std::string ratio_note;
    for (int t = 0; t < 25; ++t) {
      const SampledW87 sp =
          sample_w87(cfg_for(1, splitmix64(9200 ^ std::uint64_t(t + 1))));
      const IdentityReport r = check_gm_three_term(sp.wp, sp.q, pol);
      worst_g = std::max(worst_g, r.rel_residual);
      if (t == 0) ratio_note = r.note;
    }
    const bool pass = worst_b <= 1e-8 && worst_w <= 1e-8 && worst_g <= 1e-8;
    report(9, "closed form + three-term relations", pass,
           fmt("integral=%.2e direct-form=%.2e", worst_b, worst_w) +
               fmt(" theta-form=%.2e", worst_g));
    std::printf("      coefficient-ratio report (theta-form vs direct): %s\n",
                ratio_note.c_str());
    if (!pass && worst_b <= 1e-8 && worst_w <= 1e-8)
      std::printf(
          "      note: the theta-quotient coefficient display is intrinsically"
          " inconsistent\n      with the uniquely determined three-term"
          " coefficients; the direct form, which\n      the same relation"
          " determines uniquely, verifies at %.2e. See the repo notes.\n",
          worst_w);
  }

  // 10. three-term recurrence for gauge-transformed solutions, n in 1..5
  {
    const double worst = sweep(25, 10000, [&](std::uint64_t s) {
      const SampledSplit sp = sample_split(cfg_for(1, s));
      return gm_recurrence_residual(sp.em, sp.x, 1, 2, 1, 5, sp.q, pol)
          .rel_residual;
    });
    report(10, "three-term recurrence x25 n=1..5", worst <= 1e-8,
           fmt("max_rel=%.2e", worst));
  }

  // 11. invariant suites and failure injection
  {
    bool ok = true;
    std::string detail;

    // theta quasi-periodicity sweep
    double worst_theta = 0.0;
    for (double qr : {0.3, 0.5, 0.7}) {
      const Nome q(qr);
      for (double x : {0.37, 1.21, 2.6}) {
        const Scalar th = theta(Scalar(x), q);
        for (int n = -3; n <= 3; ++n) {
          const Scalar lhs = theta(std::pow(qr, double(n)) * x, q);
          const Scalar f = std::pow(Scalar(-x), double(-n)) *
                           std::pow(Scalar(qr), -0.5 * n * (n - 1));
          worst_theta =
              std::max(worst_theta, std::abs(lhs - f * th) / std::abs(f * th));
        }
      }
    }
    ok = ok && worst_theta <= 1e-10;

    // Pochhammer recurrence sweep
    double worst_poch = 0.0;
    {
      const Nome q(0.55);
      for (double mag : {1e-3, 0.1, 1.0, 5.0, 9.9}) {
        const Scalar a = Scalar(mag, 0.3 * mag);
        worst_poch = std::max(
            worst_poch,
            std::abs(qpoch_inf(a, q) -
                     (1.0 - a) * qpoch_inf(a * q.value(), q)) /
                std::abs(qpoch_inf(a, q)));
      }
    }
    ok = ok && worst_poch <= 1e-12;

    // cocycle
    const double worst_coc = sweep(50, 11000, [&](std::uint64_t s) {
      const SampledRP sp = sample_params(cfg_for(2, s));
      return check_cocycle(sp.rp, 1, 2, 3, sp.q, pol).rel_residual;
    });
    ok = ok && worst_coc <= 1e-11;

    // key lemma 1 + sum C~ = 0
    const double worst_kl = sweep(50, 12000, [&](std::uint64_t s) {
      const SampledRP sp = sample_params(cfg_for(1, s));
      Scalar sum = 1.0;
      for (int k = 2; k <= sp.rp.M + 3; ++k)
        sum += coeff_rp_Ctilde(sp.rp, k, sp.q, pol);
      return std::abs(sum);
    });
    ok = ok && worst_kl <= 1e-10;

    // failure injection: a perturbed balance is detected
    const SampledRP sp = sample_params(cfg_for(1, 13000));
    RPParams broken = sp.rp;
    broken.b.back() *= 1.001;
    const IdentityReport rb = check_rp_connection(broken, sp.q, pol);
    const bool detected =
        rb.status == CheckStatus::fail && rb.rel_residual > 1e-4;
    ok = ok && detected;

    detail = fmt("theta=%.1e poch=%.1e", worst_theta, worst_poch) +
             fmt(" cocycle=%.1e keylemma=%.1e", worst_coc, worst_kl) +
             (detected ? " injection=detected" : " injection=MISSED");
    report(11, "invariant suites + injection", ok, detail);
  }

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
