// qconnect: verify the toolkit's connection formulas over seeded parameter
// families, evaluate individual special functions, and print sampled
// admissible parameters as JSON.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qconnect/identities.hpp"
#include "qconnect/jackson.hpp"
#include "qconnect/series.hpp"

using namespace qconnect;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

ordered_json scalar_json(Scalar v) {
  return ordered_json::array({v.real(), v.imag()});
}

Scalar parse_scalar(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Scalar(std::stod(text), 0.0);
  return Scalar(std::stod(text.substr(0, comma)),
                std::stod(text.substr(comma + 1)));
}

ordered_json suite_json(const SuiteReport& r) {
  ordered_json j;
  j["relation"] = r.relation;
  j["anchor"] = r.anchor;
  j["m"] = r.M;
  j["trials"] = r.trials;
  j["passes"] = r.passes;
  j["failures"] = r.failures;
  j["errors"] = r.errors;
  j["tol"] = r.tol;
  j["seed"] = r.seed;
  j["max_rel_residual"] = r.max_rel_residual;
  j["worst_trial"] = r.worst_trial;
  j["worst_params"] = r.worst_params_json.empty()
                          ? ordered_json::object()
                          : ordered_json::parse(r.worst_params_json);
  j["notes"] = r.notes;
  j["wall_ms"] = r.wall_ms;
  return j;
}

// optional key = value config file; '#' starts a comment
std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) throw DomainError("config file not readable: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

void print_suite(const SuiteReport& r) {
  std::printf("%-24s m=%d trials=%d passes=%d failures=%d errors=%d "
              "max_rel=%.3e wall=%.0fms\n",
              r.relation.c_str(), r.M, r.trials, r.passes, r.failures,
              r.errors, r.max_rel_residual, r.wall_ms);
}

int cmd_verify(const std::string& relation_name_arg, RunConfig cfg,
               const std::string& report_path) {
  std::vector<SuiteReport> reports;
  if (relation_name_arg == "all") {
    for (RelationKind kind : all_relations()) {
      cfg.relation = kind;
      reports.push_back(run_suite(cfg));
      print_suite(reports.back());
    }
  } else {
    const auto kind = relation_from_name(relation_name_arg);
    if (!kind) {
      std::cerr << "unknown relation: " << relation_name_arg << "\n";
      return kExitConfig;
    }
    cfg.relation = *kind;
    reports.push_back(run_suite(cfg));
    print_suite(reports.back());
  }

  int failures = 0, errors = 0;
  for (const SuiteReport& r : reports) {
    failures += r.failures;
    errors += r.errors;
  }

  if (!report_path.empty()) {
    ordered_json doc;
    if (reports.size() == 1) {
      doc = suite_json(reports.front());
    } else {
      doc["suites"] = ordered_json::array();
      for (const SuiteReport& r : reports)
        doc["suites"].push_back(suite_json(r));
      doc["total_failures"] = failures;
      doc["total_errors"] = errors;
    }
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write report: " << report_path << "\n";
      return kExitConfig;
    }
    out << doc.dump(2) << "\n";
  }
  return (failures == 0 && errors == 0) ? kExitOk : kExitFailed;
}

int cmd_eval(const std::string& fn, const std::vector<std::string>& raw,
             double q_real, const TruncationPolicy& pol) {
  const Nome q(q_real);
  std::vector<Scalar> args;
  for (const std::string& s : raw) args.push_back(parse_scalar(s));
  const auto need = [&](std::size_t n, const char* usage) {
    if (args.size() != n)
      throw DomainError(std::string("eval ") + fn + ": expected " + usage);
  };

  Scalar value;
  if (fn == "qpoch") {
    need(1, "a");
    value = qpoch_inf(args[0], q, pol);
  } else if (fn == "theta") {
    need(1, "x");
    value = theta(args[0], q, pol);
  } else if (fn == "w87") {
    need(7, "a1 a4 a5 a6 a7 a8 z");
    value = w87(args[0], args[1], args[2], args[3], args[4], args[5], args[6],
                q, pol);
  } else if (fn == "bailey") {
    need(8, "a b c d e f g h");
    value = bailey_rhs(args[0], args[1], args[2], args[3], args[4], args[5],
                       args[6], args[7], q, pol);
  } else if (fn == "kajihara") {
    if (args.size() < 2)
      throw DomainError("eval kajihara: expected M N a... x... s u... v... z");
    const int M = int(args[0].real());
    const int N = int(args[1].real());
    need(std::size_t(2 + 2 * M + 1 + 2 * N + 1),
         "M N a_1..a_M x_1..x_M s u_1..u_N v_1..v_N z");
    KajiharaParams kp;
    kp.M = M;
    kp.N = N;
    std::size_t at = 2;
    for (int i = 0; i < M; ++i) kp.a.push_back(args[at++]);
    for (int i = 0; i < M; ++i) kp.x.push_back(args[at++]);
    kp.s = args[at++];
    for (int i = 0; i < N; ++i) kp.u.push_back(args[at++]);
    for (int i = 0; i < N; ++i) kp.v.push_back(args[at++]);
    kp.z = args[at++];
    value = kajihara_w(kp, q, pol);
  } else if (fn == "phi") {
    if (args.size() < 3)
      throw DomainError("eval phi: expected M i j a_1..a_{M+3} b_1..b_{M+3}");
    const int M = int(args[0].real());
    need(std::size_t(3 + 2 * (M + 3)), "M i j a_1..a_{M+3} b_1..b_{M+3}");
    RPParams p;
    p.M = M;
    std::size_t at = 3;
    for (int i = 0; i < M + 3; ++i) p.a.push_back(args[at++]);
    for (int i = 0; i < M + 3; ++i) p.b.push_back(args[at++]);
    value = phi(p, int(args[1].real()), int(args[2].real()), q, pol);
  } else if (fn == "h3phi") {
    need(13, "i j alpha h1 h2 h3 l1 l2 l3 t1 t2 t3 x");
    const H3Params hp = make_h3_params(
        args[2], {args[3], args[4], args[5]}, {args[6], args[7], args[8]},
        {args[9], args[10], args[11]}, args[12]);
    value = h3_phi(hp, int(args[0].real()), int(args[1].real()), q, pol);
  } else {
    std::cerr << "unknown function: " << fn << "\n";
    return kExitConfig;
  }

  std::printf("%.17g %.17g\n", value.real(), value.imag());
  ordered_json j;
  j["function"] = fn;
  j["q"] = q_real;
  j["value"] = scalar_json(value);
  std::cout << j.dump() << "\n";
  return kExitOk;
}

int cmd_sample(const SampleConfig& cfg) {
  const SampledRP s = sample_params(cfg);
  ordered_json j;
  j["type"] = "rp";
  j["m"] = s.rp.M;
  j["seed"] = cfg.seed;
  j["q"] = s.q.value().real();
  j["a"] = ordered_json::array();
  j["b"] = ordered_json::array();
  for (Scalar v : s.rp.a) j["a"].push_back(scalar_json(v));
  for (Scalar v : s.rp.b) j["b"].push_back(scalar_json(v));
  std::cout << j.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-hypergeometric connection-formula toolkit"};
  app.require_subcommand(1);

  // verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "run a relation checker over seeded parameter families");
  std::string relation;
  verify->add_option("relation", relation,
                     "relation name (see --list) or 'all'")
      ->required();
  bool list_relations = false;
  verify->add_flag("--list", list_relations, "list relation names and exit");
  int m = 1, trials = 25;
  std::uint64_t seed = 1;
  double tol = 0.0, q_fixed = 0.0;
  std::string report_path, config_path;
  double trunc_tol = 0.0;
  int max_terms = 0, max_total_index = 0;
  auto* om = verify->add_option("--m", m, "family size parameter M");
  auto* ot = verify->add_option("--trials", trials, "number of seeded trials");
  auto* os = verify->add_option("--seed", seed, "master seed");
  auto* otol = verify->add_option("--tol", tol, "pass tolerance override");
  auto* oq = verify->add_option("--q", q_fixed, "fix the nome q in (0,1)");
  verify->add_option("--report", report_path, "write a JSON report here");
  verify->add_option("--config", config_path,
                     "key=value config file (flags win)");
  verify->add_option("--trunc-tol", trunc_tol, "truncation tail tolerance");
  verify->add_option("--max-terms", max_terms, "truncation term cap");
  verify->add_option("--max-total-index", max_total_index,
                     "multiple-sum layer cap");

  // eval -------------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "evaluate one function");
  std::string fn;
  std::vector<std::string> fn_args;
  double q_eval = 0.5;
  double eval_trunc_tol = 0.0;
  eval->add_option("function", fn,
                   "qpoch | theta | w87 | kajihara | phi | h3phi | bailey")
      ->required();
  eval->add_option("args", fn_args, "function arguments (re or re,im)");
  eval->add_option("--q", q_eval, "nome q in (0,1)")->required();
  eval->add_option("--trunc-tol", eval_trunc_tol, "truncation tail tolerance");

  // sample -------------------------------------------------------------
  auto* sample = app.add_subcommand(
      "sample", "print one admissible balanced parameter set as JSON");
  int sm = 1;
  std::uint64_t sseed = 1;
  double spole = 0.05, szcap = 0.8;
  bool scomplex = false;
  sample->add_option("--m", sm, "family size parameter M");
  sample->add_option("--seed", sseed, "sampler seed");
  sample->add_option("--pole-margin", spole, "log-q lattice margin");
  sample->add_option("--z-cap", szcap, "cap on |a_3/b_1|");
  sample->add_flag("--complex", scomplex, "sample complex phases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (verify->parsed()) {
      if (list_relations) {
        for (RelationKind kind : all_relations())
          std::printf("%-24s %s\n", relation_name(kind),
                      relation_anchor(kind));
        return kExitOk;
      }
      RunConfig cfg;

      // precedence: defaults < config file < QCONNECT_TOL < flags
      if (!config_path.empty()) {
        for (const auto& [key, value] : read_config(config_path)) {
          if (key == "m" && om->count() == 0)
            m = std::stoi(value);
          else if (key == "trials" && ot->count() == 0)
            trials = std::stoi(value);
          else if (key == "seed" && os->count() == 0)
            seed = std::stoull(value);
          else if (key == "tol" && otol->count() == 0)
            tol = std::stod(value);
          else if (key == "q" && oq->count() == 0)
            q_fixed = std::stod(value);
        }
      }
      if (const char* env = std::getenv("QCONNECT_TOL");
          env && otol->count() == 0)
        tol = std::stod(env);

      cfg.M = m;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.tol = tol;
      cfg.q_fixed = q_fixed;
      if (trunc_tol > 0.0) cfg.pol.tol = trunc_tol;
      if (max_terms > 0) cfg.pol.max_terms = max_terms;
      if (max_total_index > 0) cfg.pol.max_total_index = max_total_index;
      cfg.validate();
      return cmd_verify(relation, cfg, report_path);
    }
    if (eval->parsed()) {
      TruncationPolicy pol;
      pol.max_total_index = 240;
      if (eval_trunc_tol > 0.0) pol.tol = eval_trunc_tol;
      return cmd_eval(fn, fn_args, q_eval, pol);
    }
    if (sample->parsed()) {
      SampleConfig cfg;
      cfg.M = sm;
      cfg.seed = sseed;
      cfg.pole_margin = spole;
      cfg.z_cap = szcap;
      cfg.real_only = !scomplex;
      cfg.validate();
      return cmd_sample(cfg);
    }
  } catch (const SamplerExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
