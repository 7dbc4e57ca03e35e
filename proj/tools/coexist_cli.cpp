// Command-line front end over the coexist C API: decide coexistence of
// qubit effect pairs, construct joint observables, run seeded
// criteria-vs-oracle agreement campaigns, and emit scan data for the
// unsharpness trade-off boundary.
//
// stdout carries machine-readable JSON or CSV; stderr carries human
// diagnostics. Exit codes: 0 coexistent/success, 1 not coexistent or
// disagreement found, 2 input error.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coexist/capi.h"

namespace {

using nlohmann::json;

constexpr int kExitCoexistent = 0;
constexpr int kExitNotCoexistent = 1;
constexpr int kExitInputError = 2;

struct EffectDeleter {
  void operator()(coexist_effect* e) const { coexist_effect_free(e); }
};
using EffectPtr = std::unique_ptr<coexist_effect, EffectDeleter>;

struct SamplerDeleter {
  void operator()(coexist_sampler* s) const { coexist_sampler_free(s); }
};
using SamplerPtr = std::unique_ptr<coexist_sampler, SamplerDeleter>;

std::string slurp_or_inline(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw std::runtime_error("cannot read file " + arg.substr(1));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

EffectPtr parse_effect(const std::string& arg, double tol, const char* label) {
  const std::string text = slurp_or_inline(arg);
  coexist_effect* raw = nullptr;
  const coexist_status status = coexist_effect_from_json(text.c_str(), tol, &raw);
  if (status != COEXIST_OK) {
    std::ostringstream msg;
    msg << label << ": " << coexist_status_name(status) << ": "
        << coexist_last_error_message();
    throw std::runtime_error(msg.str());
  }
  return EffectPtr(raw);
}

json coeffs_json(const double c[4]) { return json::array({c[0], c[1], c[2], c[3]}); }

const char* route_label(int route) {
  switch (route) {
    case COEXIST_ROUTE_TRIVIAL_COMPARABLE: return "trivial_comparable";
    case COEXIST_ROUTE_TRIVIAL_COMMUTING: return "trivial_commuting";
    default: return "main_criterion";
  }
}

const char* comparable_label(int code) {
  switch (code) {
    case COEXIST_COMPARE_E_BELOW_F: return "e<=f";
    case COEXIST_COMPARE_F_BELOW_E: return "f<=e";
    case COEXIST_COMPARE_E_BELOW_FC: return "e<=f'";
    case COEXIST_COMPARE_E_ABOVE_FC: return "e>=f'";
    default: return "none";
  }
}

const char* construct_route_label(int route) {
  switch (route) {
    case COEXIST_CONSTRUCT_COMPARABLE_A_E: return "comparable_a_e";
    case COEXIST_CONSTRUCT_COMPARABLE_A_F: return "comparable_a_f";
    case COEXIST_CONSTRUCT_COMPARABLE_A_ZERO: return "comparable_a_zero";
    case COEXIST_CONSTRUCT_COMPARABLE_A_OVERLAP: return "comparable_a_overlap";
    case COEXIST_CONSTRUCT_COMMUTING: return "commuting";
    case COEXIST_CONSTRUCT_GENERIC: return "generic";
    default: return "degenerate_fallback";
  }
}

json verdict_json(int v) {
  if (v < 0) return nullptr;
  return v != 0;
}

json report_json(const coexist_report& rep) {
  json out;
  out["coexistent"] = rep.coexistent != 0;
  out["route"] = route_label(rep.route);
  out["relation"] = {{"comparable", comparable_label(rep.comparable)},
                     {"commuting", rep.commuting != 0},
                     {"spacelike", rep.spacelike != 0},
                     {"swap_applied", rep.swap_applied != 0},
                     {"cross_mag", rep.cross_mag}};
  out["lhs_main"] = rep.lhs_main;
  out["rhs_main"] = rep.rhs_main;
  out["margin"] = rep.margin;
  if (rep.route == COEXIST_ROUTE_MAIN_CRITERION) {
    json disj = json::array();
    for (int i = 0; i < 3; ++i)
      if (rep.disjuncts[i]) disj.push_back(i + 1);
    out["criteria"] = {{"main", verdict_json(rep.verdict_main)},
                       {"commutator", verdict_json(rep.verdict_commutator)},
                       {"disjunctive", verdict_json(rep.verdict_disjunctive)},
                       {"disjuncts", disj},
                       {"sharpness_form", verdict_json(rep.verdict_sharpness_form)},
                       {"sharpness_guarded", rep.sharpness_guarded != 0}};
  }
  out["invariants"] = {{"C", rep.C},   {"Cp", rep.Cp},       {"D", rep.D},
                       {"Delta", rep.Delta}, {"GammaP", rep.GammaP},
                       {"GammaM", rep.GammaM}, {"GammaPp", rep.GammaPp},
                       {"GammaMp", rep.GammaMp}, {"N", rep.N},
                       {"Np", rep.Np}, {"dd", rep.dd}};
  out["sharpness"] = {
      {"e", {{"F", rep.F_e}, {"S", rep.S_e}, {"bias", rep.bias_e}}},
      {"f", {{"F", rep.F_f}, {"S", rep.S_f}, {"bias", rep.bias_f}}}};
  return out;
}

struct LambdaPolicyArg {
  int policy = COEXIST_LAMBDA_GEOMETRIC;
  double quantile = 0.5;
};

LambdaPolicyArg parse_lambda_policy(const std::string& text) {
  LambdaPolicyArg out;
  if (text == "geometric") {
    out.policy = COEXIST_LAMBDA_GEOMETRIC;
  } else if (text == "lo") {
    out.policy = COEXIST_LAMBDA_LO;
  } else if (text == "hi") {
    out.policy = COEXIST_LAMBDA_HI;
  } else if (text.rfind("quantile=", 0) == 0) {
    out.policy = COEXIST_LAMBDA_QUANTILE;
    try {
      out.quantile = std::stod(text.substr(9));
    } catch (const std::exception&) {
      throw std::runtime_error("bad quantile in --lambda-policy");
    }
    if (out.quantile < 0.0 || out.quantile > 1.0)
      throw std::runtime_error("--lambda-policy quantile must be in [0,1]");
  } else {
    throw std::runtime_error(
        "--lambda-policy must be geometric, lo, hi or quantile=<q>");
  }
  return out;
}

int cmd_check(const std::string& e_arg, const std::string& f_arg, double tol) {
  const EffectPtr e = parse_effect(e_arg, tol, "--e");
  const EffectPtr f = parse_effect(f_arg, tol, "--f");
  coexist_report rep;
  const coexist_status status = coexist_check(e.get(), f.get(), tol, &rep);
  if (status != COEXIST_OK) {
    std::cerr << "check failed: " << coexist_last_error_message() << "\n";
    return kExitInputError;
  }
  std::cout << report_json(rep).dump(2) << "\n";
  std::cerr << (rep.coexistent ? "coexistent" : "not coexistent") << " via "
            << route_label(rep.route) << " (margin " << rep.margin << ")\n";
  return rep.coexistent ? kExitCoexistent : kExitNotCoexistent;
}

int cmd_construct(const std::string& e_arg, const std::string& f_arg, double tol,
                  const std::string& policy_text) {
  const LambdaPolicyArg policy = parse_lambda_policy(policy_text);
  const EffectPtr e = parse_effect(e_arg, tol, "--e");
  const EffectPtr f = parse_effect(f_arg, tol, "--f");

  coexist_joint joint;
  const coexist_status status = coexist_construct(e.get(), f.get(), tol,
                                                  policy.policy, policy.quantile,
                                                  &joint);
  if (status == COEXIST_ERROR_NOT_COEXISTENT) {
    json out;
    out["error"] = "not_coexistent";
    coexist_report rep;
    if (coexist_check(e.get(), f.get(), tol, &rep) == COEXIST_OK)
      out["report"] = report_json(rep);
    coexist_segments_info seg;
    if (coexist_segments(e.get(), f.get(), tol, &seg) == COEXIST_OK) {
      out["segments"] = {{"lam_a_minus", seg.lam_a_minus},
                         {"lam_a_plus", seg.lam_a_plus},
                         {"lam_b_minus", seg.lam_b_minus},
                         {"lam_b_plus", seg.lam_b_plus},
                         {"gap", seg.gap}};
      std::cerr << "not coexistent: segment gap " << seg.gap << "\n";
    } else {
      std::cerr << "not coexistent\n";
    }
    std::cout << out.dump(2) << "\n";
    return kExitNotCoexistent;
  }
  if (status != COEXIST_OK) {
    std::cerr << "construct failed: " << coexist_status_name(status) << ": "
              << coexist_last_error_message() << "\n";
    return kExitInputError;
  }

  double ec[4], fc[4];
  coexist_effect_coeffs(e.get(), ec);
  coexist_effect_coeffs(f.get(), fc);

  json out;
  json effects = json::array();
  for (int i = 0; i < 4; ++i) effects.push_back(coeffs_json(joint.outcomes[i]));
  out["effects"] = effects;
  out["a"] = coeffs_json(joint.a);
  out["source"] = {{"e", coeffs_json(ec)}, {"f", coeffs_json(fc)}};
  out["route"] = construct_route_label(joint.route);
  out["swapped"] = joint.swapped != 0;
  if (joint.route == COEXIST_CONSTRUCT_GENERIC) {
    out["lambda"] = {{"star", joint.lam_star},
                     {"mu_star", joint.mu_star},
                     {"lo", joint.segments.lam_lo},
                     {"hi", joint.segments.lam_hi},
                     {"hyper_const", joint.segments.hyper_const}};
  }
  coexist_joint_check check;
  coexist_verify_joint(joint.outcomes, ec, fc, 1e-10, &check);
  out["verify"] = {{"positivity_violation", check.positivity_violation},
                   {"sum_violation", check.sum_violation},
                   {"marginal_e_violation", check.marginal_e_violation},
                   {"marginal_f_violation", check.marginal_f_violation},
                   {"pass", check.pass != 0}};
  std::cout << out.dump(2) << "\n";
  return kExitCoexistent;
}

struct SampleStats {
  long trivial_comparable = 0;
  long trivial_commuting = 0;
  long main_criterion = 0;
  long coexistent = 0;
  long criteria_checked = 0;
  long criteria_band_excluded = 0;
  long criteria_disagreements = 0;
  long oracle_checked = 0;
  long oracle_excluded = 0;
  long oracle_disagreements = 0;
  double min_abs_margin = 1e300;
  double min_margin = 1e300;
  double max_margin = -1e300;
};

int cmd_sample(long n, std::uint64_t seed, const std::string& sampler_name,
               double tol, double oracle_tol, long oracle_budget,
               const std::string& out_path, bool skip_oracle) {
  int kind = COEXIST_SAMPLER_UNIFORM;
  if (sampler_name == "boundary") {
    kind = COEXIST_SAMPLER_BOUNDARY;
  } else if (sampler_name != "uniform") {
    std::cerr << "--sampler must be uniform or boundary\n";
    return kExitInputError;
  }
  coexist_sampler* raw = nullptr;
  if (coexist_sampler_create(kind, seed, &raw) != COEXIST_OK) {
    std::cerr << "sampler: " << coexist_last_error_message() << "\n";
    return kExitInputError;
  }
  SamplerPtr sampler(raw);

  std::ofstream csv;
  if (!out_path.empty()) {
    csv.open(out_path);
    if (!csv) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitInputError;
    }
    csv << "index,e0,e1,e2,e3,f0,f1,f2,f3,margin,kind,expected,got\n";
  }
  auto report_disagreement = [&](long index, const double ec[4], const double fc[4],
                                 double margin_value, const char* what,
                                 bool expected, bool got) {
    if (!csv.is_open()) return;
    char line[512];
    std::snprintf(line, sizeof(line),
                  "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%d,%d\n",
                  index, ec[0], ec[1], ec[2], ec[3], fc[0], fc[1], fc[2], fc[3],
                  margin_value, what, expected ? 1 : 0, got ? 1 : 0);
    csv << line;
  };

  SampleStats stats;
  for (long i = 0; i < n; ++i) {
    double ec[4], fc[4];
    coexist_sampler_next(sampler.get(), ec);
    coexist_sampler_next(sampler.get(), fc);
    coexist_effect* eh = nullptr;
    coexist_effect* fh = nullptr;
    if (coexist_effect_create(ec, tol, &eh) != COEXIST_OK ||
        coexist_effect_create(fc, tol, &fh) != COEXIST_OK) {
      coexist_effect_free(eh);
      std::cerr << "internal: sampler produced an invalid effect\n";
      return kExitInputError;
    }
    const EffectPtr e(eh), f(fh);

    coexist_report rep;
    coexist_check(e.get(), f.get(), tol, &rep);
    switch (rep.route) {
      case COEXIST_ROUTE_TRIVIAL_COMPARABLE: ++stats.trivial_comparable; break;
      case COEXIST_ROUTE_TRIVIAL_COMMUTING: ++stats.trivial_commuting; break;
      default: ++stats.main_criterion; break;
    }
    if (rep.coexistent) ++stats.coexistent;
    stats.min_abs_margin = std::min(stats.min_abs_margin, std::abs(rep.margin));
    stats.min_margin = std::min(stats.min_margin, rep.margin);
    stats.max_margin = std::max(stats.max_margin, rep.margin);

    // cross-criterion agreement outside the boundary band
    if (rep.route == COEXIST_ROUTE_MAIN_CRITERION) {
      if (std::abs(rep.margin) <= 1e-9) {
        ++stats.criteria_band_excluded;
      } else {
        ++stats.criteria_checked;
        const bool expect = rep.margin >= 0.0;
        const bool bad =
            rep.verdict_main != (expect ? 1 : 0) ||
            rep.verdict_commutator != (expect ? 1 : 0) ||
            rep.verdict_disjunctive != (expect ? 1 : 0) ||
            (!rep.sharpness_guarded && rep.verdict_sharpness_form != (expect ? 1 : 0));
        if (bad) {
          ++stats.criteria_disagreements;
          report_disagreement(i, ec, fc, rep.margin, "criteria", expect, !expect);
        }
      }
    }

    // oracle agreement outside its resolution limit
    if (!skip_oracle) {
      if (std::abs(rep.margin) <= 1e-5) {
        ++stats.oracle_excluded;
      } else {
        ++stats.oracle_checked;
        coexist_feasibility feas;
        if (coexist_oracle_solve(e.get(), f.get(), oracle_tol, oracle_budget,
                                 seed + static_cast<std::uint64_t>(i),
                                 &feas) == COEXIST_OK) {
          if ((feas.feasible != 0) != (rep.coexistent != 0)) {
            ++stats.oracle_disagreements;
            report_disagreement(i, ec, fc, rep.margin, "oracle",
                                rep.coexistent != 0, feas.feasible != 0);
          }
        }
      }
    }
  }

  json out;
  out["n"] = n;
  out["seed"] = seed;
  out["sampler"] = sampler_name;
  out["tol"] = tol;
  out["routes"] = {{"trivial_comparable", stats.trivial_comparable},
                   {"trivial_commuting", stats.trivial_commuting},
                   {"main_criterion", stats.main_criterion}};
  out["coexistent"] = stats.coexistent;
  out["not_coexistent"] = n - stats.coexistent;
  out["criteria"] = {{"checked", stats.criteria_checked},
                     {"band_excluded", stats.criteria_band_excluded},
                     {"disagreements", stats.criteria_disagreements}};
  out["oracle"] = {{"enabled", !skip_oracle},
                   {"checked", stats.oracle_checked},
                   {"excluded_small_margin", stats.oracle_excluded},
                   {"disagreements", stats.oracle_disagreements}};
  out["margins"] = {{"min", stats.min_margin},
                    {"max", stats.max_margin},
                    {"min_abs", stats.min_abs_margin}};
  std::cout << out.dump(2) << "\n";

  const long total =
      stats.criteria_disagreements + stats.oracle_disagreements;
  if (total > 0) {
    std::cerr << total << " disagreement(s) found\n";
    return kExitNotCoexistent;
  }
  return kExitCoexistent;
}

int cmd_scan(const std::string& mode, int resolution, double angle, double e0,
             double f0, const std::string& out_path, double tol) {
  if (resolution < 2) {
    std::cerr << "--resolution must be at least 2\n";
    return kExitInputError;
  }
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitInputError;
    }
    out = &file;
  }

  char line[512];
  const double ca = std::cos(angle), sa = std::sin(angle);
  if (mode == "unbiased_boundary") {
    *out << "r_e,r_f,angle_rad,verdict,margin60\n";
    for (int i = 0; i < resolution; ++i) {
      const double re = static_cast<double>(i) / (resolution - 1);
      for (int j = 0; j < resolution; ++j) {
        const double rf = static_cast<double>(j) / (resolution - 1);
        const double eb[3] = {re, 0.0, 0.0};
        const double fb[3] = {rf * ca, rf * sa, 0.0};
        coexist_unbiased_report rep;
        if (coexist_check_unbiased(eb, fb, tol, &rep) != COEXIST_OK) {
          std::cerr << "scan: " << coexist_last_error_message() << "\n";
          return kExitInputError;
        }
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%d,%.17g\n", re, rf,
                      angle, rep.coexistent, rep.margin_diagonal);
        *out << line;
      }
    }
  } else if (mode == "margin_grid") {
    *out << "r_e,r_f,angle_rad,lhs_main,rhs_main,margin,verdict\n";
    for (int i = 0; i < resolution; ++i) {
      const double re = static_cast<double>(i) / (resolution - 1);
      for (int j = 0; j < resolution; ++j) {
        const double rf = static_cast<double>(j) / (resolution - 1);
        const double rad_e = re * std::min(e0, 1.0 - e0);
        const double rad_f = rf * std::min(f0, 1.0 - f0);
        const double ec[4] = {e0, rad_e, 0.0, 0.0};
        const double fc[4] = {f0, rad_f * ca, rad_f * sa, 0.0};
        coexist_effect* eh = nullptr;
        coexist_effect* fh = nullptr;
        if (coexist_effect_create(ec, tol, &eh) != COEXIST_OK ||
            coexist_effect_create(fc, tol, &fh) != COEXIST_OK) {
          coexist_effect_free(eh);
          std::cerr << "scan: " << coexist_last_error_message() << "\n";
          return kExitInputError;
        }
        const EffectPtr e(eh), f(fh);
        coexist_report rep;
        coexist_check(e.get(), f.get(), tol, &rep);
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      re, rf, angle, rep.lhs_main, rep.rhs_main, rep.margin,
                      rep.coexistent);
        *out << line;
      }
    }
  } else {
    std::cerr << "--mode must be unbiased_boundary or margin_grid\n";
    return kExitInputError;
  }
  return kExitCoexistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coexistence of qubit effect pairs"};
  app.require_subcommand(1);

  std::string e_arg, f_arg;
  double tol = COEXIST_DEFAULT_TOL;
  std::string lambda_policy = "geometric";
  long n = 1000;
  std::uint64_t seed = 0;
  std::string sampler_name = "uniform";
  std::string out_path;
  double oracle_tol = 1e-7;
  long oracle_budget = 100000;
  bool skip_oracle = false;
  std::string scan_mode = "unbiased_boundary";
  int resolution = 200;
  double angle = std::acos(-1.0) / 2.0;
  double e0 = 0.5, f0 = 0.5;

  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "order/classification tolerance")
        ->envname("COEXIST_TOL");
  };

  CLI::App* check = app.add_subcommand("check", "decide coexistence of a pair");
  check->add_option("--e", e_arg, "effect JSON or @file")->required();
  check->add_option("--f", f_arg, "effect JSON or @file")->required();
  add_tol(check);

  CLI::App* construct =
      app.add_subcommand("construct", "build a joint observable");
  construct->add_option("--e", e_arg, "effect JSON or @file")->required();
  construct->add_option("--f", f_arg, "effect JSON or @file")->required();
  construct->add_option("--lambda-policy", lambda_policy,
                        "geometric, lo, hi or quantile=<q>");
  add_tol(construct);

  CLI::App* sample =
      app.add_subcommand("sample", "criteria-vs-oracle agreement campaign");
  sample->add_option("--n", n, "number of pairs")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "random seed");
  sample->add_option("--sampler", sampler_name, "uniform or boundary");
  sample->add_option("--out", out_path, "CSV path for disagreements");
  sample->add_option("--oracle-tol", oracle_tol, "oracle margin tolerance");
  sample->add_option("--oracle-budget", oracle_budget, "oracle evaluation budget");
  sample->add_flag("--no-oracle", skip_oracle, "skip the feasibility oracle");
  add_tol(sample);

  CLI::App* scan = app.add_subcommand("scan", "emit grid data as CSV");
  scan->add_option("--mode", scan_mode, "unbiased_boundary or margin_grid");
  scan->add_option("--resolution", resolution, "grid points per axis");
  scan->add_option("--angle", angle, "angle between the Bloch axes (radians)");
  scan->add_option("--e0", e0, "identity coefficient of e (margin_grid)");
  scan->add_option("--f0", f0, "identity coefficient of f (margin_grid)");
  scan->add_option("--out", out_path, "output CSV path, - for stdout");
  add_tol(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    std::cerr << err.what() << "\n";
    return kExitInputError;
  }

  try {
    if (check->parsed()) return cmd_check(e_arg, f_arg, tol);
    if (construct->parsed()) return cmd_construct(e_arg, f_arg, tol, lambda_policy);
    if (sample->parsed())
      return cmd_sample(n, seed, sampler_name, tol, oracle_tol, oracle_budget,
                        out_path, skip_oracle);
    if (scan->parsed())
      return cmd_scan(scan_mode, resolution, angle, e0, f0, out_path, tol);
  } catch (const std::exception& err) {
    std::cerr << err.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
