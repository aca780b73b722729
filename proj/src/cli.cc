// Copyright 2026 The Hiring Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hiring/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hiring/analysis.h"
#include "hiring/dp_optimal.h"
#include "hiring/engine.h"
#include "hiring/markov.h"
#include "hiring/policies.h"

namespace hiring {
namespace {

using nlohmann::json;

// Largest DP horizon per tier. The full tier is unbounded.
int64_t TierLimit(const std::string& tier) {
  if (tier == "smoke") return 64;
  if (tier == "standard") return 2000;
  return -1;
}

double RequireNumber(const json& params, const std::string& key,
                     const std::string& where) {
  if (!params.contains(key) || !params[key].is_number()) {
    throw std::invalid_argument(where + ": params." + key +
                                " is required and must be a number");
  }
  return params[key].get<double>();
}

std::vector<std::string> SplitArgs(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ';') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

double ParseReal(const std::string& s, const std::string& where) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument(where + ": '" + s + "' is not a number");
  }
  return v;
}

struct ExperimentConfig {
  std::string policy = "alg2";
  double c = 0.75;
  int64_t lambda = 3;
  std::string dist = "uniform01";
  std::vector<int64_t> n = {1024};
  int64_t reps = 1000;
  uint64_t seed = 1;
  std::string out;
  std::string denominator_bound = "2^64";
  std::string tier = "standard";
  bool truncate_at_n = false;
  bool unknown_n = false;
  bool two_concurrent = false;
  bool curve = false;
  std::string table_csv;
  std::string family = "M_hat";
  double p = 0.75;
  int64_t k = 3;
};

// Copies recognised keys from a JSON config; unknown keys are errors.
void ApplyJson(const json& cfg, ExperimentConfig& config,
               std::vector<std::string>& errors) {
  if (!cfg.is_object()) {
    errors.push_back("config: top level must be an object");
    return;
  }
  const std::set<std::string> known = {
      "policy", "c",    "lambda", "dist",   "n",
      "reps",   "seed", "out",    "denominator_bound",
      "tier",   "truncate_at_n",  "unknown_n", "two_concurrent",
      "curve",  "table_csv",      "family", "p", "k"};
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (!known.count(it.key())) errors.push_back(it.key() + ": unknown key");
  }
  auto read = [&](const char* key, auto& target) {
    if (!cfg.contains(key)) return;
    try {
      cfg.at(key).get_to(target);
    } catch (const json::exception&) {
      errors.push_back(std::string(key) + ": wrong type");
    }
  };
  read("policy", config.policy);
  read("c", config.c);
  read("lambda", config.lambda);
  if (cfg.contains("dist")) {
    config.dist = cfg["dist"].is_string() ? cfg["dist"].get<std::string>()
                                          : cfg["dist"].dump();
  }
  if (cfg.contains("n")) {
    if (cfg["n"].is_array()) {
      read("n", config.n);
    } else {
      int64_t single = 0;
      read("n", single);
      config.n = {single};
    }
  }
  read("reps", config.reps);
  read("seed", config.seed);
  read("out", config.out);
  if (cfg.contains("denominator_bound")) {
    config.denominator_bound = cfg["denominator_bound"].is_string()
                                   ? cfg["denominator_bound"].get<std::string>()
                                   : cfg["denominator_bound"].dump();
  }
  read("tier", config.tier);
  read("truncate_at_n", config.truncate_at_n);
  read("unknown_n", config.unknown_n);
  read("two_concurrent", config.two_concurrent);
  read("curve", config.curve);
  read("table_csv", config.table_csv);
  read("family", config.family);
  read("p", config.p);
  read("k", config.k);
}

std::optional<mpz_class> ParseDenominator(const std::string& text) {
  static const std::regex power(R"(\s*2\s*\^\s*(\d+)\s*)");
  std::smatch m;
  if (std::regex_match(text, m, power)) {
    const int e = std::stoi(m[1]);
    if (e > 4096) return std::nullopt;
    return mpz_class(1) << e;
  }
  mpz_class v;
  if (text.empty() || v.set_str(text, 10) != 0 || v < 1) return std::nullopt;
  return v;
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string FormatOptional(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : "undefined";
}

std::vector<int64_t> LogGrid(int64_t n_max) {
  std::set<int64_t> points;
  for (int e = 0;; ++e) {
    const auto n = static_cast<int64_t>(std::llround(std::pow(10.0, e / 4.0)));
    if (n > n_max) break;
    points.insert(n);
  }
  points.insert(n_max);
  return {points.begin(), points.end()};
}

void CheckTier(const ExperimentConfig& config, int64_t n) {
  const int64_t limit = TierLimit(config.tier);
  if (limit >= 0 && n > limit) {
    throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the " +
                             config.tier + " tier limit of " +
                             std::to_string(limit) + "; use --tier full");
  }
}

PolicySpec MakeSpec(const ExperimentConfig& config, const mpz_class& bound) {
  PolicySpec spec;
  spec.name = config.policy;
  spec.c = config.c;
  spec.lambda = config.lambda;
  spec.two_concurrent = config.two_concurrent;
  spec.unknown_n = config.unknown_n;
  spec.dp.max_denominator = bound;
  return spec;
}

void CmdSimulate(const ExperimentConfig& config, const mpz_class& bound,
                 std::ostream& out) {
  const Distribution d = ParseDistributionText(config.dist);
  EngineOptions options;
  options.truncate_at_n = config.truncate_at_n;
  out << "policy,n,dist,reps,seed,mean_cost,stderr,opt_mean,opt_stderr,ratio,"
         "max_concurrency,mean_hires\n";
  for (int64_t n : config.n) {
    if (config.policy == "dp") CheckTier(config, n);
    const PolicyFactory factory =
        MakePolicyFactory(MakeSpec(config, bound), d, n);
    const SimulationReport r =
        RunBatch(factory, d, n, config.reps, config.seed, options);
    out << r.policy << ',' << n << ',' << r.distribution << ','
        << r.replications << ',' << r.seed << ',' << FormatDouble(r.mean_cost)
        << ',' << FormatOptional(r.stderr_cost) << ','
        << FormatDouble(r.mean_opt) << ',' << FormatOptional(r.stderr_opt)
        << ',' << FormatDouble(r.ratio_of_means) << ',' << r.max_concurrency
        << ',' << FormatDouble(r.mean_hires) << '\n';
  }
}

void CmdDp(const ExperimentConfig& config, const mpz_class& bound,
           std::ostream& out) {
  const int64_t n = config.n.front();
  CheckTier(config, n);
  DpOptions options;
  options.max_denominator = bound;
  options.keep_full_table = !config.table_csv.empty();
  const DpTable table = ComputeTable(n, options);
  if (!config.table_csv.empty()) {
    std::ofstream csv(config.table_csv);
    if (!csv) throw std::invalid_argument("table_csv: cannot open for writing");
    WriteTableCsv(table, csv);
  }
  if (config.curve) {
    const std::vector<double> curve = LowerBoundCurve(table);
    out << "n,dp_ratio\n";
    for (int64_t i = 1; i <= n; ++i) {
      out << i << ',' << FormatDouble(curve[i]) << '\n';
    }
    return;
  }
  const Rational& c = table.FirstColumn()[n];
  const Rational opt = HarmonicRational(n + 1) - 1;
  out << "n,c_n0,c_n0_decimal,opt,ratio\n";
  out << n << ',' << c.get_str() << ',' << FormatDouble(ToDouble(c)) << ','
      << FormatDouble(ToDouble(opt)) << ',' << FormatDouble(ToDouble(c / opt))
      << '\n';
}

void CmdFigure4(const ExperimentConfig& config, std::ostream& out) {
  const int64_t n_max = config.n.front();
  CheckTier(config, n_max);
  const DpTable table = ComputeTable(n_max);
  const std::vector<double> dp = LowerBoundCurve(table);
  const Distribution uniform = Distribution::Uniform01();
  PolicySpec spec;
  spec.name = "alg2";
  out << "n,alg2_ratio,dp_ratio,gm_lower,alg2_ratio_stderr\n";
  for (int64_t n : LogGrid(n_max)) {
    const SimulationReport r =
        RunBatch(MakePolicyFactory(spec, uniform, n), uniform, n, config.reps,
                 config.seed);
    out << n << ',' << FormatDouble(r.ratio_of_means) << ','
        << FormatDouble(dp[n]) << ','
        << FormatDouble(GilbertMostellerLowerCurve(n)) << ','
        << FormatOptional(r.stderr_ratio) << '\n';
  }
}

void WriteReport(const BoundReport& r, std::ostream& out) {
  out << r.name << ',' << (r.n ? std::to_string(*r.n) : "") << ','
      << FormatDouble(r.value) << ',' << FormatDouble(r.bound) << ','
      << (r.satisfied ? "true" : "false") << '\n';
}

void CmdBounds(std::ostream& out) {
  out << "name,n,value,bound,satisfied\n";
  for (const BoundReport& r : VerifyRatioConstants()) WriteReport(r, out);
  std::vector<double> grid;
  for (int k = 0; k <= 100; ++k) grid.push_back(k / 100.0 * 0.999);
  WriteReport(GMonotoneCheck(Distribution::Uniform01(), grid), out);
  for (double& g : grid) g *= 10;
  WriteReport(GMonotoneCheck(Distribution::Exponential(1), grid), out);
  for (int64_t n : {17, 100, 1000, 100000}) {
    const int k = CeilLog2(n) - 2;
    for (int64_t r = 1; r <= k; ++r) WriteReport(AlphaBandCheck(r, n), out);
  }
  for (int64_t n : {8, 64, 1024}) {
    const double opt = OptUniform(n);
    const Distribution u = Distribution::Uniform01();
    const double bands = OptLowerBoundQuantileBands(u, n);
    WriteReport({"quantile_band_lower_bound", n, bands, opt, bands <= opt},
                out);
    const double powers = OptLowerBoundSurvivalPowers(u, n);
    WriteReport({"survival_power_lower_bound", n, powers, opt, powers <= opt},
                out);
  }
}

ChainFamily ParseFamily(const std::string& name) {
  if (name == "M_hat") return ChainFamily::kMHat;
  if (name == "N_hat") return ChainFamily::kNHat;
  if (name == "M_uniform") return ChainFamily::kMUniform;
  throw std::invalid_argument("family: expected M_hat, N_hat or M_uniform");
}

void CmdMarkov(const ExperimentConfig& config, std::ostream& out) {
  ChainSpec spec;
  spec.family = ParseFamily(config.family);
  spec.p = config.p;
  spec.k = config.k;
  // Closed forms first so domain errors surface before any simulation.
  std::vector<double> visits;
  NhatProfile<long double> profile;
  if (spec.family == ChainFamily::kMHat) visits = MhatVisits(spec.p, spec.k);
  if (spec.family == ChainFamily::kNHat) {
    profile = NhatAbProfile<long double>(spec.p, spec.k);
  }
  RngStream rng(config.seed, 0);
  const ChainStats stats = SimulateChain(spec, config.reps, rng);
  out << "quantity,index,theory,empirical,stderr\n";
  auto row = [&](const std::string& name, int64_t index,
                 std::optional<double> theory, double mean, double se) {
    out << name << ',' << index << ','
        << (theory ? FormatDouble(*theory) : "") << ',' << FormatDouble(mean)
        << ',' << FormatDouble(se) << '\n';
  };
  const int64_t k = spec.k;
  if (spec.family != ChainFamily::kNHat) {
    for (int64_t j = 0; j <= k; ++j) {
      std::optional<double> theory;
      if (!visits.empty()) theory = visits[j];
      row("visits", j, theory, stats.visits_mean[j], stats.visits_stderr[j]);
    }
  } else {
    row("ab_transitions", 0, static_cast<double>(profile.h), stats.ab_mean,
        stats.ab_stderr);
    for (int64_t j = 0; j <= k; ++j) {
      row("visits_A", j, std::nullopt, stats.visits_mean[j],
          stats.visits_stderr[j]);
    }
    const BjBound bound = NhatBjTransitions(spec.p);
    for (int64_t j = 0; j <= k; ++j) {
      row("visits_B", j, j < k ? std::optional<double>(bound.visits)
                               : std::optional<double>(1.0),
          stats.visits_mean[k + 1 + j], stats.visits_stderr[k + 1 + j]);
    }
    for (int64_t j = 0; j < k; ++j) {
      row("ba_transitions_bound", j, bound.transitions, stats.ba_mean[j],
          stats.ba_stderr[j]);
    }
  }
  row("transitions", 0, std::nullopt, stats.transitions_mean,
      stats.transitions_stderr);
}

}  // namespace

Distribution ParseDistribution(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") ||
      !spec["kind"].is_string()) {
    throw std::invalid_argument("dist: expected {\"kind\": ..., \"params\": {...}}");
  }
  const std::string kind = spec["kind"].get<std::string>();
  const json params = spec.value("params", json::object());
  if (kind == "uniform01") return Distribution::Uniform01();
  if (kind == "exponential") {
    return Distribution::Exponential(
        params.contains("rate") ? RequireNumber(params, "rate", "dist") : 1.0);
  }
  if (kind == "pareto") {
    return Distribution::Pareto(RequireNumber(params, "shape", "dist"),
                                RequireNumber(params, "scale", "dist"));
  }
  if (kind == "empirical") {
    if (!params.contains("values") || !params["values"].is_array()) {
      throw std::invalid_argument("dist: params.values must be an array");
    }
    std::vector<double> values;
    for (const json& v : params["values"]) {
      if (!v.is_number()) {
        throw std::invalid_argument("dist: params.values must be numbers");
      }
      values.push_back(v.get<double>());
    }
    return Distribution::Empirical(values);
  }
  throw std::invalid_argument("dist: unknown kind '" + kind + "'");
}

Distribution ParseDistributionText(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    json spec;
    try {
      spec = json::parse(text);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("dist: bad JSON: ") + e.what());
    }
    return ParseDistribution(spec);
  }
  static const std::regex form(R"(\s*([a-z0-9_]+)\s*(?:\((.*)\))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, form)) {
    throw std::invalid_argument("dist: cannot parse '" + text + "'");
  }
  const std::string kind = m[1];
  std::vector<double> args;
  for (const std::string& a : SplitArgs(m[2])) args.push_back(ParseReal(a, "dist"));
  if (kind == "uniform01" && args.empty()) return Distribution::Uniform01();
  if (kind == "exponential" && args.size() <= 1) {
    return Distribution::Exponential(args.empty() ? 1.0 : args[0]);
  }
  if (kind == "pareto" && args.size() == 2) {
    return Distribution::Pareto(args[0], args[1]);
  }
  if (kind == "empirical") return Distribution::Empirical(args);
  throw std::invalid_argument("dist: cannot parse '" + text + "'");
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Online hiring: simulations, DP bounds, checks."};
  app.require_subcommand(1);
  ExperimentConfig flags;
  std::string config_path;
  std::vector<CLI::Option*> options;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config mirroring the flags");
    options.push_back(sub->add_option("--out", flags.out, "Output CSV path"));
    options.push_back(sub->add_option("--seed", flags.seed, "Base seed"));
    options.push_back(sub->add_option("--reps", flags.reps, "Replications"));
    options.push_back(sub->add_option("--tier", flags.tier,
                                      "smoke, standard or full"));
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run");
  add_common(simulate);
  options.push_back(simulate->add_option("--policy", flags.policy));
  options.push_back(simulate->add_option("--c", flags.c, "alg2 budget"));
  options.push_back(simulate->add_option("--lambda", flags.lambda, "alg4"));
  options.push_back(simulate->add_option("--dist", flags.dist));
  options.push_back(
      simulate->add_option("--n", flags.n, "Horizon(s)")->delimiter(','));
  options.push_back(
      simulate->add_option("--denominator-bound", flags.denominator_bound));
  options.push_back(simulate->add_flag("--truncate-at-n", flags.truncate_at_n));
  options.push_back(simulate->add_flag("--unknown-n", flags.unknown_n));
  options.push_back(
      simulate->add_flag("--two-concurrent", flags.two_concurrent));

  CLI::App* dp = app.add_subcommand("dp", "Exact DP lower bound");
  add_common(dp);
  options.push_back(dp->add_option("--n", flags.n)->delimiter(','));
  options.push_back(
      dp->add_option("--denominator-bound", flags.denominator_bound));
  options.push_back(dp->add_flag("--curve", flags.curve));
  options.push_back(dp->add_option("--table-csv", flags.table_csv,
                                   "Dump C(i,j) as fractions"));

  CLI::App* figure4 = app.add_subcommand("figure4", "Ratio curves, log grid");
  add_common(figure4);
  options.push_back(figure4->add_option("--n", flags.n)->delimiter(','));

  CLI::App* bounds = app.add_subcommand("bounds", "Constant and bound checks");
  add_common(bounds);

  CLI::App* markov = app.add_subcommand("markov", "Chain closed forms vs MC");
  add_common(markov);
  options.push_back(markov->add_option("--family", flags.family));
  options.push_back(markov->add_option("--p", flags.p));
  options.push_back(markov->add_option("--k", flags.k));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  // Config file first, explicit flags on top.
  ExperimentConfig config;
  std::vector<std::string> errors;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      errors.push_back("config: cannot read " + config_path);
    } else {
      try {
        ApplyJson(json::parse(in), config, errors);
      } catch (const json::exception& e) {
        errors.push_back(std::string("config: bad JSON: ") + e.what());
      }
    }
  }
  for (CLI::Option* opt : options) {
    if (opt->count() == 0) continue;
    const std::string name = opt->get_name();
    if (name == "--out") config.out = flags.out;
    if (name == "--seed") config.seed = flags.seed;
    if (name == "--reps") config.reps = flags.reps;
    if (name == "--tier") config.tier = flags.tier;
    if (name == "--policy") config.policy = flags.policy;
    if (name == "--c") config.c = flags.c;
    if (name == "--lambda") config.lambda = flags.lambda;
    if (name == "--dist") config.dist = flags.dist;
    if (name == "--n") config.n = flags.n;
    if (name == "--denominator-bound") {
      config.denominator_bound = flags.denominator_bound;
    }
    if (name == "--truncate-at-n") config.truncate_at_n = flags.truncate_at_n;
    if (name == "--unknown-n") config.unknown_n = flags.unknown_n;
    if (name == "--two-concurrent") {
      config.two_concurrent = flags.two_concurrent;
    }
    if (name == "--curve") config.curve = flags.curve;
    if (name == "--table-csv") config.table_csv = flags.table_csv;
    if (name == "--family") config.family = flags.family;
    if (name == "--p") config.p = flags.p;
    if (name == "--k") config.k = flags.k;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (config.reps < 1) errors.push_back("reps: must be >= 1");
  if (config.tier != "smoke" && config.tier != "standard" &&
      config.tier != "full") {
    errors.push_back("tier: expected smoke, standard or full");
  }
  if (config.n.empty()) errors.push_back("n: at least one horizon is needed");
  for (int64_t n : config.n) {
    if (n < 1) errors.push_back("n: " + std::to_string(n) + " must be >= 1");
  }
  const std::optional<mpz_class> bound =
      ParseDenominator(config.denominator_bound);
  if (!bound) {
    errors.push_back("denominator_bound: expected a positive integer or 2^e");
  }
  if (command == "simulate") {
    try {
      const Distribution d = ParseDistributionText(config.dist);
      if (!config.n.empty()) {
        PolicySpec spec = MakeSpec(config, bound.value_or(mpz_class(1)));
        for (const std::string& e : ValidatePolicySpec(spec, d, config.n[0])) {
          errors.push_back(e);
        }
      }
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }
  if (command == "markov") {
    try {
      ParseFamily(config.family);
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
    if (config.k < 1) errors.push_back("k: must be >= 1");
  }
  if (!errors.empty()) {
    for (const std::string& e : errors) err << "config error: " << e << '\n';
    return kExitConfig;
  }

  std::ostringstream buffer;
  try {
    if (command == "simulate") CmdSimulate(config, *bound, buffer);
    if (command == "dp") CmdDp(config, *bound, buffer);
    if (command == "figure4") CmdFigure4(config, buffer);
    if (command == "bounds") CmdBounds(buffer);
    if (command == "markov") CmdMarkov(config, buffer);
  } catch (const CoverageViolation& e) {
    err << "coverage violation: " << e.what() << " (seed " << e.seed()
        << ", stream " << e.stream() << ")\n";
    return kExitCoverage;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kExitResource;
  } catch (const StepLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (config.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.out);
    if (!file) {
      err << "config error: cannot write " << config.out << '\n';
      return kExitConfig;
    }
    file << buffer.str();
  }
  return kExitOk;
}

}  // namespace hiring
