#include "indep/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "indep/analytic.hpp"
#include "indep/brute.hpp"
#include "indep/render.hpp"
#include "indep/stability.hpp"
#include "json.hpp"

namespace indep::cli {

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("INDEP_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value >= 1) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct CensusFlags {
  std::int64_t n = 0;
  int k = 2;
  std::string weights;
  bool include_trivial = false;
  std::size_t list = 0;
  std::string format = "table";
  unsigned threads = 1;
  std::string engine;
  bool no_prune = false;
  bool timing = false;
};

void add_census_flags(CLI::App* cmd, CensusFlags& f, bool with_k) {
  cmd->add_option("--n", f.n, "number of outcomes")->required()->check(CLI::PositiveNumber);
  if (with_k) cmd->add_option("--k", f.k, "tuple size")->required()->check(CLI::Range(2, 20));
  cmd->add_option("--weights", f.weights, "weights file (one INT or INT/INT per line)");
  cmd->add_flag("--include-trivial", f.include_trivial, "admit the empty and full events");
  cmd->add_option("--list", f.list, "number of witness tuples to print");
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--threads", f.threads, "worker threads (default: INDEP_THREADS)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--engine", f.engine, "counting engine")
      ->check(CLI::IsMember({"brute", "analytic"}));
  cmd->add_flag("--no-prune", f.no_prune, "disable size pruning in brute searches");
  cmd->add_flag("--timing", f.timing, "include worker count and elapsed time");
}

SampleSpace build_space(const CensusFlags& f) {
  if (f.weights.empty()) {
    if (f.n > kMaxEventOutcomes) {
      throw CapabilityError("brute force supports at most 63 outcomes; use --engine analytic");
    }
    return SampleSpace::uniform(static_cast<int>(f.n));
  }
  auto weights = load_weights_file(f.weights);
  if (static_cast<std::int64_t>(weights.size()) != f.n) {
    throw ValidationError("weights file has " + std::to_string(weights.size()) +
                          " entries but --n is " + std::to_string(f.n));
  }
  return SampleSpace::weighted(std::move(weights));
}

CensusOptions options_from(const CensusFlags& f) {
  CensusOptions o;
  o.include_trivial = f.include_trivial;
  o.list_cap = f.list;
  o.threads = f.threads;
  o.prune = !f.no_prune;
  return o;
}

void require_analytic_compatible(const CensusFlags& f) {
  if (!f.weights.empty()) throw ValidationError("the analytic engine handles uniform spaces only");
  if (f.include_trivial) throw ValidationError("the analytic engine counts nontrivial events only");
  if (f.list != 0) throw ValidationError("witness lists need the brute engine");
}

int run_census(const CensusFlags& f, CensusMode mode, const std::string& default_engine,
               std::ostream& out) {
  const std::string engine = f.engine.empty() ? default_engine : f.engine;
  CensusReport report;
  if (engine == "analytic") {
    require_analytic_compatible(f);
    report = analytic_report(f.n, mode, f.k);
  } else {
    const SampleSpace space = build_space(f);
    const auto options = options_from(f);
    switch (mode) {
      case CensusMode::pairs: report = brute_pair_census(space, options); break;
      case CensusMode::tuples: report = brute_tuple_census(space, f.k, options); break;
      case CensusMode::grand: report = brute_grand_census(space, options); break;
    }
  }
  out << render(report, parse_format(f.format), f.timing);
  return kExitOk;
}

std::vector<int> parse_factors(const std::string& text) {
  std::vector<int> factors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const Rational value = parse_rational(item);
    if (boost::multiprecision::denominator(value) != 1 || value < 2 || value > kMaxEventOutcomes) {
      throw ValidationError("factor size '" + item + "' must be an integer between 2 and 63");
    }
    factors.push_back(static_cast<int>(boost::multiprecision::numerator(value)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return factors;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact census of independent events in finite probability spaces", "indep"};
  app.require_subcommand(1);
  const unsigned threads = default_threads();

  CensusFlags table_flags;
  auto* table = app.add_subcommand("table", "pair classes grouped by intersection size");
  table->add_option("--n", table_flags.n, "number of outcomes")->required()->check(CLI::PositiveNumber);

  CensusFlags pair_flags;
  pair_flags.threads = threads;
  auto* pairs = app.add_subcommand("pairs", "census of independent pairs");
  add_census_flags(pairs, pair_flags, false);

  CensusFlags tuple_flags;
  tuple_flags.threads = threads;
  auto* tuples = app.add_subcommand("tuples", "census of mutually independent k-tuples");
  add_census_flags(tuples, tuple_flags, true);

  CensusFlags census_flags;
  census_flags.threads = threads;
  auto* census = app.add_subcommand("census", "pairs plus every feasible tuple size");
  add_census_flags(census, census_flags, false);

  std::int64_t verify_n = 0;
  int verify_k = 0;
  unsigned verify_threads = threads;
  std::string verify_format = "table";
  auto* verify_cmd = app.add_subcommand("verify", "compare brute and analytic engines");
  verify_cmd->add_option("--n", verify_n, "number of outcomes")->required()->check(CLI::Range(1, 63));
  verify_cmd->add_option("--k", verify_k, "largest tuple size (default: all feasible)")
      ->check(CLI::Range(2, 20));
  verify_cmd->add_option("--threads", verify_threads, "worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--format", verify_format)->check(CLI::IsMember({"table", "json"}));

  auto* stability = app.add_subcommand("stability", "perturbation and persistence experiments");
  stability->require_subcommand(1);

  std::int64_t perturb_n = 0;
  std::string perturb_eps;
  std::uint64_t perturb_seed = 1;
  int perturb_trials = 1;
  std::string perturb_weights;
  unsigned perturb_threads = threads;
  std::string perturb_format = "table";
  auto* perturb_cmd = stability->add_subcommand("perturb", "pair census after random perturbation");
  perturb_cmd->add_option("--n", perturb_n, "number of outcomes")->required()->check(CLI::Range(1, 63));
  perturb_cmd->add_option("--epsilon", perturb_eps, "relative perturbation bound NUM/DEN")->required();
  perturb_cmd->add_option("--seed", perturb_seed, "first seed")->required();
  perturb_cmd->add_option("--trials", perturb_trials, "number of consecutive seeds")
      ->check(CLI::PositiveNumber);
  perturb_cmd->add_option("--weights", perturb_weights, "base weights file (default uniform)");
  perturb_cmd->add_option("--threads", perturb_threads)->check(CLI::PositiveNumber);
  perturb_cmd->add_option("--format", perturb_format)->check(CLI::IsMember({"table", "json"}));

  std::string persistent_factors;
  PersistentOptions persistent_options;
  persistent_options.threads = threads;
  std::string persistent_format = "table";
  bool persistent_timing = false;
  auto* persistent_cmd =
      stability->add_subcommand("persistent", "pairs independent for every factor bias");
  persistent_cmd->add_option("--factors", persistent_factors, "factor sizes, e.g. 2,6")->required();
  persistent_cmd->add_option("--list", persistent_options.list_cap, "witness pairs to print");
  persistent_cmd->add_option("--threads", persistent_options.threads)->check(CLI::PositiveNumber);
  persistent_cmd->add_option("--seed", persistent_options.seed, "seed for cross-check points");
  persistent_cmd->add_option("--format", persistent_format)
      ->check(CLI::IsMember({"table", "json", "csv"}));
  persistent_cmd->add_flag("--timing", persistent_timing);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (table->parsed()) {
      out << render_pair_table(table_flags.n);
      return kExitOk;
    }
    if (pairs->parsed()) return run_census(pair_flags, CensusMode::pairs, "brute", out);
    if (tuples->parsed()) return run_census(tuple_flags, CensusMode::tuples, "brute", out);
    if (census->parsed()) return run_census(census_flags, CensusMode::grand, "analytic", out);
    if (verify_cmd->parsed()) {
      const int k_max = verify_k != 0 ? verify_k : (verify_n >= 2 ? prop1_max_k(verify_n) : 2);
      CensusOptions options;
      options.threads = verify_threads;
      const auto report = verify(verify_n, k_max, options);
      out << render_verification(report, parse_format(verify_format));
      return report.match ? kExitOk : kExitMismatch;
    }
    if (perturb_cmd->parsed()) {
      const Rational epsilon = parse_rational(perturb_eps);
      SampleSpace base = perturb_weights.empty()
                             ? SampleSpace::uniform(static_cast<int>(perturb_n))
                             : SampleSpace::weighted(load_weights_file(perturb_weights));
      if (base.size() != perturb_n) throw ValidationError("weights file size does not match --n");
      CensusOptions options;
      options.threads = perturb_threads;
      nlohmann::ordered_json trials = nlohmann::ordered_json::array();
      BigInt grand = 0;
      std::ostringstream text;
      text << "perturbed pair census: n=" << perturb_n << " epsilon=" << to_string(epsilon) << "\n";
      for (int t = 0; t < perturb_trials; ++t) {
        const std::uint64_t seed = perturb_seed + static_cast<std::uint64_t>(t);
        const auto report = perturbed_census(base, epsilon, seed, options);
        grand += report.total;
        text << "seed=" << seed << " total=" << report.total << "\n";
        trials.push_back({{"seed", seed}, {"total", to_string(report.total)}});
      }
      text << "independent pairs over all trials: " << grand << "\n";
      if (perturb_format == "json") {
        nlohmann::ordered_json j;
        j["n"] = perturb_n;
        j["epsilon"] = to_string(epsilon);
        j["trials"] = std::move(trials);
        j["total"] = to_string(grand);
        out << j.dump(2) << "\n";
      } else {
        out << text.str();
      }
      return kExitOk;
    }
    if (persistent_cmd->parsed()) {
      const auto factors = parse_factors(persistent_factors);
      const auto report = persistent_pairs(factors, persistent_options);
      out << render(report, parse_format(persistent_format), persistent_timing);
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace indep::cli
