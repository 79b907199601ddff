// Command-line front end: generate instances, solve them with the
// configuration-LP pipeline, and run comparison grids against the baselines.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "votelp/votelp.hpp"

namespace {

using nlohmann::json;
using namespace votelp;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Mode parse_mode(const std::string& name) {
  if (name == "ucm") return Mode::ucm;
  if (name == "wcm") return Mode::wcm;
  throw CLI::ValidationError("--mode", "must be ucm or wcm");
}

Mode pick_mode(const std::string& flag, const ProblemInstance& instance) {
  if (flag == "auto") return instance.unweighted() ? Mode::ucm : Mode::wcm;
  return parse_mode(flag);
}

void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    save_json_file(out_path, j);
  }
}

std::vector<Score> reduced_alpha(const ProblemInstance& instance) {
  return std::vector<Score>(instance.alpha().entries().begin(),
                            instance.alpha().entries().end() - 1);
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  int n = 8;
  int m = 4;
  int k = 2;
  std::string mode = "ucm";
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenArgs& args) {
  const ProblemInstance instance =
      gen_uniform(args.n, args.m, args.k, parse_mode(args.mode), args.seed);
  json j = instance_to_json(instance);
  j["generator"] = {{"n", args.n},
                    {"m", args.m},
                    {"k", args.k},
                    {"mode", args.mode},
                    {"seed", args.seed}};
  emit_json(j, args.out);
  return 0;
}

// -------------------------------------------------------------- solve ----

struct SolveArgs {
  std::string in;
  std::string mode = "auto";
  std::optional<Score> bound;
  std::uint64_t seed = 1;
  int repeats = 0;  // 0: default to m
  double d = 1.0;
  double tol = 1e-6;
  int max_columns = 50;
  bool natural_lp = false;
  bool trace = false;
  std::string out;
  std::string matrix_out;
};

int run_solve(const SolveArgs& args) {
  const ProblemInstance instance = instance_from_json(load_json_file(args.in));
  const Mode mode = pick_mode(args.mode, instance);

  ClpOptions options;
  options.eps_lp = args.tol;
  options.column_cap_factor = args.max_columns;
  if (args.trace) {
    options.trace = [](const ClpTrace& t) {
      std::cerr << "trace: T=" << t.bound << " iteration=" << t.iteration
                << " columns_added=" << t.columns_added << " pool=" << t.pool_size
                << " slack=" << t.coverage_slack << '\n';
    };
  }

  json report;
  report["mode"] = mode_name(mode);
  report["m"] = instance.m();
  report["k"] = instance.k();

  if (args.bound) {
    const auto start = std::chrono::steady_clock::now();
    const ClpFeasibility probe = clp_feasible(instance, *args.bound, mode, options);
    report["bound"] = *args.bound;
    report["feasible"] = probe.feasible;
    report["clp_seconds"] = seconds_since(start);
    emit_json(report, args.out);
    return 0;
  }

  const int repeats = args.repeats > 0 ? args.repeats : instance.m();
  const PipelineResult pipeline = run_pipeline(instance, mode, repeats, args.seed, options);

  const int beta = beta_of(instance.m(), args.d);
  const Score g = g_alpha(reduced_alpha(instance), beta);
  const Score factor = instance.total_weight();

  report["t_clp"] = pipeline.clp.t_clp;
  report["rounding"] = {{"achieved", pipeline.rounding.achieved},
                       {"repeats", repeats},
                       {"seed", pipeline.rounding.seed},
                       {"per_repeat", pipeline.rounding.per_repeat}};
  report["reverse_score"] = pipeline.reverse_score;
  report["achieved"] = pipeline.achieved;
  report["used_incumbent"] = pipeline.used_incumbent;
  report["beta"] = beta;
  report["g_alpha"] = g;
  report["additive_bound"] = pipeline.clp.t_clp + factor * g;
  if (instance.sigma_p()) {
    report["p_final"] = p_final_score(instance);
    report["win"] = pipeline.achieved <= p_final_score(instance);
  }
  if (args.natural_lp && instance.unweighted()) {
    report["natural_lp"] = natural_lp_value(instance);
  }
  report["clp_seconds"] = pipeline.clp_seconds;
  report["rounding_seconds"] = pipeline.rounding_seconds;

  if (!args.matrix_out.empty()) {
    save_json_file(args.matrix_out, matrix_to_json(pipeline.strategy));
  }
  emit_json(report, args.out);
  return 0;
}

// ------------------------------------------------------------ compare ----

struct CompareArgs {
  std::vector<int> ms{9, 16, 25, 36};
  std::vector<int> ks;  // empty: floor(sqrt(m))
  std::vector<int> ns;  // empty: 2k
  int trials = 20;
  std::string mode = "ucm";
  std::uint64_t seed = 1;
  int workers = 0;  // 0: hardware concurrency
  std::string out;
};

struct CompareRow {
  int m = 0, k = 0, n = 0;
  std::uint64_t seed = 0;
  Score t_clp = 0;
  Score clp_score = 0;
  Score reverse_score = 0;
  std::optional<Score> avgfit_score;
  std::optional<Score> largestfit_score;
  std::optional<Score> exact_t_star;
  double clp_seconds = 0.0;
  double total_seconds = 0.0;
};

CompareRow run_trial(int m, int k, int n, Mode mode, std::uint64_t row_seed) {
  const auto start = std::chrono::steady_clock::now();
  CompareRow row;
  row.m = m;
  row.k = k;
  row.n = n;
  row.seed = row_seed;

  const ProblemInstance instance = gen_uniform(n, m, k, mode, row_seed);

  const PipelineResult pipeline =
      run_pipeline(instance, mode, instance.m(), mix_key(row_seed, 0x726f756e64ull));
  row.t_clp = pipeline.clp.t_clp;
  row.clp_seconds = pipeline.clp_seconds;
  row.clp_score = pipeline.achieved;
  row.reverse_score = pipeline.reverse_score;
  if (instance.unweighted()) {
    row.avgfit_score = max_nonpreferred_score(instance, average_fit(instance));
    row.largestfit_score = max_nonpreferred_score(instance, largest_fit(instance));
  }
  if (m <= 6 && k <= 3) {
    row.exact_t_star = exact_bruteforce(instance).t_star;
  }
  row.total_seconds = seconds_since(start);
  return row;
}

void write_rows(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << "m,k,n,seed,t_clp,clp_score,reverse_score,avgfit_score,largestfit_score,"
        "exact_t_star,clp_seconds,total_seconds\n";
  for (const CompareRow& r : rows) {
    os << r.m << ',' << r.k << ',' << r.n << ',' << r.seed << ',' << r.t_clp << ','
       << r.clp_score << ',' << r.reverse_score << ',';
    if (r.avgfit_score) os << *r.avgfit_score;
    os << ',';
    if (r.largestfit_score) os << *r.largestfit_score;
    os << ',';
    if (r.exact_t_star) os << *r.exact_t_star;
    os << ',' << std::fixed << std::setprecision(6) << r.clp_seconds << ',' << r.total_seconds
       << '\n';
    os.unsetf(std::ios::fixed);
  }
}

int run_compare(const CompareArgs& args) {
  if (!args.ks.empty() && args.ks.size() != args.ms.size() && args.ks.size() != 1) {
    throw CLI::ValidationError("--k", "give one value, or one per --m");
  }
  if (!args.ns.empty() && args.ns.size() != args.ms.size() && args.ns.size() != 1) {
    throw CLI::ValidationError("--n", "give one value, or one per --m");
  }
  const Mode mode = parse_mode(args.mode);

  struct Cell {
    int m, k, n;
  };
  std::vector<Cell> cells;
  for (std::size_t idx = 0; idx < args.ms.size(); ++idx) {
    const int m = args.ms[idx];
    const int k = args.ks.empty()
                      ? static_cast<int>(std::floor(std::sqrt(static_cast<double>(m))))
                      : args.ks[args.ks.size() == 1 ? 0 : idx];
    const int n = args.ns.empty() ? 2 * k : args.ns[args.ns.size() == 1 ? 0 : idx];
    cells.push_back({m, k, n});
  }

  std::vector<CompareRow> rows(cells.size() * static_cast<std::size_t>(args.trials));
  unsigned workers = args.workers > 0 ? static_cast<unsigned>(args.workers)
                                      : std::max(1u, std::thread::hardware_concurrency());

  std::size_t global = 0;
  std::vector<std::pair<std::size_t, std::future<CompareRow>>> inflight;
  const auto drain = [&]() {
    for (auto& [slot, fut] : inflight) rows[slot] = fut.get();
    inflight.clear();
  };
  for (const Cell& cell : cells) {
    for (int trial = 0; trial < args.trials; ++trial, ++global) {
      const std::uint64_t row_seed = mix_key(args.seed, global);
      inflight.emplace_back(global, std::async(std::launch::async, run_trial, cell.m, cell.k,
                                               cell.n, mode, row_seed));
      if (inflight.size() >= workers) drain();
    }
  }
  drain();

  if (args.out.empty()) {
    write_rows(std::cout, rows);
  } else {
    std::ofstream os(args.out);
    if (!os) throw io_error("cannot open " + args.out + " for writing");
    write_rows(os, rows);
  }

  // Per-cell digest on stderr so the CSV stays machine-readable.
  std::map<std::pair<int, int>, std::array<int, 3>> digest;  // {trials, <=, <}
  for (const CompareRow& r : rows) {
    auto& d = digest[{r.m, r.k}];
    d[0]++;
    if (r.clp_score <= r.reverse_score) d[1]++;
    if (r.clp_score < r.reverse_score) d[2]++;
  }
  for (const auto& [cell, d] : digest) {
    std::cerr << "m=" << cell.first << " k=" << cell.second << ": " << d[1] << "/" << d[0]
              << " at or below the reversal baseline, " << d[2] << "/" << d[0]
              << " strictly below\n";
  }
  return 0;
}

// --------------------------------------------------------- lowerbound ----

struct LowerBoundArgs {
  std::vector<int> ts{1, 2, 3, 4};
  bool with_clp = false;
};

int run_lowerbound(const LowerBoundArgs& args) {
  std::cout << "t,m,construction,reverse";
  if (args.with_clp) std::cout << ",t_clp";
  std::cout << '\n';
  for (int t : args.ts) {
    const LowerBoundFamily family = lower_bound_family(t);
    const Score construction = max_nonpreferred_score(family.instance, family.strategy);
    const Score rev = max_nonpreferred_score(family.instance, reverse(family.instance));
    std::cout << t << ',' << family.instance.m() << ',' << construction << ',' << rev;
    if (args.with_clp) {
      std::cout << ',' << min_feasible_T(family.instance, Mode::ucm).t_clp;
    }
    std::cout << '\n';
  }
  return 0;
}

// ----------------------------------------------------------------- gap ----

struct GapArgs {
  std::vector<int> ms{5, 10};
};

int run_gap(const GapArgs& args) {
  std::cout << "m,natural_lp,t_star,gap\n";
  for (int m : args.ms) {
    if (m < 2 || m > 20) throw CLI::ValidationError("--m", "needs 2 <= m <= 20");
    ProblemInstance instance(ScoringVector::borda(m),
                             std::vector<Score>(static_cast<std::size_t>(m), 0),
                             std::vector<Score>(1, 1));
    const double natural = natural_lp_value(instance);
    BruteForceLimits limits;
    limits.max_m = m;
    limits.max_k = 1;
    const Score t_star = exact_bruteforce(instance, limits).t_star;
    std::cout << m << ',' << std::fixed << std::setprecision(6) << natural << ',';
    std::cout.unsetf(std::ios::fixed);
    std::cout << t_star << ',' << std::fixed << std::setprecision(6)
              << (static_cast<double>(t_star) - natural) << '\n';
    std::cout.unsetf(std::ios::fixed);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalitional manipulation of positional scoring rules:\n"
               "configuration-LP solver, randomized rounding, and baselines"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", gen_args.n, "Number of non-manipulator ballots")->check(CLI::NonNegativeNumber);
  gen->add_option("--m", gen_args.m, "Number of non-preferred candidates")->check(CLI::PositiveNumber);
  gen->add_option("--k", gen_args.k, "Number of manipulators")->check(CLI::PositiveNumber);
  gen->add_option("--mode", gen_args.mode, "ucm or wcm")->check(CLI::IsMember({"ucm", "wcm"}));
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("--out", gen_args.out, "Output file (default stdout)");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance end to end");
  solve->add_option("--in", solve_args.in, "Instance JSON file")->required();
  solve->add_option("--mode", solve_args.mode, "ucm, wcm or auto")
      ->check(CLI::IsMember({"ucm", "wcm", "auto"}));
  solve->add_option("--t", solve_args.bound, "Only test feasibility of this bound");
  solve->add_option("--seed", solve_args.seed, "Rounding seed");
  solve->add_option("--repeats", solve_args.repeats, "Rounding repeats (default m)");
  solve->add_option("--d", solve_args.d, "Displacement radius multiplier");
  solve->add_option("--tol", solve_args.tol, "LP feasibility tolerance");
  solve->add_option("--max-columns", solve_args.max_columns,
                    "Column cap factor (cap = factor * m * k per candidate)");
  solve->add_flag("--natural-lp", solve_args.natural_lp, "Also report the natural LP value");
  solve->add_flag("--trace", solve_args.trace, "Log cutting-plane progress to stderr");
  solve->add_option("--out", solve_args.out, "Report file (default stdout)");
  solve->add_option("--matrix-out", solve_args.matrix_out,
                    "Write the recommended strategy matrix here");

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand("compare", "Run a comparison grid, CSV output");
  compare->add_option("--m", compare_args.ms, "Candidate counts (repeatable)");
  compare->add_option("--k", compare_args.ks, "Manipulator counts (default floor(sqrt(m)))");
  compare->add_option("--n", compare_args.ns, "Ballot counts (default 2k)");
  compare->add_option("--trials", compare_args.trials, "Trials per cell")->check(CLI::PositiveNumber);
  compare->add_option("--mode", compare_args.mode, "ucm or wcm")
      ->check(CLI::IsMember({"ucm", "wcm"}));
  compare->add_option("--seed", compare_args.seed, "Base seed");
  compare->add_option("--workers", compare_args.workers, "Parallel trials (default hardware)");
  compare->add_option("--out", compare_args.out, "CSV file (default stdout)");

  LowerBoundArgs lb_args;
  CLI::App* lowerbound = app.add_subcommand(
      "lowerbound", "Evaluate the hand-built family where reversal lags behind");
  lowerbound->add_option("--t", lb_args.ts, "Family parameters (m = 3t)");
  lowerbound->add_flag("--clp", lb_args.with_clp, "Also compute the LP bound per instance");

  GapArgs gap_args;
  CLI::App* gap = app.add_subcommand(
      "gap", "Show the natural relaxation's gap on the zero-score Borda instance");
  gap->add_option("--m", gap_args.ms, "Candidate counts (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (compare->parsed()) return run_compare(compare_args);
    if (lowerbound->parsed()) return run_lowerbound(lb_args);
    if (gap->parsed()) return run_gap(gap_args);
    return 1;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const solver_error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 2;
  }
}
