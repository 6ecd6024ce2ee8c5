#include "achull/cli.hpp"

#include "achull/bench.hpp"
#include "achull/errors.hpp"
#include "achull/hull.hpp"
#include "achull/io.hpp"
#include "achull/report.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace achull::cli {
namespace {

struct Options {
  std::string input;
  std::optional<long long> max_vertices;
  double epsilon = 0;
  std::string tol_interior = "auto";
  std::string tie = "deterministic";
  std::uint64_t seed = 0;
  std::string output;
  unsigned threads = 1;
  int max_solver_iterations = SolverConfig<double>{}.max_iterations;
  char delimiter = ',';
  bool header = false;
  std::string bench_spec;
  std::string bench_output;
};

std::optional<double> parse_tol_interior(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !(v > 0)) {
    throw ContractViolation("--tol-interior must be 'auto' or a positive number");
  }
  return v;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ContractViolation("cannot open output file: " + path);
  file << text;
}

int run_hull(const Options& opt, std::ostream& out) {
  const auto loaded = io::load_points(opt.input, io::LoadOptions{opt.delimiter, opt.header});

  BuildConfig<double> config;
  config.max_vertices = opt.max_vertices ? static_cast<Index>(*opt.max_vertices) : loaded.points.size();
  config.epsilon_des = opt.epsilon;
  config.tol_interior = parse_tol_interior(opt.tol_interior);
  config.tie = {opt.tie == "random" ? TieMode::seeded_random : TieMode::deterministic, opt.seed};
  config.threads = opt.threads;
  config.solver.max_iterations = opt.max_solver_iterations;

  const auto result = build(loaded.points, config);
  const auto report = io::make_report(opt.input, loaded, config, result);
  write_text(opt.output, io::to_json(report).dump(2) + "\n", out);
  return kExitOk;
}

int run_bench(const Options& opt, std::ostream& out) {
  std::ifstream in(opt.bench_spec);
  if (!in) throw ContractViolation("cannot open benchmark spec: " + opt.bench_spec);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("malformed benchmark spec: ") + e.what());
  }
  const auto spec = io::parse_benchmark_spec(j);
  std::ostringstream table;
  io::write_benchmark_csv(table, io::run_benchmark(spec), spec.include_timing);
  write_text(opt.bench_output, table.str(), out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Greedy approximate convex hull of a point cloud", "achull"};
  app.require_subcommand(0, 1);

  app.add_option("--input", opt.input, "CSV file, one point per row");
  app.add_option("--max-vertices", opt.max_vertices, "Vertex budget V (default: number of points)")
      ->check(CLI::PositiveNumber);
  app.add_option("--epsilon", opt.epsilon, "Target error (data units)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-interior", opt.tol_interior, "Zero-distance threshold, or 'auto'");
  app.add_option("--tie", opt.tie, "Tie-breaking in the directed search")
      ->check(CLI::IsMember({"deterministic", "random"}));
  app.add_option("--seed", opt.seed, "Seed for --tie random");
  app.add_option("--output", opt.output, "Write the JSON report here instead of stdout");
  app.add_option("--threads", opt.threads, "Workers for first-row distance evaluations")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--max-solver-iterations", opt.max_solver_iterations, "Iteration cap of the projection solver")
      ->check(CLI::PositiveNumber);
  app.add_option("--delimiter", opt.delimiter, "CSV field delimiter");
  app.add_flag("--header", opt.header, "Skip the first CSV row");

  auto* bench = app.add_subcommand("bench", "Run the scaling benchmark sweep");
  bench->add_option("--spec", opt.bench_spec, "Benchmark spec (JSON)")->required();
  bench->add_option("--output", opt.bench_output, "Write the CSV table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, err, err);
    return kExitInputError;
  }

  try {
    if (bench->parsed()) return run_bench(opt, out);
    if (opt.input.empty()) {
      err << "error: --input is required\n" << app.help();
      return kExitInputError;
    }
    return run_hull(opt, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (residual gap " << e.residual_gap() << ")\n";
    return kExitNoConvergence;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace achull::cli
