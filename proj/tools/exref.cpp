// exref: check goals in .prf modules.

#include "CLI11.hpp"
#include "exref/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace exref;

constexpr int kUsageError = 2;

std::optional<std::string> slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<SourceModule> load(const std::string& path) {
  auto text = slurp(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    return std::nullopt;
  }
  auto parsed = parse(*text);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) std::cerr << path << ":" << format_diagnostic(d) << "\n";
    return std::nullopt;
  }
  return std::move(parsed.module);
}

std::vector<std::string> split_ids(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string id;
    while (std::getline(ss, id, ',')) {
      if (!id.empty()) out.push_back(id);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-exit refinement checker"};
  app.require_subcommand(1);

  std::string file;
  std::string strategy = "auto";
  std::string format = "text";
  std::vector<std::string> law_ids;
  RunOptions opts;
  bool no_timings = false;

  auto* check = app.add_subcommand("check", "Check every goal of a module");
  check->add_option("file", file, "Source module (- for stdin)");
  check->add_option("--strategy", strategy, "auto|exhaustive|coatomic|sampled")
      ->check(CLI::IsMember({"auto", "exhaustive", "coatomic", "sampled"}));
  check->add_option("--max-states", opts.check.max_states, "State cap for exhaustive enumeration");
  check->add_option("--samples", opts.check.samples, "Sample count for the sampled strategy");
  check->add_option("--seed", opts.check.seed, "Random seed");
  check->add_option("--jobs", opts.check.jobs, "Parallel goals")->check(CLI::PositiveNumber);
  check->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  check->add_option("--laws", law_ids, "Extra law ids, comma separated");
  check->add_option("--law-trials", opts.law_trials, "Trials per law");
  check->add_flag("--no-timings", no_timings, "Report elapsed_ms as 0");

  std::string print_file;
  auto* print = app.add_subcommand("print", "Parse a module and print it back");
  print->add_option("file", print_file, "Source module (- for stdin)")->required();

  auto* laws = app.add_subcommand("laws", "List law ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (*laws) {
    for (const auto& info : law_registry()) {
      std::cout << info.id << (info.expect_refutation ? "  (expected refutation)  " : "  ") << info.summary
                << "\n";
    }
    return 0;
  }

  if (*print) {
    auto m = load(print_file);
    if (!m) return kUsageError;
    std::cout << print_module(*m);
    return 0;
  }

  opts.check.strategy = *parse_strategy(strategy);
  opts.laws = split_ids(law_ids);
  for (const auto& id : opts.laws) {
    if (!is_law(id)) {
      std::cerr << "unknown law '" << id << "'\n";
      return kUsageError;
    }
  }

  SourceModule module;
  if (!file.empty()) {
    auto m = load(file);
    if (!m) return kUsageError;
    module = std::move(*m);
  } else if (opts.laws.empty()) {
    std::cerr << "check: a file or --laws is required\n";
    return kUsageError;
  }

  auto elab = elaborate(module);
  if (!elab.env) {
    for (const auto& d : elab.diagnostics) std::cerr << file << ":" << format_diagnostic(d) << "\n";
    return kUsageError;
  }

  const auto report = run(*elab.env, opts);
  std::cout << emit_report(report, {format == "json" ? ReportFormat::Json : ReportFormat::Text, !no_timings});
  return exit_code(report);
}
