// Name resolution, goal execution and report rendering for source modules.

#ifndef EXREF_RUNNER_HPP
#define EXREF_RUNNER_HPP

#include "exref/laws.hpp"
#include "exref/source.hpp"
#include "exref/transformer.hpp"
#include "exref/verify.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace exref {

struct ResolvedGoal {
  std::string name;
  GoalKind kind;
  std::optional<Status> expect;
  Loc loc;
  // Correctness goals.
  std::string program;
  std::optional<Predicate> pre, post, exc;
  // Refinement goals.
  std::string left, right;
  RefineKind data_kind = RefineKind::Total;
  std::string via;
  std::vector<std::string> laws;
};

/// A module with every name resolved and every program compiled.
struct Environment {
  MachineParams machine;
  std::map<std::string, SpaceRef> spaces;
  std::map<std::string, Relation> relations;
  std::map<std::string, Transformer> programs;
  std::vector<ResolvedGoal> goals;
};

struct Elaboration {
  std::optional<Environment> env;
  std::vector<Diagnostic> diagnostics;
};

/// Resolves names, typechecks programs and goals, and evaluates relations and
/// goal predicates (which must be defined in every state).
Elaboration elaborate(const SourceModule& m);

struct RunOptions {
  CheckOptions check;
  std::size_t law_trials = 200;
  /// Extra law goals appended after the module's own goals.
  std::vector<std::string> laws;
};

struct GoalResult {
  std::string name;
  std::string kind;
  Status status = Status::Unknown;
  Status expected = Status::Holds;
  std::string strategy;
  double elapsed_ms = 0;
  std::optional<Counterexample> counterexample;
  /// Why the goal could not be checked; status is UNKNOWN then.
  std::string error;
  bool as_expected() const { return error.empty() && status == expected; }
};

struct RunReport {
  std::vector<GoalResult> goals;
};

/// Executes goals in declaration order. Per-goal errors are recorded.
RunReport run(const Environment& env, const RunOptions& opts);

enum class ReportFormat : std::uint8_t { Text, Json };

struct EmitOptions {
  ReportFormat format = ReportFormat::Json;
  /// Report elapsed_ms as 0 so output is byte-stable.
  bool timings = true;
};

std::string emit_report(const RunReport& report, const EmitOptions& opts = {});

/// 0 if every goal met its expectation, 1 otherwise.
int exit_code(const RunReport& report);

}  // namespace exref

#endif  // EXREF_RUNNER_HPP
