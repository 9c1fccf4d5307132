// The input language: modules of machine, space, relation, program, predicate
// and goal declarations.

#ifndef EXREF_SOURCE_HPP
#define EXREF_SOURCE_HPP

#include "exref/expr.hpp"
#include "exref/stmt.hpp"
#include "exref/verify.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace exref {

/// 1-based line and column. Locations do not take part in AST equality.
struct Loc {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const Loc&, const Loc&) { return true; }
};

struct Diagnostic {
  Loc loc;
  std::string message;
};

/// "3:14: error: message".
std::string format_diagnostic(const Diagnostic& d);

struct MachineDecl {
  MachineParams params;
  Loc loc;
  friend bool operator==(const MachineDecl&, const MachineDecl&) = default;
};

struct SpaceDecl {
  std::string name;
  std::vector<VarDecl> vars;
  Loc loc;
  friend bool operator==(const SpaceDecl&, const SpaceDecl&) = default;
};

/// Unprimed variables range over `from`, primed ones over `to`.
struct RelationDecl {
  std::string name;
  std::string from;
  std::string to;
  Expr link;
  Loc loc;
  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

struct ProgramDecl {
  std::string name;
  std::string over;
  /// Declared normal and exceptional exit spaces.
  std::optional<std::pair<std::string, std::string>> exits;
  Statement body;
  Loc loc;
  friend bool operator==(const ProgramDecl&, const ProgramDecl&) = default;
};

struct PredDecl {
  std::string name;
  std::string over;
  Expr body;
  Loc loc;
  friend bool operator==(const PredDecl&, const PredDecl&) = default;
};

enum class GoalKind : std::uint8_t { TotalCorrect, PartialCorrect, TotalRefine, PartialRefine, DataRefine, Laws };
const char* to_string(GoalKind k);

struct GoalDecl {
  std::optional<std::string> label;
  GoalKind kind = GoalKind::TotalRefine;
  /// Declared outcome; HOLDS when absent.
  std::optional<Status> expect;
  /// Correctness goals: program, precondition, postconditions.
  std::string program;
  std::optional<Expr> pre;
  std::optional<Expr> post;
  std::optional<Expr> exc;
  /// Refinement goals: left ⊑ right.
  std::string left;
  std::string right;
  RefineKind data_kind = RefineKind::Total;
  std::string via;
  std::vector<std::string> laws;
  Loc loc;
  friend bool operator==(const GoalDecl&, const GoalDecl&) = default;
};

using Decl = std::variant<MachineDecl, SpaceDecl, RelationDecl, ProgramDecl, PredDecl, GoalDecl>;

struct SourceModule {
  std::vector<Decl> decls;
  friend bool operator==(const SourceModule&, const SourceModule&) = default;
};

struct ParseResult {
  SourceModule module;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

/// Syntax only; names are resolved by elaborate().
ParseResult parse(std::string_view source);

/// Source text that parses back to an equal module.
std::string print_module(const SourceModule& m);
std::string print_statement(const Statement& s);
std::string print_expr(const Expr& e);
std::string print_domain(const Domain& d);

}  // namespace exref

#endif  // EXREF_SOURCE_HPP
