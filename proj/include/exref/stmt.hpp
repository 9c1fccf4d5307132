// Statements with one entry and two exits (normal and exceptional).
//
// The AST mixes two levels: forms written in the input language refer to
// expressions and relation names, while forms built programmatically (the law
// generator, data-refinement projection) carry concrete predicates and
// relations. Both are resolved when a statement is compiled to a Transformer.

#ifndef EXREF_STMT_HPP
#define EXREF_STMT_HPP

#include "exref/box.hpp"
#include "exref/expr.hpp"
#include "exref/state.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace exref {

/// `true` / `false`, resolved against whatever space the position requires.
enum class PredConst : std::uint8_t { True, False };

/// A state predicate operand: a constant, a boolean expression (must be
/// everywhere defined), or a concrete predicate.
using Cond = std::variant<PredConst, Expr, Predicate>;

/// id, the empty relation and the universal relation; typed by position.
enum class RelConst : std::uint8_t { Id, Empty, Full };

struct RelName {
  std::string name;
  friend bool operator==(const RelName&, const RelName&) = default;
};

using RelRef = std::variant<RelConst, RelName, Relation>;

struct Statement;
using StmtBox = Box<Statement>;

struct Abort {
  friend bool operator==(const Abort&, const Abort&) = default;
};
struct Stop {
  friend bool operator==(const Stop&, const Stop&) = default;
};
struct Skip {
  friend bool operator==(const Skip&, const Skip&) = default;
};
struct Raise {
  friend bool operator==(const Raise&, const Raise&) = default;
};
/// [u, v]: succeed if u, fail if v, demonic if both, block if neither.
struct Assume {
  Cond succeed;
  Cond fail;
  friend bool operator==(const Assume&, const Assume&) = default;
};
/// {u, v}: succeed if u, fail if v, angelic if both, abort if neither.
struct AssertAV {
  Cond succeed;
  Cond fail;
  friend bool operator==(const AssertAV&, const AssertAV&) = default;
};
struct DemUpd {
  RelRef normal;
  RelRef exceptional;
  friend bool operator==(const DemUpd&, const DemUpd&) = default;
};
struct AngUpd {
  RelRef normal;
  RelRef exceptional;
  friend bool operator==(const AngUpd&, const AngUpd&) = default;
};
struct Seq {
  StmtBox first;
  StmtBox second;
  friend bool operator==(const Seq&, const Seq&) = default;
};
/// S ;; T: continue with T only if S fails.
struct ExcSeq {
  StmtBox first;
  StmtBox second;
  friend bool operator==(const ExcSeq&, const ExcSeq&) = default;
};
struct DemChoice {
  StmtBox left;
  StmtBox right;
  friend bool operator==(const DemChoice&, const DemChoice&) = default;
};
struct AngChoice {
  StmtBox left;
  StmtBox right;
  friend bool operator==(const AngChoice&, const AngChoice&) = default;
};
/// Left-hand side of an assignment: `x` or `a[i]`.
struct Target {
  std::string var;
  std::optional<Expr> index;
  friend bool operator==(const Target&, const Target&) = default;
};
/// Simultaneous assignment x1, ..., xn := E1, ..., En.
struct Assign {
  std::vector<Target> targets;
  std::vector<Expr> values;
  friend bool operator==(const Assign&, const Assign&) = default;
};
struct NondetAssign {
  std::string var;
  Expr set;
  friend bool operator==(const NondetAssign&, const NondetAssign&) = default;
};
struct If {
  Expr guard;
  StmtBox then_branch;
  StmtBox else_branch;
  friend bool operator==(const If&, const If&) = default;
};
struct While {
  Expr guard;
  StmtBox body;
  friend bool operator==(const While&, const While&) = default;
};
/// Block with a local variable; `init` empty means arbitrary (demonic).
struct Local {
  std::string var;
  Domain domain;
  std::optional<Expr> init;
  StmtBox body;
  friend bool operator==(const Local&, const Local&) = default;
};

// Sugar, removed by desugar().
struct TryCatch {
  StmtBox body;
  StmtBox handler;
  friend bool operator==(const TryCatch&, const TryCatch&) = default;
};
struct TryCatchFinally {
  StmtBox body;
  StmtBox handler;
  StmtBox finalizer;
  friend bool operator==(const TryCatchFinally&, const TryCatchFinally&) = default;
};
struct AssumeOne {
  Cond cond;
  friend bool operator==(const AssumeOne&, const AssumeOne&) = default;
};
struct AssertOne {
  Cond cond;
  friend bool operator==(const AssertOne&, const AssertOne&) = default;
};
struct DemUpdOne {
  RelRef rel;
  friend bool operator==(const DemUpdOne&, const DemUpdOne&) = default;
};
struct AngUpdOne {
  RelRef rel;
  friend bool operator==(const AngUpdOne&, const AngUpdOne&) = default;
};
/// x := new int[length]; may fail without changing the state.
struct AllocArray {
  std::string var;
  std::size_t length;
  friend bool operator==(const AllocArray&, const AllocArray&) = default;
};

struct Statement {
  using Node = std::variant<Abort, Stop, Skip, Raise, Assume, AssertAV, DemUpd, AngUpd, Seq, ExcSeq, DemChoice,
                            AngChoice, Assign, NondetAssign, If, While, Local, TryCatch, TryCatchFinally, AssumeOne,
                            AssertOne, DemUpdOne, AngUpdOne, AllocArray>;
  Node node;

  friend bool operator==(const Statement&, const Statement&) = default;
};

bool is_sugar(const Statement& s);

/// Rewrites every sugar constructor into core constructors (recursively).
Statement desugar(const Statement& s);

namespace st {
Statement abort_();
Statement stop();
Statement skip();
Statement raise_();
Statement assume(Cond u, Cond v);
Statement assert_(Cond u, Cond v);
Statement dem_upd(RelRef q, RelRef r);
Statement ang_upd(RelRef q, RelRef r);
Statement seq(Statement a, Statement b);
Statement exc_seq(Statement a, Statement b);
Statement meet(Statement a, Statement b);
Statement join(Statement a, Statement b);
Statement assign(std::string var, Expr e);
Statement nondet(std::string var, Expr set);
Statement if_(Expr guard, Statement then_branch, Statement else_branch);
Statement while_(Expr guard, Statement body);
Statement local(std::string var, Domain domain, std::optional<Expr> init, Statement body);
Statement try_catch(Statement body, Statement handler);
Statement try_catch_finally(Statement body, Statement handler, Statement finalizer);
Statement alloc(std::string var, std::size_t length);
}  // namespace st

}  // namespace exref

#endif  // EXREF_STMT_HPP
