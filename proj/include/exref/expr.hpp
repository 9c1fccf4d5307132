// Program expressions with explicit definedness.
//
// An expression is either defined in a state, in which case it has a value,
// or undefined (division by zero, overflow of the machine range, index out of
// bounds, ...). Evaluation never produces a placeholder for undefined values:
// evaluate() returns an empty optional instead.

#ifndef EXREF_EXPR_HPP
#define EXREF_EXPR_HPP

#include "exref/box.hpp"
#include "exref/state.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace exref {

/// The machine integer range. Every arithmetic node must stay inside it.
struct MachineParams {
  std::int64_t min = -2;
  std::int64_t max = 2;

  bool fits(std::int64_t v) const { return v >= min && v <= max; }
  friend bool operator==(const MachineParams&, const MachineParams&) = default;
};

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class UnOp : std::uint8_t { Neg, Not };

enum class BinOp : std::uint8_t {
  Add,  // integer addition or bag union
  Sub,
  Mul,
  Div,  // truncating
  Mod,  // sign follows the dividend
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Implies,
  CondAnd,
  CondOr,
};

const char* to_string(BinOp op);

struct Expr;
using ExprBox = Box<Expr>;

struct IntLit {
  std::int64_t value;
  friend bool operator==(const IntLit&, const IntLit&) = default;
};
struct BoolLit {
  bool value;
  friend bool operator==(const BoolLit&, const BoolLit&) = default;
};
/// `primed` refers to the target space of a relation.
struct VarRef {
  std::string name;
  bool primed = false;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};
struct Unary {
  UnOp op;
  ExprBox operand;
  friend bool operator==(const Unary&, const Unary&) = default;
};
struct Binary {
  BinOp op;
  ExprBox lhs;
  ExprBox rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};
struct Index {
  ExprBox array;
  ExprBox index;
  friend bool operator==(const Index&, const Index&) = default;
};
/// The array `array` with cell `index` replaced by `value`.
struct ArrayWrite {
  ExprBox array;
  ExprBox index;
  ExprBox value;
  friend bool operator==(const ArrayWrite&, const ArrayWrite&) = default;
};
/// `length` copies of `value`.
struct ArrayFill {
  std::size_t length;
  ExprBox value;
  friend bool operator==(const ArrayFill&, const ArrayFill&) = default;
};
struct Len {
  ExprBox array;
  friend bool operator==(const Len&, const Len&) = default;
};
struct BagEmpty {
  friend bool operator==(const BagEmpty&, const BagEmpty&) = default;
};
struct BagSingle {
  ExprBox element;
  friend bool operator==(const BagSingle&, const BagSingle&) = default;
};
/// The bag of the prefix array[0..length-1].
struct BagOf {
  ExprBox array;
  ExprBox length;
  friend bool operator==(const BagOf&, const BagOf&) = default;
};
struct BagSum {
  ExprBox bag;
  friend bool operator==(const BagSum&, const BagSum&) = default;
};
struct SetLit {
  std::vector<Expr> elements;
  friend bool operator==(const SetLit&, const SetLit&);
};
struct SetRange {
  ExprBox lo;
  ExprBox hi;
  friend bool operator==(const SetRange&, const SetRange&) = default;
};

struct Expr {
  using Node = std::variant<IntLit, BoolLit, VarRef, Unary, Binary, Index, ArrayWrite, ArrayFill, Len, BagEmpty,
                            BagSingle, BagOf, BagSum, SetLit, SetRange>;
  Node node;

  friend bool operator==(const Expr&, const Expr&) = default;
};

inline bool operator==(const SetLit& a, const SetLit& b) { return a.elements == b.elements; }

namespace ex {
Expr lit(std::int64_t v);
Expr lit(bool v);
inline Expr lit(int v) { return lit(static_cast<std::int64_t>(v)); }
Expr var(std::string name, bool primed = false);
Expr neg(Expr e);
Expr not_(Expr e);
Expr bin(BinOp op, Expr a, Expr b);
Expr index(Expr array, Expr i);
Expr write(Expr array, Expr i, Expr v);
Expr fill(std::size_t length, Expr v);
Expr len(Expr array);
Expr bag_empty();
Expr bag_single(Expr e);
Expr bagof(Expr array, Expr length);
Expr bag_sum(Expr bag);
Expr set_of(std::vector<Expr> elements);
Expr set_range(Expr lo, Expr hi);
}  // namespace ex

struct ExprType {
  enum class Kind : std::uint8_t { Int, Bool, Array, Bag, Set };
  Kind kind = Kind::Int;
  /// Array length or bag capacity; zero otherwise.
  std::size_t extent = 0;

  friend bool operator==(const ExprType&, const ExprType&) = default;
};

std::string to_string(const ExprType& t);
ExprType type_of_domain(const Domain& d);

/// Variables visible to an expression. Unprimed names resolve in `space`,
/// primed names in `primed` (relations only).
struct Scope {
  const StateSpace* space = nullptr;
  const StateSpace* primed = nullptr;
};

/// Throws TypeError for ill-typed trees and unknown variables.
ExprType type_of(const Expr& e, const Scope& scope);
void require_type(const Expr& e, const Scope& scope, ExprType::Kind kind, const std::string& what);

/// A state (and, for relations, a primed state) to evaluate in.
struct Bindings {
  const StateSpace* space = nullptr;
  std::size_t state = 0;
  const StateSpace* primed = nullptr;
  std::size_t primed_state = 0;
};

/// Empty when the expression is undefined in the given state.
std::optional<Value> evaluate(const Expr& e, const Bindings& b, const MachineParams& m);

bool eval_def(const Expr& e, const StateSpace& space, std::size_t state, const MachineParams& m);
/// Precondition: eval_def holds. Throws std::logic_error otherwise.
Value eval_val(const Expr& e, const StateSpace& space, std::size_t state, const MachineParams& m);
Predicate def_pred(const Expr& e, const SpaceRef& space, const MachineParams& m);

/// The truth set of a boolean expression that must be defined in every state.
/// Throws TypeError naming `what` if it is undefined somewhere.
Predicate total_pred(const Expr& e, const SpaceRef& space, const MachineParams& m, const std::string& what);

}  // namespace exref

#endif  // EXREF_EXPR_HPP
