#include "exref/expr.hpp"

#include <algorithm>

namespace exref {

const char* to_string(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "div";
    case BinOp::Mod: return "mod";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
    case BinOp::Implies: return "=>";
    case BinOp::CondAnd: return "cand";
    case BinOp::CondOr: return "cor";
  }
  return "?";
}

namespace ex {
Expr lit(std::int64_t v) { return {IntLit{v}}; }
Expr lit(bool v) { return {BoolLit{v}}; }
Expr var(std::string name, bool primed) { return {VarRef{std::move(name), primed}}; }
Expr neg(Expr e) { return {Unary{UnOp::Neg, std::move(e)}}; }
Expr not_(Expr e) { return {Unary{UnOp::Not, std::move(e)}}; }
Expr bin(BinOp op, Expr a, Expr b) { return {Binary{op, std::move(a), std::move(b)}}; }
Expr index(Expr array, Expr i) { return {Index{std::move(array), std::move(i)}}; }
Expr write(Expr array, Expr i, Expr v) { return {ArrayWrite{std::move(array), std::move(i), std::move(v)}}; }
Expr fill(std::size_t length, Expr v) { return {ArrayFill{length, std::move(v)}}; }
Expr len(Expr array) { return {Len{std::move(array)}}; }
Expr bag_empty() { return {BagEmpty{}}; }
Expr bag_single(Expr e) { return {BagSingle{std::move(e)}}; }
Expr bagof(Expr array, Expr length) { return {BagOf{std::move(array), std::move(length)}}; }
Expr bag_sum(Expr bag) { return {BagSum{std::move(bag)}}; }
Expr set_of(std::vector<Expr> elements) { return {SetLit{std::move(elements)}}; }
Expr set_range(Expr lo, Expr hi) { return {SetRange{std::move(lo), std::move(hi)}}; }
}  // namespace ex

std::string to_string(const ExprType& t) {
  switch (t.kind) {
    case ExprType::Kind::Int: return "int";
    case ExprType::Kind::Bool: return "bool";
    case ExprType::Kind::Array: return "array[" + std::to_string(t.extent) + "]";
    case ExprType::Kind::Bag: return "bag[" + std::to_string(t.extent) + "]";
    case ExprType::Kind::Set: return "set";
  }
  return "?";
}

ExprType type_of_domain(const Domain& d) {
  switch (d.kind()) {
    case Domain::Kind::IntRange: return {ExprType::Kind::Int, 0};
    case Domain::Kind::Bool: return {ExprType::Kind::Bool, 0};
    case Domain::Kind::ArrayFixed: return {ExprType::Kind::Array, d.length()};
    case Domain::Kind::BagCapped: return {ExprType::Kind::Bag, d.cap()};
  }
  return {};
}

namespace {

using K = ExprType::Kind;

constexpr ExprType kInt{K::Int, 0};
constexpr ExprType kBool{K::Bool, 0};

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

ExprType expect(const Expr& e, const Scope& scope, K kind, const char* context) {
  auto t = type_of(e, scope);
  if (t.kind != kind) {
    throw TypeError(std::string(context) + ": expected " + to_string(ExprType{kind, 0}) + ", found " + to_string(t));
  }
  return t;
}

}  // namespace

ExprType type_of(const Expr& e, const Scope& scope) {
  return std::visit(
      Overloaded{
          [](const IntLit&) { return kInt; },
          [](const BoolLit&) { return kBool; },
          [&](const VarRef& v) -> ExprType {
            const StateSpace* space = v.primed ? scope.primed : scope.space;
            const std::string shown = v.name + (v.primed ? "'" : "");
            if (!space) throw TypeError("primed variable " + shown + " outside a relation");
            auto i = space->find(v.name);
            if (!i) throw TypeError("unknown variable " + shown);
            return type_of_domain(space->vars()[*i].domain);
          },
          [&](const Unary& u) {
            if (u.op == UnOp::Neg) return expect(*u.operand, scope, K::Int, "unary minus");
            return expect(*u.operand, scope, K::Bool, "not");
          },
          [&](const Binary& b) -> ExprType {
            const char* name = to_string(b.op);
            switch (b.op) {
              case BinOp::Add: {
                auto l = type_of(*b.lhs, scope);
                if (l.kind == K::Bag) {
                  auto r = expect(*b.rhs, scope, K::Bag, "bag union");
                  return {K::Bag, l.extent + r.extent};
                }
                if (l.kind != K::Int) throw TypeError("+: expected int or bag operands, found " + to_string(l));
                expect(*b.rhs, scope, K::Int, name);
                return kInt;
              }
              case BinOp::Sub:
              case BinOp::Mul:
              case BinOp::Div:
              case BinOp::Mod:
                expect(*b.lhs, scope, K::Int, name);
                expect(*b.rhs, scope, K::Int, name);
                return kInt;
              case BinOp::Eq:
              case BinOp::Ne: {
                auto l = type_of(*b.lhs, scope);
                auto r = type_of(*b.rhs, scope);
                const bool same = l.kind == r.kind && (l.kind != K::Array || l.extent == r.extent);
                if (!same || l.kind == K::Set) {
                  throw TypeError(std::string(name) + ": cannot compare " + to_string(l) + " with " + to_string(r));
                }
                return kBool;
              }
              case BinOp::Lt:
              case BinOp::Le:
              case BinOp::Gt:
              case BinOp::Ge:
                expect(*b.lhs, scope, K::Int, name);
                expect(*b.rhs, scope, K::Int, name);
                return kBool;
              case BinOp::And:
              case BinOp::Or:
              case BinOp::Implies:
              case BinOp::CondAnd:
              case BinOp::CondOr:
                expect(*b.lhs, scope, K::Bool, name);
                expect(*b.rhs, scope, K::Bool, name);
                return kBool;
            }
            return kInt;
          },
          [&](const Index& x) {
            expect(*x.array, scope, K::Array, "index");
            expect(*x.index, scope, K::Int, "index");
            return kInt;
          },
          [&](const ArrayWrite& w) {
            auto t = expect(*w.array, scope, K::Array, "array update");
            expect(*w.index, scope, K::Int, "array update");
            expect(*w.value, scope, K::Int, "array update");
            return t;
          },
          [&](const ArrayFill& f) {
            expect(*f.value, scope, K::Int, "fill");
            return ExprType{K::Array, f.length};
          },
          [&](const Len& l) {
            expect(*l.array, scope, K::Array, "len");
            return kInt;
          },
          [](const BagEmpty&) { return ExprType{K::Bag, 0}; },
          [&](const BagSingle& s) {
            expect(*s.element, scope, K::Int, "bag literal");
            return ExprType{K::Bag, 1};
          },
          [&](const BagOf& b) {
            auto t = expect(*b.array, scope, K::Array, "bagof");
            expect(*b.length, scope, K::Int, "bagof");
            return ExprType{K::Bag, t.extent};
          },
          [&](const BagSum& s) {
            expect(*s.bag, scope, K::Bag, "sum");
            return kInt;
          },
          [&](const SetLit& s) {
            for (const auto& e : s.elements) expect(e, scope, K::Int, "set literal");
            return ExprType{K::Set, 0};
          },
          [&](const SetRange& r) {
            expect(*r.lo, scope, K::Int, "set range");
            expect(*r.hi, scope, K::Int, "set range");
            return ExprType{K::Set, 0};
          },
      },
      e.node);
}

void require_type(const Expr& e, const Scope& scope, ExprType::Kind kind, const std::string& what) {
  auto t = type_of(e, scope);
  if (t.kind != kind) throw TypeError(what + ": expected " + to_string(ExprType{kind, 0}) + ", found " + to_string(t));
}

namespace {

using Result = std::optional<Value>;

Result int_result(std::int64_t v, const MachineParams& m) {
  if (!m.fits(v)) return std::nullopt;
  return Value::integer(v);
}

class Evaluator {
 public:
  Evaluator(const Bindings& b, const MachineParams& m) : b_(b), m_(m) {}

  Result operator()(const Expr& e) const { return std::visit(*this, e.node); }

  Result operator()(const IntLit& l) const { return int_result(l.value, m_); }
  Result operator()(const BoolLit& l) const { return Value::boolean(l.value); }

  Result operator()(const VarRef& v) const {
    const StateSpace* space = v.primed ? b_.primed : b_.space;
    const std::size_t state = v.primed ? b_.primed_state : b_.state;
    auto i = space ? space->find(v.name) : std::nullopt;
    if (!i) throw TypeError("unknown variable " + v.name);
    return space->value(state, *i);
  }

  Result operator()(const Unary& u) const {
    auto x = (*this)(*u.operand);
    if (!x) return x;
    if (u.op == UnOp::Neg) return int_result(-x->scalar, m_);
    return Value::boolean(!x->as_bool());
  }

  Result operator()(const Binary& b) const {
    // Short-circuit forms first: their definedness depends on the left value.
    if (b.op == BinOp::CondOr || b.op == BinOp::CondAnd) {
      auto l = (*this)(*b.lhs);
      if (!l) return l;
      if (l->as_bool() == (b.op == BinOp::CondOr)) return l;
      return (*this)(*b.rhs);
    }
    auto l = (*this)(*b.lhs);
    if (!l) return l;
    auto r = (*this)(*b.rhs);
    if (!r) return r;
    const std::int64_t x = l->scalar;
    const std::int64_t y = r->scalar;
    switch (b.op) {
      case BinOp::Add:
        if (l->kind == Value::Kind::Bag) {
          auto items = l->items;
          items.insert(items.end(), r->items.begin(), r->items.end());
          return Value::bag(std::move(items));
        }
        return int_result(x + y, m_);
      case BinOp::Sub: return int_result(x - y, m_);
      case BinOp::Mul: return int_result(x * y, m_);
      case BinOp::Div:
        if (y == 0) return std::nullopt;
        return int_result(x / y, m_);
      case BinOp::Mod:
        if (y == 0) return std::nullopt;
        return int_result(x % y, m_);
      case BinOp::Eq: return Value::boolean(*l == *r);
      case BinOp::Ne: return Value::boolean(*l != *r);
      case BinOp::Lt: return Value::boolean(x < y);
      case BinOp::Le: return Value::boolean(x <= y);
      case BinOp::Gt: return Value::boolean(x > y);
      case BinOp::Ge: return Value::boolean(x >= y);
      case BinOp::And: return Value::boolean(l->as_bool() && r->as_bool());
      case BinOp::Or: return Value::boolean(l->as_bool() || r->as_bool());
      case BinOp::Implies: return Value::boolean(!l->as_bool() || r->as_bool());
      case BinOp::CondAnd:
      case BinOp::CondOr: break;
    }
    return std::nullopt;
  }

  Result operator()(const Index& x) const {
    auto a = (*this)(*x.array);
    if (!a) return a;
    auto i = (*this)(*x.index);
    if (!i) return i;
    if (i->scalar < 0 || static_cast<std::size_t>(i->scalar) >= a->items.size()) return std::nullopt;
    return int_result(a->items[static_cast<std::size_t>(i->scalar)], m_);
  }

  Result operator()(const ArrayWrite& w) const {
    auto a = (*this)(*w.array);
    if (!a) return a;
    auto i = (*this)(*w.index);
    if (!i) return i;
    auto v = (*this)(*w.value);
    if (!v) return v;
    if (i->scalar < 0 || static_cast<std::size_t>(i->scalar) >= a->items.size()) return std::nullopt;
    a->items[static_cast<std::size_t>(i->scalar)] = v->scalar;
    return a;
  }

  Result operator()(const ArrayFill& f) const {
    auto v = (*this)(*f.value);
    if (!v) return v;
    return Value::array(std::vector<std::int64_t>(f.length, v->scalar));
  }

  Result operator()(const Len& l) const {
    auto a = (*this)(*l.array);
    if (!a) return a;
    return int_result(static_cast<std::int64_t>(a->items.size()), m_);
  }

  Result operator()(const BagEmpty&) const { return Value::bag({}); }

  Result operator()(const BagSingle& s) const {
    auto v = (*this)(*s.element);
    if (!v) return v;
    return Value::bag({v->scalar});
  }

  Result operator()(const BagOf& b) const {
    auto a = (*this)(*b.array);
    if (!a) return a;
    auto n = (*this)(*b.length);
    if (!n) return n;
    if (n->scalar < 0 || static_cast<std::size_t>(n->scalar) > a->items.size()) return std::nullopt;
    return Value::bag({a->items.begin(), a->items.begin() + n->scalar});
  }

  Result operator()(const BagSum& s) const {
    auto b = (*this)(*s.bag);
    if (!b) return b;
    std::int64_t total = 0;
    for (auto x : b->items) total += x;
    return int_result(total, m_);
  }

  Result operator()(const SetLit& s) const {
    std::vector<std::int64_t> items;
    for (const auto& e : s.elements) {
      auto v = (*this)(e);
      if (!v) return v;
      items.push_back(v->scalar);
    }
    return Value::set(std::move(items));
  }

  Result operator()(const SetRange& r) const {
    auto lo = (*this)(*r.lo);
    if (!lo) return lo;
    auto hi = (*this)(*r.hi);
    if (!hi) return hi;
    std::vector<std::int64_t> items;
    for (std::int64_t v = lo->scalar; v <= hi->scalar; ++v) items.push_back(v);
    return Value::set(std::move(items));
  }

 private:
  const Bindings& b_;
  const MachineParams& m_;
};

}  // namespace

std::optional<Value> evaluate(const Expr& e, const Bindings& b, const MachineParams& m) {
  return Evaluator(b, m)(e);
}

bool eval_def(const Expr& e, const StateSpace& space, std::size_t state, const MachineParams& m) {
  return evaluate(e, Bindings{&space, state}, m).has_value();
}

Value eval_val(const Expr& e, const StateSpace& space, std::size_t state, const MachineParams& m) {
  auto v = evaluate(e, Bindings{&space, state}, m);
  if (!v) throw std::logic_error("eval_val called on an undefined expression");
  return *v;
}

Predicate def_pred(const Expr& e, const SpaceRef& space, const MachineParams& m) {
  type_of(e, Scope{space.get()});
  return Predicate::from_function(space, [&](std::size_t s) { return eval_def(e, *space, s, m); });
}

Predicate total_pred(const Expr& e, const SpaceRef& space, const MachineParams& m, const std::string& what) {
  require_type(e, Scope{space.get()}, ExprType::Kind::Bool, what);
  Predicate p(space);
  for (std::size_t s = 0; s < space->size(); ++s) {
    auto v = evaluate(e, Bindings{space.get(), s}, m);
    if (!v) throw TypeError(what + " must be everywhere defined (undefined at " + format_state(*space, s) + ")");
    if (v->as_bool()) p.set(s);
  }
  return p;
}

}  // namespace exref
