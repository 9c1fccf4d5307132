#include "doctest.h"
#include "support.hpp"

using namespace exref;
using namespace exref::test;
using namespace exref::ex;

namespace {

std::size_t at(const SpaceRef& s, State st) { return s->index(st); }
State ints(std::initializer_list<std::int64_t> xs) {
  State st;
  for (auto x : xs) st.push_back(Value::integer(x));
  return st;
}

Expr random_int_expr(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    switch (rng() % 3) {
      case 0: return var("x");
      case 1: return var("y");
      default: return lit(static_cast<std::int64_t>(rng() % 3) - 1);
    }
  }
  static const BinOp ops[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod};
  if (rng() % 6 == 0) return neg(random_int_expr(rng, depth - 1));
  return bin(ops[rng() % 5], random_int_expr(rng, depth - 1), random_int_expr(rng, depth - 1));
}

Expr random_bool_expr(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    static const BinOp cmps[] = {BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge};
    return bin(cmps[rng() % 6], random_int_expr(rng, 1), random_int_expr(rng, 1));
  }
  static const BinOp ops[] = {BinOp::And, BinOp::Or, BinOp::CondAnd, BinOp::CondOr, BinOp::Implies};
  if (rng() % 5 == 0) return not_(random_bool_expr(rng, depth - 1));
  return bin(ops[rng() % 5], random_bool_expr(rng, depth - 1), random_bool_expr(rng, depth - 1));
}

}  // namespace

TEST_CASE("division by zero is undefined") {
  auto s = int_space({{"x", {0, 1}}, {"y", {0, 1}}});
  MachineParams m;
  auto e = bin(BinOp::Div, var("x"), var("y"));
  CHECK_FALSE(eval_def(e, *s, at(s, ints({1, 0})), m));
  CHECK(eval_def(e, *s, at(s, ints({1, 1})), m));
  CHECK(eval_val(e, *s, at(s, ints({1, 1})), m) == Value::integer(1));
  CHECK_THROWS_AS(eval_val(e, *s, at(s, ints({1, 0})), m), std::logic_error);
  CHECK(def_pred(e, s, m) == pred(s, {1, 3}));
}

TEST_CASE("overflow of the machine range is undefined") {
  auto s = int_space({{"x", {-2, 2}}, {"y", {-2, 2}}});
  MachineParams m{-2, 2};
  CHECK_FALSE(eval_def(bin(BinOp::Add, var("x"), var("y")), *s, at(s, ints({2, 2})), m));
  CHECK(eval_def(bin(BinOp::Add, var("x"), var("y")), *s, at(s, ints({2, -2})), m));
  // Intermediate results count even when the final value fits.
  CHECK_FALSE(eval_def(bin(BinOp::Sub, bin(BinOp::Add, var("x"), var("y")), lit(2)), *s, at(s, ints({2, 1})), m));
  CHECK_FALSE(eval_def(lit(3), *s, 0, m));
  CHECK_FALSE(eval_def(neg(var("x")), *s, at(s, ints({-2, 0})), MachineParams{-2, 1}));
}

TEST_CASE("div and mod truncate toward zero") {
  auto s = StateSpace::make({});
  MachineParams m{-10, 10};
  auto v = [&](BinOp op, int a, int b) { return eval_val(bin(op, lit(a), lit(b)), *s, 0, m).as_int(); };
  CHECK(v(BinOp::Div, 7, 2) == 3);
  CHECK(v(BinOp::Div, -7, 2) == -3);
  CHECK(v(BinOp::Mod, -7, 2) == -1);
  CHECK(v(BinOp::Mod, 7, -2) == 1);
  CHECK_FALSE(eval_def(bin(BinOp::Mod, lit(1), lit(0)), *s, 0, m));
}

TEST_CASE("conditional or short-circuits definedness") {
  auto s = int_space({{"x", {0, 1}}, {"y", {0, 1}}});
  MachineParams m;
  const auto st = at(s, ints({1, 0}));
  auto div_zero = bin(BinOp::Eq, bin(BinOp::Div, var("x"), var("y")), lit(0));
  auto y_zero = bin(BinOp::Eq, var("y"), lit(0));
  CHECK_FALSE(eval_def(bin(BinOp::CondOr, div_zero, y_zero), *s, st, m));
  CHECK(eval_def(bin(BinOp::CondOr, y_zero, div_zero), *s, st, m));
  CHECK(eval_val(bin(BinOp::CondOr, y_zero, div_zero), *s, st, m).as_bool());
  CHECK_FALSE(eval_def(bin(BinOp::Or, y_zero, div_zero), *s, st, m));
}

TEST_CASE("conditional connectives follow their def/val equations") {
  auto s = int_space({{"x", {-1, 1}}, {"y", {-1, 1}}});
  MachineParams m{-1, 1};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto b1 = random_bool_expr(rng, 2);
    auto b2 = random_bool_expr(rng, 2);
    for (std::size_t st = 0; st < s->size(); ++st) {
      auto v1 = evaluate(b1, {s.get(), st}, m);
      auto v2 = evaluate(b2, {s.get(), st}, m);
      const bool def1 = v1.has_value(), def2 = v2.has_value();
      const bool val1 = def1 && v1->as_bool(), val2 = def2 && v2->as_bool();

      auto cor = evaluate(bin(BinOp::CondOr, b1, b2), {s.get(), st}, m);
      CHECK(cor.has_value() == (def1 && (val1 || def2)));
      if (cor) CHECK(cor->as_bool() == (val1 || (def1 && val2)));

      auto cand = evaluate(bin(BinOp::CondAnd, b1, b2), {s.get(), st}, m);
      CHECK(cand.has_value() == (def1 && (!val1 || def2)));
      if (cand) CHECK(cand->as_bool() == (val1 && val2));

      auto plain = evaluate(bin(BinOp::Or, b1, b2), {s.get(), st}, m);
      CHECK(plain.has_value() == (def1 && def2));
    }
  }
}

TEST_CASE("expressions without partial operators are everywhere defined when they fit") {
  auto s = int_space({{"x", {-1, 1}}, {"y", {-1, 1}}});
  MachineParams wide{-100, 100};
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto e = random_int_expr(rng, 3);
    bool partial = false;
    std::function<void(const Expr&)> scan = [&](const Expr& x) {
      if (const auto* b = std::get_if<Binary>(&x.node)) {
        if (b->op == BinOp::Div || b->op == BinOp::Mod) partial = true;
        scan(*b->lhs);
        scan(*b->rhs);
      } else if (const auto* u = std::get_if<Unary>(&x.node)) {
        scan(*u->operand);
      }
    };
    scan(e);
    if (partial) continue;
    ++checked;
    CHECK(def_pred(e, s, wide).is_true());
  }
  CHECK(checked > 50);
}

TEST_CASE("definedness of (x div y) + x") {
  auto s = int_space({{"x", {-1, 1}}, {"y", {-1, 1}}});
  MachineParams m{-1, 1};
  auto e = bin(BinOp::Add, bin(BinOp::Div, var("x"), var("y")), var("x"));
  // Brute-force oracle: y != 0 and x / y + x within [-1, 1].
  Predicate expected(s);
  for (std::int64_t x = -1; x <= 1; ++x) {
    for (std::int64_t y = -1; y <= 1; ++y) {
      if (y != 0 && x / y + x >= -1 && x / y + x <= 1) expected.set(s->index(ints({x, y})));
    }
  }
  CHECK(def_pred(e, s, m) == expected);
  CHECK(expected == pred(s, {0, 3, 5, 6}));
}

TEST_CASE("arrays and bags") {
  auto s = StateSpace::make({{"a", Domain::array_fixed(2, 0, 2)},
                             {"l", Domain::int_range(0, 2)},
                             {"b", Domain::bag_capped(0, 2, 2)}});
  MachineParams m{-2, 2};
  const auto st = s->index({Value::array({2, 0}), Value::integer(1), Value::bag({1, 1})});
  CHECK(eval_val(bagof(var("a"), lit(1)), *s, st, m) == Value::bag({2}));
  CHECK(eval_val(bagof(var("a"), var("l")), *s, st, m) == Value::bag({2}));
  CHECK(eval_val(bagof(var("a"), lit(2)), *s, st, m) == Value::bag({0, 2}));
  CHECK_FALSE(eval_def(bagof(var("a"), lit(-1)), *s, st, m));
  CHECK(eval_val(index(var("a"), lit(0)), *s, st, m) == Value::integer(2));
  CHECK_FALSE(eval_def(index(var("a"), lit(2)), *s, st, m));
  CHECK(eval_val(len(var("a")), *s, st, m) == Value::integer(2));
  CHECK(eval_val(write(var("a"), lit(1), lit(1)), *s, st, m) == Value::array({2, 1}));
  CHECK_FALSE(eval_def(write(var("a"), var("l"), lit(3)), *s, st, m));
  CHECK(eval_val(fill(2, lit(0)), *s, st, m) == Value::array({0, 0}));
  CHECK(eval_val(bag_sum(var("b")), *s, st, m) == Value::integer(2));
  CHECK(eval_val(bin(BinOp::Add, var("b"), bag_single(lit(0))), *s, st, m) == Value::bag({0, 1, 1}));
  CHECK(eval_val(bag_empty(), *s, st, m) == Value::bag({}));

  const auto big = s->index({Value::array({2, 2}), Value::integer(2), Value::bag({2, 2})});
  CHECK_FALSE(eval_def(bag_sum(var("b")), *s, big, m));
  CHECK(eval_val(bag_sum(var("b")), *s, big, MachineParams{-4, 4}) == Value::integer(4));
}

TEST_CASE("sets") {
  auto s = int_space({{"x", {0, 2}}});
  MachineParams m;
  CHECK(eval_val(set_of({var("x"), lit(1), lit(1)}), *s, 0, m) == Value::set({0, 1}));
  CHECK(eval_val(set_range(lit(0), var("x")), *s, 2, m) == Value::set({0, 1, 2}));
  CHECK(eval_val(set_range(lit(1), var("x")), *s, 0, m) == Value::set({}));
  CHECK_FALSE(eval_def(set_of({bin(BinOp::Div, lit(1), var("x"))}), *s, 0, m));
}

TEST_CASE("type checking rejects ill-typed trees") {
  auto s = StateSpace::make({{"x", Domain::int_range(0, 1)},
                             {"p", Domain::boolean()},
                             {"a", Domain::array_fixed(2, 0, 1)},
                             {"c", Domain::array_fixed(3, 0, 1)},
                             {"b", Domain::bag_capped(0, 1, 2)}});
  Scope scope{s.get()};
  CHECK(type_of(bin(BinOp::Add, var("x"), lit(1)), scope).kind == ExprType::Kind::Int);
  CHECK(type_of(bin(BinOp::Add, var("b"), var("b")), scope) == ExprType{ExprType::Kind::Bag, 4});
  CHECK(type_of(bagof(var("a"), lit(1)), scope) == ExprType{ExprType::Kind::Bag, 2});
  CHECK_THROWS_AS(type_of(bin(BinOp::Add, var("x"), var("p")), scope), TypeError);
  CHECK_THROWS_AS(type_of(bin(BinOp::And, var("x"), var("p")), scope), TypeError);
  CHECK_THROWS_AS(type_of(bin(BinOp::Eq, var("a"), var("c")), scope), TypeError);
  CHECK_THROWS_AS(type_of(index(var("x"), lit(0)), scope), TypeError);
  CHECK_THROWS_AS(type_of(var("nope"), scope), TypeError);
  CHECK_THROWS_AS(type_of(var("x", true), scope), TypeError);
  CHECK_THROWS_AS(type_of(bag_sum(var("a")), scope), TypeError);
}

TEST_CASE("primed variables resolve in the target space") {
  auto a = int_space({{"x", {0, 1}}});
  auto b = int_space({{"y", {0, 2}}});
  auto e = bin(BinOp::Eq, bin(BinOp::Add, var("x"), lit(1)), var("y", true));
  CHECK(type_of(e, Scope{a.get(), b.get()}).kind == ExprType::Kind::Bool);
  auto v = evaluate(e, Bindings{a.get(), 1, b.get(), 2}, MachineParams{});
  REQUIRE(v);
  CHECK(v->as_bool());
}

TEST_CASE("total_pred demands definedness everywhere") {
  auto s = int_space({{"x", {0, 1}}});
  MachineParams m;
  CHECK(total_pred(bin(BinOp::Eq, var("x"), lit(1)), s, m, "goal") == pred(s, {1}));
  CHECK_THROWS_AS(total_pred(bin(BinOp::Eq, bin(BinOp::Div, lit(1), var("x")), lit(1)), s, m, "goal"), TypeError);
  CHECK_THROWS_AS(total_pred(var("x"), s, m, "goal"), TypeError);
}
