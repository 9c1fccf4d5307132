#include "doctest.h"
#include "exref/verify.hpp"
#include "support.hpp"

using namespace exref;
using namespace exref::test;
using namespace exref::ex;

namespace {

const MachineParams kMachine{-2, 2};

Transformer on(const Statement& s, const SpaceRef& space) { return compile(s, space, {kMachine}); }

CheckOptions with(StrategyKind k) {
  CheckOptions o;
  o.strategy = k;
  return o;
}

/// A random statement over `s` built from updates, assumptions and
/// compositions. Angelic parts only when `angelic` is set.
Statement random_stmt(const SpaceRef& s, std::mt19937_64& rng, int depth, bool angelic) {
  if (depth == 0 || rng() % 3 == 0) {
    switch (rng() % 6) {
      case 0: return st::dem_upd(random_rel(s, s, rng, 3), random_rel(s, s, rng, 3));
      case 1: return st::assume(random_pred(s, rng), random_pred(s, rng));
      case 2: {
        if (angelic) return st::ang_upd(random_rel(s, s, rng, 3), random_rel(s, s, rng, 3));
        auto u = random_pred(s, rng);
        return st::assert_(u, random_pred(s, rng) & !u);
      }
      case 3: return st::skip();
      case 4: return st::raise_();
      default: return rng() % 2 ? st::abort_() : st::stop();
    }
  }
  auto a = random_stmt(s, rng, depth - 1, angelic);
  auto b = random_stmt(s, rng, depth - 1, angelic);
  switch (rng() % (angelic ? 4 : 3)) {
    case 0: return st::seq(std::move(a), std::move(b));
    case 1: return st::exc_seq(std::move(a), std::move(b));
    case 2: return st::meet(std::move(a), std::move(b));
    default: return st::join(std::move(a), std::move(b));
  }
}

}  // namespace

TEST_CASE("canonical predicate orders") {
  auto s = counter_space(3);
  auto preds = ordered_predicates(s);
  REQUIRE(preds.size() == 8);
  CHECK(preds[0].is_true());
  CHECK(preds[1] == pred(s, {1, 2}));
  CHECK(preds[2] == pred(s, {0, 2}));
  CHECK(preds[3] == pred(s, {0, 1}));
  CHECK(preds[4] == pred(s, {2}));
  CHECK(preds[5] == pred(s, {1}));
  CHECK(preds[6] == pred(s, {0}));
  CHECK(preds[7].is_false());
  CHECK(ordered_predicates(StateSpace::make({})).size() == 2);

  auto up = ordered_predicates(s, PredOrder::StrongestFirst);
  REQUIRE(up.size() == 8);
  CHECK(up[0].is_false());
  CHECK(up[1] == pred(s, {0}));
  CHECK(up[3] == pred(s, {2}));
  CHECK(up[4] == pred(s, {0, 1}));
  CHECK(up[7].is_true());
}

TEST_CASE("total correctness") {
  auto s = int_space({{"x", {0, 1}}});
  const auto top = Predicate::truth(s);
  const auto bot = Predicate::falsity(s);
  CHECK(check_total_correct(top, on(st::skip(), s), top, bot).status == Status::Holds);
  auto v = check_total_correct(top, on(st::raise_(), s), top, bot);
  CHECK(v.status == Status::Fails);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->state == 0);

  auto xy = int_space({{"x", {0, 1}}, {"y", {0, 1}}});
  const auto y1 = Predicate::from_function(xy, [&](std::size_t i) { return xy->value(i, 1).as_int() == 1; });
  auto div = on(st::assign("x", bin(BinOp::Div, var("x"), var("y"))), xy);
  CHECK(check_total_correct(Predicate::truth(xy), div, y1, !y1).status == Status::Holds);
  CHECK(check_total_correct(Predicate::truth(xy), div, y1, Predicate::falsity(xy)).status == Status::Fails);
}

TEST_CASE("partial correctness") {
  auto s = int_space({{"x", {0, 1}}});
  for (const auto& p : all_predicates(s)) {
    for (const auto& q : all_predicates(s)) {
      for (const auto& r : all_predicates(s)) {
        CHECK(check_partial_correct(p, on(st::raise_(), s), q, r).status == Status::Holds);
      }
    }
  }

  auto xy = int_space({{"x", {0, 1}}, {"y", {0, 1}}});
  const auto y1 = Predicate::from_function(xy, [&](std::size_t i) { return xy->value(i, 1).as_int() == 1; });
  auto div = on(st::assign("x", bin(BinOp::Div, var("x"), var("y"))), xy);
  CHECK(check_partial_correct(Predicate::truth(xy), div, y1, Predicate::falsity(xy)).status == Status::Holds);

  auto v = check_partial_correct(pred(s, {0}), on(st::seq(st::assign("x", lit(1)), st::raise_()), s),
                                 Predicate::truth(s), Predicate::falsity(s));
  CHECK(v.status == Status::Fails);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->state == 0);
}

TEST_CASE("partial correctness allows weakening postconditions") {
  auto s = counter_space(3);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto t = on(random_stmt(s, rng, 2, true), s);
    auto p = random_pred(s, rng);
    auto q = random_pred(s, rng);
    auto r = random_pred(s, rng);
    if (check_partial_correct(p, t, q, r).status != Status::Holds) continue;
    CHECK(check_partial_correct(p, t, q | random_pred(s, rng), r | random_pred(s, rng)).status == Status::Holds);
  }
}

TEST_CASE("total refinement bounds and counterexamples") {
  auto s = counter_space(2);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    auto t = on(random_stmt(s, rng, 2, true), s);
    CHECK(check_total_refine(on(st::abort_(), s), t).status == Status::Holds);
    CHECK(check_total_refine(t, on(st::stop(), s)).status == Status::Holds);
  }
  auto v = check_total_refine(on(st::skip(), s), on(st::meet(st::skip(), st::raise_()), s));
  CHECK(v.status == Status::Fails);
  CHECK(v.strategy == StrategyKind::Exhaustive);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->q.is_true());
  CHECK(v.counterexample->r.is_false());
}

TEST_CASE("partial refinement examples") {
  auto s = int_space({{"x", {0, 1}}});
  CHECK(check_partial_refine(on(st::stop(), s), on(st::raise_(), s)).status == Status::Holds);
  CHECK(check_partial_refine(on(st::raise_(), s), on(st::stop(), s)).status == Status::Holds);
  CHECK(check_total_refine(on(st::raise_(), s), on(st::stop(), s)).status == Status::Holds);
  CHECK(check_total_refine(on(st::stop(), s), on(st::raise_(), s)).status == Status::Fails);

  auto left = on(st::assign("x", lit(1)), s);
  auto right = on(st::seq(st::assign("x", lit(1)), st::raise_()), s);
  auto v = check_partial_refine(left, right);
  CHECK(v.status == Status::Fails);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->q.is_true());
  CHECK(v.counterexample->r == pred(s, {0}));
  CHECK(v.counterexample->state == 0);
  CHECK(replays(*v.counterexample, meet_raise(left), right));
}

TEST_CASE("exhaustive strategy agrees with brute force") {
  auto s = counter_space(2);
  std::mt19937_64 rng(8);
  int holds = 0, fails = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto a = on(random_stmt(s, rng, 2, true), s);
    auto b = on(random_stmt(s, rng, 2, true), s);
    auto v = check_total_refine(a, b, with(StrategyKind::Exhaustive));
    CHECK((v.status == Status::Holds) == refines(a, b));
    if (v.status == Status::Fails) {
      ++fails;
      REQUIRE(v.counterexample);
      CHECK(replays(*v.counterexample, a, b));
    } else {
      ++holds;
    }
  }
  CHECK(holds > 10);
  CHECK(fails > 10);
}

TEST_CASE("coatomic strategy agrees with exhaustive on conjunctive statements") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto s = counter_space(n);
    std::mt19937_64 rng(100 + n);
    for (int trial = 0; trial < 60; ++trial) {
      auto a = on(random_stmt(s, rng, 2, false), s);
      auto b = on(random_stmt(s, rng, 2, false), s);
      REQUIRE(a.conjunctive());
      REQUIRE(b.conjunctive());
      auto ex = check_total_refine(a, b, with(StrategyKind::Exhaustive));
      auto co = check_total_refine(a, b, with(StrategyKind::Coatomic));
      CHECK(ex.status == co.status);
      if (co.counterexample) CHECK(replays(*co.counterexample, a, b));
    }
  }
}

TEST_CASE("coatomic is rejected for non-conjunctive statements") {
  auto s = counter_space(2);
  auto angelic = on(st::join(st::skip(), st::raise_()), s);
  CHECK_THROWS_AS(check_total_refine(angelic, angelic, with(StrategyKind::Coatomic)), CheckError);
}

TEST_CASE("exhaustive strategy respects the state cap") {
  auto s = counter_space(6);
  auto t = on(st::skip(), s);
  CheckOptions o = with(StrategyKind::Exhaustive);
  o.max_states = 5;
  CHECK_THROWS_AS(check_total_refine(t, t, o), CheckError);
  o.strategy = StrategyKind::Auto;
  auto v = check_total_refine(t, t, o);
  CHECK(v.strategy == StrategyKind::Coatomic);
  CHECK(v.status == Status::Holds);

  auto angelic = on(st::join(st::skip(), st::raise_()), s);
  auto w = check_total_refine(angelic, angelic, o);
  CHECK(w.strategy == StrategyKind::Sampled);
  CHECK(w.status == Status::Unknown);
}

TEST_CASE("sampling refutes but never proves") {
  auto s = counter_space(3);
  std::mt19937_64 rng(12);
  CheckOptions o = with(StrategyKind::Sampled);
  o.samples = 200;
  for (int trial = 0; trial < 50; ++trial) {
    auto a = on(random_stmt(s, rng, 2, true), s);
    auto b = on(random_stmt(s, rng, 2, true), s);
    auto v = check_total_refine(a, b, o);
    CHECK(v.status != Status::Holds);
    CHECK(v.status != Status::Fails);
    if (v.status == Status::Refuted) {
      REQUIRE(v.counterexample);
      CHECK(replays(*v.counterexample, a, b));
      CHECK_FALSE(refines(a, b));
    }
    auto again = check_total_refine(a, b, o);
    CHECK(again.status == v.status);
    CHECK(again.pairs == v.pairs);
  }
}

TEST_CASE("parallel scans report the same counterexample") {
  auto s = counter_space(3);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = on(random_stmt(s, rng, 2, true), s);
    auto b = on(random_stmt(s, rng, 2, true), s);
    auto serial = check_total_refine(a, b, with(StrategyKind::Exhaustive));
    CheckOptions par = with(StrategyKind::Exhaustive);
    par.jobs = 4;
    auto parallel = check_total_refine(a, b, par);
    CHECK(serial.status == parallel.status);
    if (serial.counterexample) {
      REQUIRE(parallel.counterexample);
      CHECK(serial.counterexample->q == parallel.counterexample->q);
      CHECK(serial.counterexample->r == parallel.counterexample->r);
      CHECK(serial.counterexample->state == parallel.counterexample->state);
    }
  }
}

TEST_CASE("partial refinement requires exceptional space equal to entry") {
  auto a = counter_space(2);
  auto b = counter_space(2, "y");
  auto t = on(st::dem_upd(Relation::identity(a), Relation::universal(a, b)), a);
  CHECK_THROWS_AS(check_partial_refine(t, t), CheckError);
  CHECK_THROWS_AS(check_total_refine(on(st::skip(), a), on(st::skip(), b)), SpaceMismatch);
}

TEST_CASE("projection through the identity is the statement itself") {
  auto s = counter_space(2);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto t = on(random_stmt(s, rng, 2, true), s);
    CHECK(same_transformer(project(t, Relation::identity(s)), t));
  }
  CHECK(same_transformer(project(on(st::raise_(), s), Relation::identity(s)), on(st::raise_(), s)));
}

TEST_CASE("projection of skip through a one-to-many relation") {
  auto abs = counter_space(1, "a");
  auto conc = counter_space(2, "c");
  auto r = Relation::universal(abs, conc);
  auto projected = project(on(st::skip(), conc), r);
  CHECK(same_transformer(projected, on(st::skip(), abs)));
  CHECK(projected.conjunctive());

  // Two abstract states sharing a concrete one: the projection loses
  // conjunctivity through the angelic map back.
  auto abs2 = counter_space(2, "a");
  auto shared = Relation::universal(abs2, conc);
  CHECK_FALSE(project(on(st::skip(), conc), shared).conjunctive());
}

TEST_CASE("data refinement through the identity is partial refinement") {
  auto s = counter_space(2);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = on(random_stmt(s, rng, 2, true), s);
    auto b = on(random_stmt(s, rng, 2, true), s);
    CHECK(check_data_refine(RefineKind::Partial, a, Relation::identity(s), b).status ==
          check_partial_refine(a, b).status);
    CHECK(check_data_refine(RefineKind::Total, a, Relation::identity(s), b).status ==
          check_total_refine(a, b).status);
  }
}
