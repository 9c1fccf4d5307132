#include "doctest.h"
#include "exref/runner.hpp"
#include "support.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace exref;
using namespace exref::ex;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string bundled(const char* name) { return read_file(std::string(EXREF_SOURCE_DIR) + "/prf/" + name); }

Environment load(std::string_view text) {
  auto parsed = parse(text);
  for (const auto& d : parsed.diagnostics) INFO(format_diagnostic(d));
  REQUIRE(parsed.ok());
  auto elab = elaborate(parsed.module);
  for (const auto& d : elab.diagnostics) INFO(format_diagnostic(d));
  REQUIRE(elab.env);
  return std::move(*elab.env);
}

std::vector<Diagnostic> elaboration_errors(std::string_view text) {
  auto parsed = parse(text);
  REQUIRE(parsed.ok());
  return elaborate(parsed.module).diagnostics;
}

// Random syntax trees; they need not typecheck.
class SyntaxGen {
 public:
  explicit SyntaxGen(std::uint64_t seed) : rng_(seed) {}

  Expr expr(int depth) {
    if (depth == 0) {
      switch (pick(4)) {
        case 0: return lit(static_cast<std::int64_t>(pick(7)) - 3);
        case 1: return lit(pick(2) == 0);
        case 2: return var(name(), pick(4) == 0);
        default: return bag_empty();
      }
    }
    switch (pick(12)) {
      case 0: return neg(var(name()));
      case 1: return not_(expr(depth - 1));
      case 2:
      case 3: return bin(static_cast<BinOp>(pick(16)), expr(depth - 1), expr(depth - 1));
      case 4: return index(var("a"), expr(depth - 1));
      case 5: return write(var("a"), expr(depth - 1), expr(depth - 1));
      case 6: return fill(1 + pick(3), expr(depth - 1));
      case 7: return len(expr(depth - 1));
      case 8: return bag_single(expr(depth - 1));
      case 9: return bagof(var("a"), expr(depth - 1));
      case 10: return bag_sum(expr(depth - 1));
      default: {
        if (pick(2) == 0) return set_range(expr(depth - 1), expr(depth - 1));
        std::vector<Expr> items;
        for (std::size_t i = pick(3); i > 0; --i) items.push_back(expr(depth - 1));
        return set_of(std::move(items));
      }
    }
  }

  Cond cond() {
    switch (pick(3)) {
      case 0: return PredConst::True;
      case 1: return PredConst::False;
      default: return bin(BinOp::Lt, var(name()), expr(1));
    }
  }

  RelRef rel() {
    switch (pick(4)) {
      case 0: return RelConst::Id;
      case 1: return RelConst::Empty;
      case 2: return RelConst::Full;
      default: return RelName{"r" + std::to_string(pick(3))};
    }
  }

  Statement stmt(int depth) {
    if (depth == 0) {
      switch (pick(16)) {
        case 0: return st::skip();
        case 1: return st::raise_();
        case 2: return st::abort_();
        case 3: return st::stop();
        case 4: return st::assume(cond(), cond());
        case 5: return st::assert_(cond(), cond());
        case 6: return st::dem_upd(rel(), rel());
        case 7: return st::ang_upd(rel(), rel());
        case 8: return {AssumeOne{cond()}};
        case 9: return {AssertOne{cond()}};
        case 10: return {DemUpdOne{rel()}};
        case 11: return {AngUpdOne{rel()}};
        case 12: return st::alloc("a", 1 + pick(3));
        case 13: return st::nondet(name(), expr(1));
        case 14: {
          Assign a;
          a.targets = {{"x", std::nullopt}, {"a", expr(1)}};
          a.values = {expr(1), expr(1)};
          return {std::move(a)};
        }
        default: return st::assign(name(), expr(2));
      }
    }
    switch (pick(10)) {
      case 0: return st::seq(stmt(depth - 1), stmt(depth - 1));
      case 1: return st::exc_seq(stmt(depth - 1), stmt(depth - 1));
      case 2: return st::meet(stmt(depth - 1), stmt(depth - 1));
      case 3: return st::join(stmt(depth - 1), stmt(depth - 1));
      case 4: return st::if_(expr(1), stmt(depth - 1), stmt(depth - 1));
      case 5: return st::while_(expr(1), stmt(depth - 1));
      case 6: {
        std::optional<Expr> init;
        if (pick(2) == 0) init = expr(1);
        return st::local("t", domain(), init, stmt(depth - 1));
      }
      case 7: return st::try_catch(stmt(depth - 1), stmt(depth - 1));
      case 8: return st::try_catch_finally(stmt(depth - 1), stmt(depth - 1), stmt(depth - 1));
      default: return stmt(0);
    }
  }

  Domain domain() {
    switch (pick(4)) {
      case 0: return Domain::boolean();
      case 1: return Domain::array_fixed(2, -1, 1);
      case 2: return Domain::bag_capped(0, 2, 2);
      default: return Domain::int_range(-2, static_cast<std::int64_t>(pick(3)));
    }
  }

 private:
  std::size_t pick(std::size_t n) { return rng_() % n; }
  std::string name() { return pick(2) == 0 ? "x" : "y"; }

  std::mt19937_64 rng_;
};

const char* kMinimal = "machine(-2,2) space S { x: int(0..1); } program p over S { skip } goal total_refine p p;";

}  // namespace

TEST_CASE("the minimal module has one goal") {
  auto parsed = parse(kMinimal);
  REQUIRE(parsed.ok());
  REQUIRE(parsed.module.decls.size() == 4);
  CHECK(std::holds_alternative<GoalDecl>(parsed.module.decls.back()));
  auto env = load(kMinimal);
  CHECK(env.goals.size() == 1);
  CHECK(env.goals[0].name == "total_refine p p");
}

TEST_CASE("an undeclared program is reported with its location") {
  auto diags = elaboration_errors(
      "machine(-2,2)\nspace S { x: int(0..1); }\nprogram p over S { skip }\n  goal total_refine p q;\n");
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("'q'") != std::string::npos);
  CHECK(diags[0].loc.line == 4);
  CHECK(diags[0].loc.column == 3);
  CHECK(format_diagnostic(diags[0]) == "4:3: error: unknown program 'q'");
}

TEST_CASE("relation expressions must be everywhere defined") {
  auto diags = elaboration_errors(
      "space S { x: int(0..1); }\nrelation r : S <-> S = 1 div x = x';\nprogram p over S { update(r, none) }\n");
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("relation expression must be everywhere defined") != std::string::npos);
  CHECK(diags[0].loc.line == 2);
}

TEST_CASE("goal predicates must be everywhere defined") {
  auto diags = elaboration_errors(
      "space S { x: int(0..1); }\nprogram p over S { skip }\ngoal total_correct p pre 1 div x = 1 post true;\n");
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].loc.line == 3);
}

TEST_CASE("parse errors carry positions and parsing continues") {
  auto parsed = parse("space S { x: int(0..1) }\nprogram p over S { skip ; }\ngoal total_refine p p;\n");
  REQUIRE(parsed.diagnostics.size() == 2);
  CHECK(parsed.diagnostics[0].loc.line == 1);
  CHECK(parsed.diagnostics[1].loc.line == 2);
  CHECK(std::holds_alternative<GoalDecl>(parsed.module.decls.back()));
}

TEST_CASE("elaboration checks shapes and names") {
  const std::string head = "space S { x: int(0..1); }\nspace T { y: bool; }\n";
  CHECK_FALSE(elaboration_errors(head + "program p over S { skip }\nprogram q over T { skip }\n"
                                        "goal total_refine p q;\n")
                  .empty());
  CHECK_FALSE(elaboration_errors(head + "program p over S -> T, S { skip }\n").empty());
  CHECK_FALSE(elaboration_errors(head + "goal laws no_such_law;\n").empty());
  CHECK_FALSE(elaboration_errors(head + "space S { z: bool; }\n").empty());
  CHECK_FALSE(elaboration_errors(head + "pred big over T = y;\nprogram p over S { skip }\n"
                                        "goal total_correct p pre big post true;\n")
                  .empty());
  CHECK(elaboration_errors(head + "pred small over S = x = 0;\nprogram p over S { x := 0 }\n"
                                  "goal total_correct p pre true post small;\n")
            .empty());
}

TEST_CASE("named predicates are inlined into goals") {
  auto env = load(
      "space S { x: int(0..2); }\npred low over S = x < 2;\npred pos over S = low and x > 0;\n"
      "program p over S { x := x + 1 }\ngoal total_correct p pre pos post not low;\n");
  REQUIRE(env.goals.size() == 1);
  const auto& s = env.spaces.at("S");
  CHECK(*env.goals[0].pre == test::pred(s, {1}));
  CHECK(*env.goals[0].post == test::pred(s, {2}));
  CHECK(env.goals[0].exc->is_false());
}

TEST_CASE("bundled modules round-trip through the printer") {
  for (const char* name : {"identities.prf", "kingmorgan_ops.prf", "intcollection.prf", "incremental.prf"}) {
    CAPTURE(name);
    auto first = parse(bundled(name));
    REQUIRE(first.ok());
    auto text = print_module(first.module);
    auto second = parse(text);
    REQUIRE(second.ok());
    CHECK(second.module == first.module);
    CHECK(print_module(second.module) == text);
  }
}

TEST_CASE("random statements round-trip through the printer") {
  for (std::uint64_t seed = 1; seed <= 2000; ++seed) {
    SyntaxGen gen(seed);
    ProgramDecl prog{"p", "S", std::nullopt, gen.stmt(3), {}};
    PredDecl pred{"e", "S", gen.expr(3), {}};
    SourceModule m{{prog, pred}};
    auto text = print_module(m);
    CAPTURE(text);
    auto back = parse(text);
    for (const auto& d : back.diagnostics) INFO(format_diagnostic(d));
    REQUIRE(back.ok());
    CHECK(back.module == m);
  }
}

TEST_CASE("an empty report") {
  RunReport empty;
  CHECK(emit_report(empty) ==
        "{\n  \"goals\": [],\n  \"summary\": {\n    \"holds\": 0,\n    \"fails\": 0,\n    \"refuted\": 0,\n"
        "    \"unknown\": 0\n  }\n}\n");
  CHECK(emit_report(empty, {ReportFormat::Text, true}) == "summary: 0 holds, 0 fails, 0 refuted, 0 unknown\n");
  CHECK(exit_code(empty) == 0);
}

TEST_CASE("a holding goal has no counterexample") {
  auto report = run(load(kMinimal), {});
  REQUIRE(report.goals.size() == 1);
  CHECK(report.goals[0].status == Status::Holds);
  CHECK_FALSE(report.goals[0].counterexample);
  const auto json = emit_report(report, {ReportFormat::Json, false});
  CHECK(json.find("\"holds\": 1") != std::string::npos);
  CHECK(json.find("\"counterexample\": null") != std::string::npos);
  CHECK(exit_code(report) == 0);
}

TEST_CASE("a failing goal reports a replayable counterexample") {
  auto env = load(
      "space S { x: int(0..1); }\nprogram s over S { skip }\nprogram t over S { choice skip [] raise }\n"
      "goal total_refine s t;\n");
  auto report = run(env, {});
  REQUIRE(report.goals.size() == 1);
  const auto& g = report.goals[0];
  CHECK(g.status == Status::Fails);
  REQUIRE(g.counterexample);
  CHECK(replays(*g.counterexample, env.programs.at("s"), env.programs.at("t")));
  CHECK(g.counterexample->q.is_true());
  CHECK(g.counterexample->r.is_false());
  CHECK(g.counterexample->state == 0);

  const auto json = emit_report(report, {ReportFormat::Json, false});
  CHECK(json.find("\"state\": {\n          \"x\": 0\n        }") != std::string::npos);
  const auto text = emit_report(report, {ReportFormat::Text, false});
  CHECK(text.find("state: {x=0}") != std::string::npos);
  CHECK(text.find("q: [{x=0}, {x=1}]") != std::string::npos);
  CHECK(text.find("r: []") != std::string::npos);
  CHECK(exit_code(report) == 1);
}

TEST_CASE("exit codes follow expectations") {
  auto env = load(
      "space S { x: int(0..1); }\nprogram s over S { skip }\nprogram t over S { choice skip [] raise }\n"
      "goal expect fails total_refine s t;\ngoal total_refine t s;\ngoal laws thm7_seq_right_nonmono;\n");
  RunOptions opts;
  opts.law_trials = 10;
  auto report = run(env, opts);
  REQUIRE(report.goals.size() == 3);
  CHECK(report.goals[2].status == Status::Refuted);
  CHECK(report.goals[2].expected == Status::Refuted);
  CHECK(exit_code(report) == 0);

  report.goals[1].status = Status::Unknown;
  CHECK(exit_code(report) == 1);
}

TEST_CASE("checker errors are recorded per goal") {
  auto env = load(
      "space S { x: int(0..3); y: int(0..3); }\nprogram s over S { achoice skip <> raise }\n"
      "goal total_refine s s;\ngoal total_correct s pre true post true exc true;\n");
  RunOptions opts;
  opts.check.strategy = StrategyKind::Exhaustive;
  auto report = run(env, opts);
  REQUIRE(report.goals.size() == 2);
  CHECK(report.goals[0].status == Status::Unknown);
  CHECK_FALSE(report.goals[0].error.empty());
  CHECK(report.goals[1].status == Status::Holds);
  CHECK(exit_code(report) == 1);
}

TEST_CASE("reports are deterministic and schedule independent") {
  auto env = load(bundled("kingmorgan_ops.prf"));
  RunOptions opts;
  opts.laws = {"thm6_preorder", "thm7_excseq_left_nonmono"};
  opts.law_trials = 30;
  const EmitOptions emit{ReportFormat::Json, false};
  const auto serial = emit_report(run(env, opts), emit);
  CHECK(emit_report(run(env, opts), emit) == serial);
  opts.check.jobs = 4;
  CHECK(emit_report(run(env, opts), emit) == serial);
}

TEST_CASE("text and json renderings carry the same goals") {
  auto env = load(bundled("incremental.prf"));
  RunOptions opts;
  opts.law_trials = 20;
  auto report = run(env, opts);
  const auto json = emit_report(report, {ReportFormat::Json, false});
  const auto text = emit_report(report, {ReportFormat::Text, false});
  for (const auto& g : report.goals) {
    CHECK(json.find("\"name\": \"" + g.name + "\"") != std::string::npos);
    CHECK(text.find(std::string(to_string(g.status)) + "  " + g.name + "  (") != std::string::npos);
    if (g.counterexample) {
      CHECK(text.find("state: " + format_state(*g.counterexample->space, g.counterexample->state)) !=
            std::string::npos);
    }
  }
}

TEST_CASE("the bundled collection meets its declared outcomes") {
  auto report = run(load(bundled("intcollection.prf")), {});
  std::map<std::string, Status> status;
  for (const auto& g : report.goals) status[g.name] = g.status;
  CHECK(status.at("insert") == Status::Holds);
  CHECK(status.at("sum") == Status::Holds);
  CHECK(status.at("init_reset_first") == Status::Fails);
  CHECK(status.at("init_alloc_first") == Status::Holds);
  CHECK(exit_code(report) == 0);
}
