// Acceptance run: one PASS/FAIL line per criterion, each under a fixed time limit.

#include "exref/laws.hpp"
#include "exref/runner.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace exref;
using namespace exref::ex;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int number;
  const char* title;
  double limit_s;
  std::function<std::string()> run;  // empty string on success
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string source_path(const std::string& rel) { return std::string(EXREF_SOURCE_DIR) + "/" + rel; }

bool equal_transformers(const Transformer& a, const Transformer& b) {
  for (const auto& q : ordered_predicates(a.normal())) {
    for (const auto& r : ordered_predicates(a.exceptional())) {
      if (!(a.wp(q, r) == b.wp(q, r))) return false;
    }
  }
  return true;
}

std::string laws_pass(const std::vector<std::string>& ids, const GenConfig& cfg, std::size_t trials) {
  for (const auto& id : ids) {
    const auto rep = check_law(id, cfg, trials);
    if (rep.status != LawStatus::Pass) return id + ": " + to_string(rep.status) + " " + rep.detail;
  }
  return {};
}

std::string identity_tables() {
  const auto cfg = single_var_config(0, 2);
  const auto& s = cfg.space;
  const CompileContext ctx{cfg.machine};
  const auto t = PredConst::True;
  const auto f = PredConst::False;
  const auto id = RelConst::Id;
  const auto none = RelConst::Empty;
  const auto skip_meet_raise = st::meet(st::skip(), st::raise_());
  const auto skip_join_raise = st::join(st::skip(), st::raise_());
  const std::vector<std::pair<Statement, Statement>> rows = {
      {st::assume(t, f), st::skip()},        {st::assert_(t, f), st::skip()},
      {st::assume(f, t), st::raise_()},      {st::assert_(f, t), st::raise_()},
      {st::assume(f, f), st::stop()},        {st::assert_(f, f), st::abort_()},
      {st::assume(t, t), skip_meet_raise},   {st::assert_(t, t), skip_join_raise},
      {st::dem_upd(id, none), st::skip()},   {st::ang_upd(id, none), st::skip()},
      {st::dem_upd(none, id), st::raise_()}, {st::ang_upd(none, id), st::raise_()},
      {st::dem_upd(none, none), st::stop()}, {st::ang_upd(none, none), st::abort_()},
      {st::dem_upd(id, id), skip_meet_raise}, {st::ang_upd(id, id), skip_join_raise},
  };
  if (s->size() != 3) return "space does not have 3 states";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!equal_transformers(compile(rows[i].first, s, ctx), compile(rows[i].second, s, ctx))) {
      return "row " + std::to_string(i + 1) + " differs";
    }
  }
  return {};
}

std::string monoid_lattice() {
  auto cfg = single_var_config(0, 2);
  cfg.max_depth = 3;
  return laws_pass({"seq_skip_unit", "excseq_raise_unit", "seq_monoid", "excseq_monoid", "lattice_bounds"}, cfg,
                   500);
}

std::string correctness_rules() {
  std::vector<std::string> ids;
  for (const auto& info : law_registry()) {
    if (info.id.rfind("thm1_", 0) == 0 || info.id.rfind("thm3_", 0) == 0) ids.push_back(info.id);
  }
  if (ids.size() != 20) return "expected 20 rules, found " + std::to_string(ids.size());
  return laws_pass(ids, default_gen_config(), 200);
}

std::string refinement_preservation() {
  return laws_pass({"thm2_refine_iff", "thm4_partial_refine_iff"}, single_var_config(0, 1), 200);
}

std::string partial_refinement_order() {
  const auto cfg = default_gen_config();
  auto err = laws_pass({"thm5_raise_top", "thm5_total_implies_partial", "thm6_preorder", "thm7_seq_left_mono",
                        "thm7_meet_mono", "thm7_if_mono", "nonantisymmetry_witness"},
                       cfg, 200);
  if (!err.empty()) return err;
  for (const char* id : {"thm7_seq_right_nonmono", "thm7_excseq_left_nonmono", "thm7_excseq_right_nonmono"}) {
    const auto rep = check_law(id, cfg, 200);
    if (rep.status != LawStatus::ExpectedRefutation || !rep.counterexample) return std::string(id) + " not refuted";
    const auto again = replay_law(id, cfg, rep.seed);
    if (!again.counterexample || !(again.counterexample->q == rep.counterexample->q) ||
        !(again.counterexample->r == rep.counterexample->r) ||
        again.counterexample->state != rep.counterexample->state) {
      return std::string(id) + " witness does not replay";
    }
  }
  const auto s = single_var_config(0, 1).space;
  const auto stop = compile(st::stop(), s);
  const auto raise = compile(st::raise_(), s);
  if (check_partial_refine(stop, raise).status != Status::Holds) return "stop does not partially refine raise";
  if (check_partial_refine(raise, stop).status != Status::Holds) return "raise does not partially refine stop";
  if (equal_transformers(stop, raise)) return "stop equals raise";
  return {};
}

std::string loops() {
  const auto cfg = single_var_config(0, 2);
  const auto& s = cfg.space;
  const auto guard = bin(BinOp::Gt, var("x"), lit(0));
  const auto body = st::assign("x", bin(BinOp::Sub, var("x"), lit(1)));
  const auto loop = compile(st::while_(guard, body), s, {cfg.machine});
  const auto step = compile(body, s, {cfg.machine});
  const RankedInvariant inv{Predicate::truth(s), var("x")};
  const auto b = total_pred(guard, s, cfg.machine, "guard");
  const auto defb = def_pred(guard, s, cfg.machine);
  const auto r = Predicate::falsity(s);
  for (auto w : inv.ranks(cfg.machine)) {
    const auto pre = inv.at(w, cfg.machine) & defb & b;
    if (check_total_correct(pre, step, inv.below(w, cfg.machine), r).status != Status::Holds) {
      return "countdown premise fails at rank " + std::to_string(w);
    }
  }
  const auto p = inv.invariant;
  if (check_total_correct(p, loop, p & defb & !b, (p & !defb) | r).status != Status::Holds) {
    return "countdown total conclusion fails";
  }
  if (check_partial_correct(p, loop, p & defb & !b, r).status != Status::Holds) {
    return "countdown partial conclusion fails";
  }
  for (const char* id : {"thm_loop_total", "thm_loop_partial"}) {
    const auto rep = check_law(id, default_gen_config(), 100);
    if (rep.status != LawStatus::Pass) return std::string(id) + ": " + rep.detail;
    if (rep.instances == 0) return std::string(id) + ": no instance met the premise";
  }
  return {};
}

std::string strategy_oracle() {
  auto cfg = single_var_config(0, 2);
  cfg.allow_angelic = false;
  CheckOptions exhaustive;
  exhaustive.strategy = StrategyKind::Exhaustive;
  CheckOptions coatomic;
  coatomic.strategy = StrategyKind::Coatomic;
  std::size_t pairs = 0, holds = 0;
  for (std::size_t i = 0; pairs < 500 && i < 5000; ++i) {
    Generator gen(cfg, trial_seed(cfg, i));
    auto a = gen.statement();
    auto b = i % 3 == 0 ? st::meet(a, gen.statement()) : gen.statement();
    if (i % 3 == 0) std::swap(a, b);
    const auto s = compile(a, cfg.space, {cfg.machine});
    const auto t = compile(b, cfg.space, {cfg.machine});
    if (!classify_conjunctive(s) || !classify_conjunctive(t)) continue;
    ++pairs;
    const auto ve = check_total_refine(s, t, exhaustive);
    const auto vc = check_total_refine(s, t, coatomic);
    if (ve.status != vc.status) return "disagreement on pair " + std::to_string(i);
    if (ve.status == Status::Holds) ++holds;
  }
  if (pairs < 500) return "only " + std::to_string(pairs) + " conjunctive pairs";
  if (holds == 0 || holds == pairs) return "pairs do not exercise both outcomes";
  return {};
}

std::string intcollection() {
  auto parsed = parse(read_file(source_path("prf/intcollection.prf")));
  if (!parsed.ok()) return "intcollection.prf does not parse";
  auto elab = elaborate(parsed.module);
  if (!elab.env) return "intcollection.prf does not elaborate";
  const auto& env = *elab.env;
  if (env.spaces.at("A")->size() != 105 || env.spaces.at("C")->size() != 375) return "unexpected space sizes";
  RunOptions opts;
  opts.check.strategy = StrategyKind::Coatomic;
  const auto report = run(env, opts);
  std::map<std::string, const GoalResult*> by_name;
  for (const auto& g : report.goals) by_name[g.name] = &g;
  for (const char* name : {"insert", "sum", "init_alloc_first"}) {
    if (by_name.count(name) == 0 || by_name[name]->status != Status::Holds) return std::string(name) + " not HOLDS";
  }
  const auto* init = by_name["init_reset_first"];
  if (init == nullptr || init->status != Status::Fails || !init->counterexample) return "init_reset_first not FAILS";
  const auto& c = *init->counterexample;
  const auto b = c.space->find("b");
  if (!b || c.space->value(c.state, *b).items.empty()) return "init counterexample has an empty bag";
  if (!replays(c, meet_raise(env.programs.at("init")), project(env.programs.at("init1"), env.relations.at("rel")))) {
    return "init counterexample does not replay";
  }
  return {};
}

std::string incremental() {
  const auto cfg = default_gen_config();
  if (cfg.space->size() != 4) return "space does not have 4 states";
  return laws_pass({"incremental_combination", "cond_disj_switch_identity"}, cfg, 100);
}

std::string cli_contract() {
  for (const char* name : {"identities", "kingmorgan_ops", "intcollection", "incremental"}) {
    const auto text = read_file(source_path(std::string("prf/") + name + ".prf"));
    auto parsed = parse(text);
    if (!parsed.ok()) return std::string(name) + " does not parse";
    auto again = parse(print_module(parsed.module));
    if (!again.ok() || !(again.module == parsed.module)) return std::string(name) + " does not round-trip";
    auto elab = elaborate(parsed.module);
    if (!elab.env) return std::string(name) + " does not elaborate";
    RunOptions opts;
    opts.check.seed = 1;
    const auto report = run(*elab.env, opts);
    if (exit_code(report) != 0) return std::string(name) + " exit code is not 0";
    const auto golden = read_file(source_path(std::string("tests/golden/") + name + ".json"));
    if (emit_report(report, {ReportFormat::Json, false}) != golden) return std::string(name) + " differs from golden";
  }
  if (parse(read_file(source_path("tests/cli/parse_error.prf"))).ok()) return "parse error not detected";
  auto typed = parse(read_file(source_path("tests/cli/type_error.prf")));
  if (!typed.ok() || elaborate(typed.module).env) return "type error not detected";
  auto unexpected = parse(read_file(source_path("tests/cli/unexpected.prf")));
  auto env = elaborate(unexpected.module);
  if (!env.env || exit_code(run(*env.env, {})) != 1) return "unexpected failure does not exit 1";
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "identity tables", 1, identity_tables},
      {2, "monoid and lattice laws", 60, monoid_lattice},
      {3, "correctness rules", 120, correctness_rules},
      {4, "refinement and correctness preservation", 120, refinement_preservation},
      {5, "preorder and monotonicity", 60, partial_refinement_order},
      {6, "loop rules", 120, loops},
      {7, "strategy oracle equivalence", 120, strategy_oracle},
      {8, "IntCollection at desk scale", 300, intcollection},
      {9, "incremental development", 60, incremental},
      {10, "CLI contract", 300, cli_contract},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    std::string err;
    try {
      err = c.run();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (err.empty() && secs >= c.limit_s) err = "over time limit";
    const bool ok = err.empty();
    if (!ok) ++failed;
    std::printf("criterion %2d %s  %s (%.2f s, limit %.0f s)%s%s\n", c.number, ok ? "PASS" : "FAIL", c.title, secs,
                c.limit_s, ok ? "" : ": ", err.c_str());
  }
  return failed == 0 ? 0 : 1;
}
