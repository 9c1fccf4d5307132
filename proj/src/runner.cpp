#include "exref/runner.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <atomic>
#include <thread>

namespace exref {

namespace {

struct PredInfo {
  std::string over;
  Expr body;
};

using PredTable = std::map<std::string, PredInfo>;

/// Replaces references to named predicates by their definitions.
class Inliner {
 public:
  Inliner(const PredTable& preds, const std::string& space_name, const StateSpace& space)
      : preds_(preds), space_name_(space_name), space_(space) {}

  Expr operator()(const Expr& e) const { return std::visit(*this, e.node); }

  Expr operator()(const VarRef& v) const {
    if (v.primed || space_.find(v.name)) return {v};
    auto it = preds_.find(v.name);
    if (it == preds_.end()) return {v};
    if (it->second.over != space_name_) {
      throw TypeError("predicate '" + v.name + "' is over space '" + it->second.over + "', used over '" +
                      space_name_ + "'");
    }
    return it->second.body;
  }
  Expr operator()(const IntLit& e) const { return {e}; }
  Expr operator()(const BoolLit& e) const { return {e}; }
  Expr operator()(const BagEmpty& e) const { return {e}; }
  Expr operator()(const Unary& e) const { return {Unary{e.op, (*this)(*e.operand)}}; }
  Expr operator()(const Binary& e) const { return {Binary{e.op, (*this)(*e.lhs), (*this)(*e.rhs)}}; }
  Expr operator()(const Index& e) const { return {Index{(*this)(*e.array), (*this)(*e.index)}}; }
  Expr operator()(const ArrayWrite& e) const {
    return {ArrayWrite{(*this)(*e.array), (*this)(*e.index), (*this)(*e.value)}};
  }
  Expr operator()(const ArrayFill& e) const { return {ArrayFill{e.length, (*this)(*e.value)}}; }
  Expr operator()(const Len& e) const { return {Len{(*this)(*e.array)}}; }
  Expr operator()(const BagSingle& e) const { return {BagSingle{(*this)(*e.element)}}; }
  Expr operator()(const BagOf& e) const { return {BagOf{(*this)(*e.array), (*this)(*e.length)}}; }
  Expr operator()(const BagSum& e) const { return {BagSum{(*this)(*e.bag)}}; }
  Expr operator()(const SetLit& e) const {
    SetLit out;
    for (const auto& x : e.elements) out.elements.push_back((*this)(x));
    return {std::move(out)};
  }
  Expr operator()(const SetRange& e) const { return {SetRange{(*this)(*e.lo), (*this)(*e.hi)}}; }

 private:
  const PredTable& preds_;
  const std::string& space_name_;
  const StateSpace& space_;
};

class Elaborator {
 public:
  Elaboration run(const SourceModule& m) {
    for (const auto& d : m.decls) {
      std::visit([this](const auto& x) { declare(x); }, d);
    }
    Elaboration out;
    out.diagnostics = std::move(diags_);
    if (out.diagnostics.empty()) out.env = std::move(env_);
    return out;
  }

 private:
  void error(Loc loc, std::string msg) { diags_.push_back({loc, std::move(msg)}); }

  const SpaceRef* space(const std::string& name, Loc loc) {
    auto it = env_.spaces.find(name);
    if (it == env_.spaces.end()) {
      error(loc, "unknown space '" + name + "'");
      return nullptr;
    }
    return &it->second;
  }

  const Transformer* program(const std::string& name, Loc loc) {
    auto it = env_.programs.find(name);
    if (it == env_.programs.end()) {
      error(loc, "unknown program '" + name + "'");
      return nullptr;
    }
    return &it->second;
  }

  void declare(const MachineDecl& d) {
    if (machine_seen_) return error(d.loc, "machine declared more than once");
    if (!env_.spaces.empty() || !env_.programs.empty()) {
      return error(d.loc, "machine must be declared before spaces and programs");
    }
    if (d.params.min > 0 || d.params.max < 0) return error(d.loc, "machine range must contain 0");
    machine_seen_ = true;
    env_.machine = d.params;
  }

  void declare(const SpaceDecl& d) {
    if (env_.spaces.count(d.name) != 0) return error(d.loc, "space '" + d.name + "' declared more than once");
    try {
      env_.spaces.emplace(d.name, StateSpace::make(d.vars));
    } catch (const std::exception& e) {
      error(d.loc, "space '" + d.name + "': " + e.what());
    }
  }

  void declare(const RelationDecl& d) {
    if (env_.relations.count(d.name) != 0) return error(d.loc, "relation '" + d.name + "' declared more than once");
    const auto* from = space(d.from, d.loc);
    const auto* to = space(d.to, d.loc);
    if (from == nullptr || to == nullptr) return;
    try {
      require_type(d.link, {from->get(), to->get()}, ExprType::Kind::Bool, "relation '" + d.name + "'");
    } catch (const TypeError& e) {
      return error(d.loc, e.what());
    }
    Relation rel(*from, *to);
    for (std::size_t a = 0; a < (*from)->size(); ++a) {
      for (std::size_t b = 0; b < (*to)->size(); ++b) {
        const auto v = evaluate(d.link, {from->get(), a, to->get(), b}, env_.machine);
        if (!v) {
          return error(d.loc, "relation expression must be everywhere defined (undefined at " +
                                  format_state(**from, a) + " <-> " + format_state(**to, b) + ")");
        }
        if (v->as_bool()) rel.add(a, b);
      }
    }
    env_.relations.emplace(d.name, std::move(rel));
  }

  void declare(const PredDecl& d) {
    if (preds_.count(d.name) != 0) return error(d.loc, "predicate '" + d.name + "' declared more than once");
    const auto* s = space(d.over, d.loc);
    if (s == nullptr) return;
    try {
      auto body = Inliner(preds_, d.over, **s)(d.body);
      total_pred(body, *s, env_.machine, "predicate '" + d.name + "'");
      preds_.emplace(d.name, PredInfo{d.over, std::move(body)});
    } catch (const TypeError& e) {
      error(d.loc, e.what());
    }
  }

  void declare(const ProgramDecl& d) {
    if (env_.programs.count(d.name) != 0) return error(d.loc, "program '" + d.name + "' declared more than once");
    const auto* s = space(d.over, d.loc);
    if (s == nullptr) return;
    try {
      auto t = compile(d.body, *s, {env_.machine, &env_.relations});
      if (d.exits) {
        const auto* n = space(d.exits->first, d.loc);
        const auto* e = space(d.exits->second, d.loc);
        if (n == nullptr || e == nullptr) return;
        if (!same_space(t.normal(), *n) || !same_space(t.exceptional(), *e)) {
          return error(d.loc, "program '" + d.name + "' does not exit into " + d.exits->first + ", " +
                                  d.exits->second);
        }
      }
      env_.programs.emplace(d.name, std::move(t));
    } catch (const TypeError& e) {
      error(d.loc, "program '" + d.name + "': " + e.what());
    } catch (const SpaceMismatch& e) {
      error(d.loc, "program '" + d.name + "': " + e.what());
    }
  }

  std::optional<Predicate> goal_pred(const Expr& e, const SpaceRef& space, const char* what, Loc loc) {
    std::string name;
    for (const auto& [n, s] : env_.spaces) {
      if (same_space(s, space)) name = n;
    }
    try {
      return total_pred(Inliner(preds_, name, *space)(e), space, env_.machine, what);
    } catch (const TypeError& err) {
      error(loc, err.what());
      return std::nullopt;
    }
  }

  static std::string default_name(const GoalDecl& g) {
    std::string n = to_string(g.kind);
    switch (g.kind) {
      case GoalKind::TotalCorrect:
      case GoalKind::PartialCorrect: return n + " " + g.program;
      case GoalKind::TotalRefine:
      case GoalKind::PartialRefine: return n + " " + g.left + " " + g.right;
      case GoalKind::DataRefine:
        return n + (g.data_kind == RefineKind::Total ? " total" : " partial") + " via " + g.via + " " + g.left +
               " " + g.right;
      case GoalKind::Laws: return n;
    }
    return n;
  }

  void declare(const GoalDecl& g) {
    ResolvedGoal r;
    r.name = g.label ? *g.label : default_name(g);
    r.kind = g.kind;
    r.expect = g.expect;
    r.loc = g.loc;
    const auto before = diags_.size();
    switch (g.kind) {
      case GoalKind::TotalCorrect:
      case GoalKind::PartialCorrect: {
        const auto* p = program(g.program, g.loc);
        if (p == nullptr) return;
        r.program = g.program;
        r.pre = goal_pred(*g.pre, p->entry(), "precondition", g.loc);
        r.post = goal_pred(*g.post, p->normal(), "normal postcondition", g.loc);
        r.exc = g.exc ? goal_pred(*g.exc, p->exceptional(), "exceptional postcondition", g.loc)
                      : Predicate::falsity(p->exceptional());
        if (g.kind == GoalKind::PartialCorrect && !same_space(p->exceptional(), p->entry())) {
          error(g.loc, "partial correctness needs program '" + g.program + "' to fail into its entry space");
        }
        break;
      }
      case GoalKind::TotalRefine:
      case GoalKind::PartialRefine: {
        const auto* a = program(g.left, g.loc);
        const auto* b = program(g.right, g.loc);
        if (a == nullptr || b == nullptr) return;
        if (!same_space(a->entry(), b->entry()) || !same_space(a->normal(), b->normal()) ||
            !same_space(a->exceptional(), b->exceptional())) {
          error(g.loc, "programs '" + g.left + "' and '" + g.right + "' have different state spaces");
        } else if (g.kind == GoalKind::PartialRefine && !same_space(a->exceptional(), a->entry())) {
          error(g.loc, "partial refinement needs programs that fail into their entry space");
        }
        break;
      }
      case GoalKind::DataRefine: {
        const auto* a = program(g.left, g.loc);
        const auto* b = program(g.right, g.loc);
        auto rel = env_.relations.find(g.via);
        if (rel == env_.relations.end()) error(g.loc, "unknown relation '" + g.via + "'");
        if (a == nullptr || b == nullptr || rel == env_.relations.end()) return;
        const auto& sigma = rel->second.source();
        const auto& delta = rel->second.target();
        const auto uniform = [](const Transformer& t, const SpaceRef& s) {
          return same_space(t.entry(), s) && same_space(t.normal(), s) && same_space(t.exceptional(), s);
        };
        if (!uniform(*a, sigma)) {
          error(g.loc, "program '" + g.left + "' must run over the source space of relation '" + g.via + "'");
        }
        if (!uniform(*b, delta)) {
          error(g.loc, "program '" + g.right + "' must run over the target space of relation '" + g.via + "'");
        }
        break;
      }
      case GoalKind::Laws:
        for (const auto& id : g.laws) {
          if (!is_law(id)) error(g.loc, "unknown law '" + id + "'");
        }
        break;
    }
    if (diags_.size() != before) return;
    r.program = g.program;
    r.left = g.left;
    r.right = g.right;
    r.data_kind = g.data_kind;
    r.via = g.via;
    r.laws = g.laws;
    env_.goals.push_back(std::move(r));
  }

  Environment env_;
  PredTable preds_;
  std::vector<Diagnostic> diags_;
  bool machine_seen_ = false;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

GoalResult from_verdict(const ResolvedGoal& g, const Verdict& v) {
  GoalResult r;
  r.name = g.name;
  r.kind = to_string(g.kind);
  r.status = v.status;
  r.expected = g.expect.value_or(Status::Holds);
  r.strategy = to_string(v.strategy);
  r.counterexample = v.counterexample;
  return r;
}

void run_laws(const ResolvedGoal& g, const std::vector<std::string>& ids, const RunOptions& opts,
              std::vector<GoalResult>& out) {
  auto cfg = default_gen_config();
  cfg.seed = opts.check.seed;
  std::map<std::string, bool> refutable;
  for (const auto& info : law_registry()) refutable[info.id] = info.expect_refutation;
  for (const auto& id : ids) {
    const auto t0 = Clock::now();
    GoalResult r;
    r.name = g.name == "laws" ? id : g.name + "/" + id;
    r.kind = "laws";
    r.strategy = to_string(StrategyKind::Exhaustive);
    r.expected = refutable[id] ? Status::Refuted : Status::Holds;
    if (g.expect) r.expected = *g.expect;
    const auto rep = check_law(id, cfg, opts.law_trials);
    switch (rep.status) {
      case LawStatus::Pass: r.status = Status::Holds; break;
      case LawStatus::Violated: r.status = Status::Fails; break;
      case LawStatus::ExpectedRefutation: r.status = Status::Refuted; break;
      case LawStatus::Unrefuted: r.status = Status::Unknown; break;
    }
    r.counterexample = rep.counterexample;
    r.elapsed_ms = ms_since(t0);
    out.push_back(std::move(r));
  }
}

}  // namespace

Elaboration elaborate(const SourceModule& m) { return Elaborator().run(m); }

namespace {

std::vector<GoalResult> run_goal(const Environment& env, const ResolvedGoal& g, const RunOptions& opts) {
  std::vector<GoalResult> out;
  if (g.kind == GoalKind::Laws) {
    run_laws(g, g.laws, opts, out);
    return out;
  }
  const auto t0 = Clock::now();
  try {
    Verdict v;
    switch (g.kind) {
      case GoalKind::TotalCorrect:
        v = check_total_correct(*g.pre, env.programs.at(g.program), *g.post, *g.exc);
        break;
      case GoalKind::PartialCorrect:
        v = check_partial_correct(*g.pre, env.programs.at(g.program), *g.post, *g.exc);
        break;
      case GoalKind::TotalRefine:
        v = check_total_refine(env.programs.at(g.left), env.programs.at(g.right), opts.check);
        break;
      case GoalKind::PartialRefine:
        v = check_partial_refine(env.programs.at(g.left), env.programs.at(g.right), opts.check);
        break;
      case GoalKind::DataRefine:
        v = check_data_refine(g.data_kind, env.programs.at(g.left), env.relations.at(g.via),
                              env.programs.at(g.right), opts.check);
        break;
      case GoalKind::Laws: break;
    }
    out.push_back(from_verdict(g, v));
  } catch (const std::exception& e) {
    GoalResult r;
    r.name = g.name;
    r.kind = to_string(g.kind);
    r.expected = g.expect.value_or(Status::Holds);
    r.strategy = to_string(opts.check.strategy);
    r.error = e.what();
    out.push_back(std::move(r));
  }
  out.back().elapsed_ms = ms_since(t0);
  return out;
}

}  // namespace

RunReport run(const Environment& env, const RunOptions& opts) {
  auto goals = env.goals;
  if (!opts.laws.empty()) {
    ResolvedGoal extra;
    extra.name = "laws";
    extra.kind = GoalKind::Laws;
    extra.laws = opts.laws;
    goals.push_back(std::move(extra));
  }
  std::vector<std::vector<GoalResult>> slots(goals.size());
  const auto width = std::min<std::size_t>(std::max<std::size_t>(opts.check.jobs, 1), goals.size());
  if (width <= 1) {
    for (std::size_t i = 0; i < goals.size(); ++i) slots[i] = run_goal(env, goals[i], opts);
  } else {
    // Goals run side by side; each keeps a single-threaded checker.
    auto inner = opts;
    inner.check.jobs = 1;
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < width; ++w) {
      pool.emplace_back([&] {
        for (auto i = next++; i < goals.size(); i = next++) slots[i] = run_goal(env, goals[i], inner);
      });
    }
    for (auto& t : pool) t.join();
  }
  RunReport report;
  for (auto& s : slots) {
    for (auto& r : s) report.goals.push_back(std::move(r));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

using Json = nlohmann::ordered_json;

Json value_json(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return v.scalar;
    case Value::Kind::Bool: return v.as_bool();
    default: return Json(v.items);
  }
}

Json state_json(const StateSpace& space, std::size_t s) {
  Json out = Json::object();
  for (std::size_t i = 0; i < space.vars().size(); ++i) out[space.vars()[i].name] = value_json(space.value(s, i));
  return out;
}

Json states_json(const Predicate& p) {
  Json out = Json::array();
  for (auto s : p.members()) out.push_back(state_json(*p.space(), s));
  return out;
}

std::string states_text(const Predicate& p) {
  std::string out = "[";
  for (auto s : p.members()) {
    if (out.size() > 1) out += ", ";
    out += format_state(*p.space(), s);
  }
  return out + "]";
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

struct Summary {
  std::size_t holds = 0, fails = 0, refuted = 0, unknown = 0;
};

Summary summarize(const RunReport& r) {
  Summary s;
  for (const auto& g : r.goals) {
    switch (g.status) {
      case Status::Holds: ++s.holds; break;
      case Status::Fails: ++s.fails; break;
      case Status::Refuted: ++s.refuted; break;
      case Status::Unknown: ++s.unknown; break;
    }
  }
  return s;
}

std::string emit_json(const RunReport& report, const EmitOptions& opts) {
  Json goals = Json::array();
  for (const auto& g : report.goals) {
    Json j;
    j["name"] = g.name;
    j["kind"] = g.kind;
    j["status"] = to_string(g.status);
    j["expected"] = to_string(g.expected);
    j["strategy"] = g.strategy;
    j["elapsed_ms"] = opts.timings ? std::round(g.elapsed_ms * 1000) / 1000 : 0.0;
    if (g.counterexample) {
      const auto& c = *g.counterexample;
      j["counterexample"] = {{"q", states_json(c.q)},
                             {"r", states_json(c.r)},
                             {"state", state_json(*c.space, c.state)}};
    } else {
      j["counterexample"] = nullptr;
    }
    j["error"] = g.error.empty() ? Json(nullptr) : Json(g.error);
    goals.push_back(std::move(j));
  }
  const auto s = summarize(report);
  Json out;
  out["goals"] = std::move(goals);
  out["summary"] = {{"holds", s.holds}, {"fails", s.fails}, {"refuted", s.refuted}, {"unknown", s.unknown}};
  return out.dump(2) + "\n";
}

std::string emit_text(const RunReport& report, const EmitOptions& opts) {
  std::string out;
  for (const auto& g : report.goals) {
    out += std::string(to_string(g.status)) + "  " + g.name + "  (" + g.kind + ", " + g.strategy + ", " +
           format_ms(opts.timings ? g.elapsed_ms : 0.0) + " ms, expected " + to_string(g.expected) + ")\n";
    if (!g.error.empty()) out += "  error: " + g.error + "\n";
    if (g.counterexample) {
      const auto& c = *g.counterexample;
      out += "  state: " + format_state(*c.space, c.state) + "\n";
      out += "  q: " + states_text(c.q) + "\n";
      out += "  r: " + states_text(c.r) + "\n";
    }
  }
  const auto s = summarize(report);
  out += "summary: " + std::to_string(s.holds) + " holds, " + std::to_string(s.fails) + " fails, " +
         std::to_string(s.refuted) + " refuted, " + std::to_string(s.unknown) + " unknown\n";
  return out;
}

}  // namespace

std::string emit_report(const RunReport& report, const EmitOptions& opts) {
  return opts.format == ReportFormat::Json ? emit_json(report, opts) : emit_text(report, opts);
}

int exit_code(const RunReport& report) {
  for (const auto& g : report.goals) {
    if (!g.as_expected()) return 1;
  }
  return 0;
}

}  // namespace exref
