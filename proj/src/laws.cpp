#include "exref/laws.hpp"

#include "exref/transformer.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace exref {

using namespace ex;

GenConfig default_gen_config(std::int64_t lo, std::int64_t hi, std::size_t vars) {
  static const char* const names[] = {"x", "y", "z", "w"};
  if (vars == 0 || vars > 4) throw std::invalid_argument("default_gen_config: 1 to 4 variables");
  std::vector<VarDecl> decls;
  for (std::size_t i = 0; i < vars; ++i) decls.push_back({names[i], Domain::int_range(lo, hi)});
  GenConfig cfg;
  cfg.space = StateSpace::make(std::move(decls));
  cfg.machine = {lo, hi};
  return cfg;
}

GenConfig single_var_config(std::int64_t lo, std::int64_t hi) { return default_gen_config(lo, hi, 1); }

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(GenConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)), rng_(seed) {}

Statement gen_statement(const GenConfig& cfg) { return Generator(cfg, cfg.seed).statement(); }

Predicate Generator::predicate(const SpaceRef& space) {
  switch (draw(8)) {
    case 0: return Predicate::truth(space);
    case 1: return Predicate::falsity(space);
    default: return Predicate::from_function(space, [this](std::size_t) { return coin(); });
  }
}

Relation Generator::relation(const SpaceRef& from, const SpaceRef& to) {
  const std::uint64_t density = 2 + draw(2);
  return Relation::from_function(from, to, [&](std::size_t, std::size_t) { return draw(density) == 0; });
}

const std::string& Generator::pick_var(const SpaceRef& space) {
  std::vector<const std::string*> ints;
  for (const auto& v : space->vars()) {
    if (v.domain.kind() == Domain::Kind::IntRange) ints.push_back(&v.name);
  }
  if (ints.empty()) throw std::invalid_argument("generator: space has no integer variable");
  return *ints[draw(ints.size())];
}

Expr Generator::int_expr(const SpaceRef& space, std::size_t depth) {
  const auto literal = [&] {
    const auto width = static_cast<std::uint64_t>(cfg_.machine.max - cfg_.machine.min + 1);
    return lit(cfg_.machine.min + static_cast<std::int64_t>(draw(width)));
  };
  if (depth == 0 || draw(3) == 0) return coin() ? var(pick_var(space)) : literal();
  switch (draw(6)) {
    case 0: return bin(BinOp::Add, int_expr(space, depth - 1), int_expr(space, depth - 1));
    case 1: return bin(BinOp::Sub, int_expr(space, depth - 1), int_expr(space, depth - 1));
    case 2: return bin(BinOp::Mul, int_expr(space, depth - 1), int_expr(space, depth - 1));
    case 3: return bin(BinOp::Div, int_expr(space, depth - 1), int_expr(space, depth - 1));
    case 4: return bin(BinOp::Mod, int_expr(space, depth - 1), int_expr(space, depth - 1));
    default: return neg(int_expr(space, depth - 1));
  }
}

Expr Generator::bool_expr(const SpaceRef& space, std::size_t depth) {
  static constexpr BinOp cmp[] = {BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge};
  static constexpr BinOp conn[] = {BinOp::And, BinOp::Or, BinOp::Implies, BinOp::CondAnd, BinOp::CondOr};
  if (depth == 0) return draw(4) == 0 ? lit(coin()) : bin(cmp[draw(6)], int_expr(space, 0), int_expr(space, 0));
  switch (draw(4)) {
    case 0: return not_(bool_expr(space, depth - 1));
    case 1: return bin(conn[draw(5)], bool_expr(space, depth - 1), bool_expr(space, depth - 1));
    default: return bin(cmp[draw(6)], int_expr(space, depth - 1), int_expr(space, depth - 1));
  }
}

Expr Generator::set_expr(const SpaceRef& space) {
  if (coin()) return set_range(int_expr(space, 1), int_expr(space, 1));
  std::vector<Expr> elems;
  const auto n = 1 + draw(2);
  for (std::uint64_t i = 0; i < n; ++i) elems.push_back(int_expr(space, 1));
  return set_of(std::move(elems));
}

Statement Generator::leaf(const SpaceRef& space) {
  const std::uint64_t kinds = cfg_.allow_angelic ? 8 : 7;
  switch (draw(kinds)) {
    case 0: return st::skip();
    case 1: return st::raise_();
    case 2: return st::abort_();
    case 3: return st::stop();
    case 4: return st::assume(predicate(space), predicate(space));
    case 5: {
      auto u = predicate(space);
      auto v = predicate(space);
      if (!cfg_.allow_angelic) v = v & !u;
      return st::assert_(std::move(u), std::move(v));
    }
    case 6: return st::dem_upd(relation(space, space), relation(space, space));
    default: return st::ang_upd(relation(space, space), relation(space, space));
  }
}

Statement Generator::statement(const SpaceRef& space, std::size_t depth) {
  if (depth == 0 || draw(4) == 0) return leaf(space);
  enum Kind { KSeq, KExcSeq, KMeet, KAssign, KNondet, KIf, KJoin, KWhile, KLocal };
  std::vector<Kind> kinds{KSeq, KSeq, KExcSeq, KExcSeq, KMeet, KAssign, KNondet, KIf};
  if (cfg_.allow_angelic) kinds.push_back(KJoin);
  if (cfg_.allow_loops) kinds.push_back(KWhile);
  const auto width = static_cast<std::size_t>(cfg_.machine.max - cfg_.machine.min + 1);
  if (locals_ == 0 && space->size() * width <= 64) kinds.push_back(KLocal);

  switch (kinds[draw(kinds.size())]) {
    case KSeq: return st::seq(statement(space, depth - 1), statement(space, depth - 1));
    case KExcSeq: return st::exc_seq(statement(space, depth - 1), statement(space, depth - 1));
    case KMeet: return st::meet(statement(space, depth - 1), statement(space, depth - 1));
    case KJoin: return st::join(statement(space, depth - 1), statement(space, depth - 1));
    case KAssign: {
      const auto& x = pick_var(space);
      return st::assign(x, int_expr(space, 2));
    }
    case KNondet: {
      const auto& x = pick_var(space);
      return st::nondet(x, set_expr(space));
    }
    case KIf: {
      auto guard = bool_expr(space, 1);
      return st::if_(std::move(guard), statement(space, depth - 1), statement(space, depth - 1));
    }
    case KWhile: {
      auto guard = bool_expr(space, 1);
      return st::while_(std::move(guard), statement(space, depth - 1));
    }
    case KLocal: {
      ++locals_;
      const std::string name = "t" + std::to_string(locals_);
      auto domain = Domain::int_range(cfg_.machine.min, cfg_.machine.max);
      std::optional<Expr> init;
      if (coin()) init = int_expr(space, 1);
      auto inner = space->extended({name, domain});
      auto body = statement(inner, depth - 1);
      return st::local(name, std::move(domain), std::move(init), std::move(body));
    }
  }
  return st::skip();
}

// ---------------------------------------------------------------------------
// Ranked invariants

std::vector<std::int64_t> RankedInvariant::ranks(const MachineParams& m) const {
  const auto& space = *invariant.space();
  std::set<std::int64_t> out;
  for (auto s : invariant.members()) {
    if (!eval_def(variant, space, s, m)) throw std::invalid_argument("variant undefined on an invariant state");
    const auto v = eval_val(variant, space, s, m);
    if (v.kind != Value::Kind::Int || v.as_int() < 0) {
      throw std::invalid_argument("variant is not a natural number on an invariant state");
    }
    out.insert(v.as_int());
  }
  return {out.begin(), out.end()};
}

Predicate RankedInvariant::at(std::int64_t w, const MachineParams& m) const {
  const auto& space = *invariant.space();
  return Predicate::from_function(invariant.space(), [&](std::size_t s) {
    return invariant.contains(s) && eval_val(variant, space, s, m).as_int() == w;
  });
}

Predicate RankedInvariant::below(std::int64_t w, const MachineParams& m) const {
  const auto& space = *invariant.space();
  return Predicate::from_function(invariant.space(), [&](std::size_t s) {
    return invariant.contains(s) && eval_val(variant, space, s, m).as_int() < w;
  });
}

const char* to_string(LawStatus s) {
  switch (s) {
    case LawStatus::Pass: return "PASS";
    case LawStatus::Violated: return "VIOLATED";
    case LawStatus::ExpectedRefutation: return "EXPECTED_REFUTATION";
    case LawStatus::Unrefuted: return "UNREFUTED";
  }
  return "?";
}

std::uint64_t trial_seed(const GenConfig& cfg, std::size_t index) {
  // splitmix64 of (seed, index); never 0, which names a stored witness.
  std::uint64_t x = cfg.seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x == 0 ? 1 : x;
}

// ---------------------------------------------------------------------------
// Law checkers

namespace {

struct Failure {
  Counterexample cex;
  std::string detail;
};

struct Outcome {
  /// False when a conditional law's premise did not hold.
  bool instance = true;
  std::optional<Failure> failure;
};

class Lab {
 public:
  Lab(const GenConfig& cfg, std::uint64_t seed) : cfg(cfg), seed(seed), gen(cfg, seed) {}

  Transformer tf(const Statement& s) const { return compile(s, cfg.space, ctx()); }
  CompileContext ctx() const { return {cfg.machine, nullptr}; }
  Statement stmt() { return gen.statement(); }
  Statement stmt(std::size_t depth) { return gen.statement(depth); }
  Predicate pred() { return gen.predicate(); }

  /// A precondition that often, but not always, makes S meet (q, r).
  Predicate pre(const Transformer& s, const Predicate& q, const Predicate& r) {
    switch (gen.draw(3)) {
      case 0: return pred();
      case 1: return s.wp(q, r) & pred();
      default: return s.wp(q, r);
    }
  }

  const GenConfig& cfg;
  std::uint64_t seed;
  Generator gen;
};

std::string describe(const Predicate& p) {
  std::string out = "[";
  for (auto s : p.members()) {
    if (out.size() > 1) out += ", ";
    out += format_state(*p.space(), s);
  }
  return out + "]";
}

using WpFn = std::function<Predicate(const Predicate&, const Predicate&)>;

/// First (q, r) in checker order where two transformers disagree.
std::optional<Failure> compare(const SpaceRef& normal, const SpaceRef& exc, const WpFn& a, const WpFn& b,
                               const std::string& what) {
  const auto qs = ordered_predicates(normal, PredOrder::WeakestFirst);
  const auto rs = ordered_predicates(exc, PredOrder::StrongestFirst);
  for (const auto& q : qs) {
    for (const auto& r : rs) {
      const auto x = a(q, r);
      const auto y = b(q, r);
      if (!(x == y)) {
        const auto diff = (x & !y) | (y & !x);
        return Failure{{q, r, x.space(), *diff.first()}, what};
      }
    }
  }
  return std::nullopt;
}

std::optional<Failure> compare(const Transformer& a, const Transformer& b, const std::string& what) {
  return compare(
      a.normal(), a.exceptional(), [&](const Predicate& q, const Predicate& r) { return a.wp(q, r); },
      [&](const Predicate& q, const Predicate& r) { return b.wp(q, r); }, what);
}

CheckOptions exhaustive() {
  CheckOptions o;
  o.strategy = StrategyKind::Exhaustive;
  o.max_states = 1024;
  return o;
}

Verdict total_ref(const Transformer& a, const Transformer& b) { return check_total_refine(a, b, exhaustive()); }
Verdict partial_ref(const Transformer& a, const Transformer& b) { return check_partial_refine(a, b, exhaustive()); }
bool holds(const Verdict& v) { return v.status == Status::Holds; }

std::optional<Failure> must_hold(const Verdict& v, const std::string& what) {
  if (holds(v)) return std::nullopt;
  return Failure{*v.counterexample, what};
}

bool total(const Predicate& p, const Transformer& s, const Predicate& q, const Predicate& r) {
  return pred_entails(p, s.wp(q, r));
}
bool partial(const Predicate& p, const Transformer& s, const Predicate& q, const Predicate& r) {
  return pred_entails(p, s.wp(q, p | r));
}

Failure rule_mismatch(const Predicate& p, const Predicate& q, const Predicate& r, bool direct,
                      const std::string& what) {
  return {{q, r, p.space(), p.first().value_or(0)},
          what + ": p = " + describe(p) + ", direct wp says " + (direct ? "holds" : "fails") + ", rule disagrees"};
}

Outcome check_rule(const Predicate& p, const Predicate& q, const Predicate& r, bool direct, bool rule,
                   const std::string& what) {
  Outcome o;
  if (direct != rule) o.failure = rule_mismatch(p, q, r, direct, what);
  return o;
}

/// Largest config on which enumerating every intermediate predicate is cheap.
GenConfig enumeration_config(const GenConfig& cfg) {
  if (cfg.space->size() <= 3) return cfg;
  auto small = single_var_config(0, 1);
  small.max_depth = cfg.max_depth;
  small.allow_angelic = cfg.allow_angelic;
  small.allow_loops = cfg.allow_loops;
  return small;
}

// S ⊑~ move(S), built from the statement forms partial refinement admits.
Statement partial_move(Lab& lab, const Statement& s) {
  switch (lab.gen.draw(lab.cfg.allow_angelic ? 6 : 5)) {
    case 0: return st::raise_();
    case 1: return st::meet(s, st::raise_());
    case 2: return st::if_(lab.gen.bool_expr(1), s, st::raise_());
    case 3: return s;
    case 4: return st::stop();
    default: return st::join(s, lab.stmt(1));
  }
}

// S ⊑ move(S).
Statement total_move(Lab& lab, const Statement& s) {
  switch (lab.gen.draw(lab.cfg.allow_angelic ? 5 : 4)) {
    case 0: return st::stop();
    case 1: return s;
    case 2: return st::seq(s, st::stop());
    case 3: return lab.stmt();
    default: return st::join(s, lab.stmt(1));
  }
}

// --- identity tables --------------------------------------------------------

Outcome table(Lab& lab, const std::vector<std::pair<Statement, Statement>>& rows, const char* name) {
  Outcome o;
  for (std::size_t i = 0; i < rows.size() && !o.failure; ++i) {
    o.failure = compare(lab.tf(rows[i].first), lab.tf(rows[i].second), std::string(name) + " row " + std::to_string(i));
  }
  return o;
}

Outcome basic_identity_table(Lab& lab) {
  const Cond t = PredConst::True, f = PredConst::False;
  return table(lab,
               {{st::assume(t, f), st::skip()},
                {st::skip(), st::assert_(t, f)},
                {st::assume(f, t), st::raise_()},
                {st::raise_(), st::assert_(f, t)},
                {st::assume(f, f), st::stop()},
                {st::assert_(f, f), st::abort_()},
                {st::assume(t, t), st::meet(st::skip(), st::raise_())},
                {st::assert_(t, t), st::join(st::skip(), st::raise_())}},
               "assumption/assertion table");
}

Outcome update_identity_table(Lab& lab) {
  const RelRef id = RelConst::Id, none = RelConst::Empty;
  return table(lab,
               {{st::dem_upd(id, none), st::skip()},
                {st::skip(), st::ang_upd(id, none)},
                {st::dem_upd(none, id), st::raise_()},
                {st::raise_(), st::ang_upd(none, id)},
                {st::dem_upd(none, none), st::stop()},
                {st::ang_upd(none, none), st::abort_()},
                {st::dem_upd(id, id), st::meet(st::skip(), st::raise_())},
                {st::ang_upd(id, id), st::join(st::skip(), st::raise_())}},
               "update table");
}

// --- monoids and lattice ----------------------------------------------------

Outcome seq_skip_unit(Lab& lab) {
  const auto s = lab.stmt();
  Outcome o;
  o.failure = compare(lab.tf(st::seq(st::skip(), s)), lab.tf(s), "skip ; S = S");
  if (!o.failure) o.failure = compare(lab.tf(st::seq(s, st::skip())), lab.tf(s), "S ; skip = S");
  return o;
}

Outcome excseq_raise_unit(Lab& lab) {
  const auto s = lab.stmt();
  Outcome o;
  o.failure = compare(lab.tf(st::exc_seq(st::raise_(), s)), lab.tf(s), "raise ;; S = S");
  if (!o.failure) o.failure = compare(lab.tf(st::exc_seq(s, st::raise_())), lab.tf(s), "S ;; raise = S");
  return o;
}

Outcome seq_monoid(Lab& lab) {
  const auto s = lab.stmt(), t = lab.stmt(), u = lab.stmt();
  Outcome o;
  o.failure = compare(lab.tf(st::seq(st::seq(s, t), u)), lab.tf(st::seq(s, st::seq(t, u))), "(S;T);U = S;(T;U)");
  if (!o.failure) o.failure = compare(lab.tf(st::seq(st::skip(), s)), lab.tf(s), "skip ; S = S");
  if (!o.failure) o.failure = compare(lab.tf(st::seq(s, st::skip())), lab.tf(s), "S ; skip = S");
  return o;
}

Outcome excseq_monoid(Lab& lab) {
  const auto s = lab.stmt(), t = lab.stmt(), u = lab.stmt();
  Outcome o;
  o.failure = compare(lab.tf(st::exc_seq(st::exc_seq(s, t), u)), lab.tf(st::exc_seq(s, st::exc_seq(t, u))),
                      "(S;;T);;U = S;;(T;;U)");
  if (!o.failure) o.failure = compare(lab.tf(st::exc_seq(st::raise_(), s)), lab.tf(s), "raise ;; S = S");
  if (!o.failure) o.failure = compare(lab.tf(st::exc_seq(s, st::raise_())), lab.tf(s), "S ;; raise = S");
  return o;
}

Outcome lattice_bounds(Lab& lab) {
  const auto s = lab.stmt(), t = lab.stmt(), u = lab.stmt();
  const auto S = lab.tf(s), T = lab.tf(t), U = lab.tf(u);
  const auto meet = lab.tf(st::meet(s, t)), join = lab.tf(st::join(s, t));
  Outcome o;
  const std::vector<std::pair<std::function<Verdict()>, const char*>> refinements{
      {[&] { return total_ref(lab.tf(st::abort_()), S); }, "abort ⊑ S"},
      {[&] { return total_ref(S, lab.tf(st::stop())); }, "S ⊑ stop"},
      {[&] { return total_ref(meet, S); }, "S ⊓ T ⊑ S"},
      {[&] { return total_ref(meet, T); }, "S ⊓ T ⊑ T"},
      {[&] { return total_ref(S, join); }, "S ⊑ S ⊔ T"},
      {[&] { return total_ref(T, join); }, "T ⊑ S ⊔ T"},
  };
  for (const auto& [check, what] : refinements) {
    o.failure = must_hold(check(), what);
    if (o.failure) return o;
  }
  // Greatest lower bound and least upper bound.
  if (holds(total_ref(U, S)) && holds(total_ref(U, T))) o.failure = must_hold(total_ref(U, meet), "U ⊑ S ⊓ T");
  if (!o.failure && holds(total_ref(S, U)) && holds(total_ref(T, U))) {
    o.failure = must_hold(total_ref(join, U), "S ⊔ T ⊑ U");
  }
  if (!o.failure) o.failure = compare(meet, lab.tf(st::meet(t, s)), "S ⊓ T = T ⊓ S");
  if (!o.failure) o.failure = compare(join, lab.tf(st::join(t, s)), "S ⊔ T = T ⊔ S");
  if (!o.failure) o.failure = compare(lab.tf(st::meet(s, st::join(s, t))), S, "S ⊓ (S ⊔ T) = S");
  if (!o.failure) o.failure = compare(lab.tf(st::join(s, st::meet(s, t))), S, "S ⊔ (S ⊓ T) = S");
  return o;
}

// --- correctness rules --------------------------------------------------------

/// q[x \ val E] together with def E.
std::pair<Predicate, Predicate> substitute(const Lab& lab, const std::string& x, const Expr& e,
                                           const Predicate& q) {
  const auto& space = lab.cfg.space;
  const auto var = *space->find(x);
  const auto& dom = space->vars()[var].domain;
  Predicate def(space), sub(space);
  for (std::size_t s = 0; s < space->size(); ++s) {
    if (!eval_def(e, *space, s, lab.cfg.machine)) continue;
    const auto vi = dom.index_of(eval_val(e, *space, s, lab.cfg.machine));
    if (!vi) continue;
    def.set(s);
    sub.set(s, q.contains(space->with_coordinate(s, var, *vi)));
  }
  return {def, sub};
}

/// ∀x' ∈ val ES. q[x \ x'] together with def ES.
std::pair<Predicate, Predicate> substitute_all(const Lab& lab, const std::string& x, const Expr& es,
                                               const Predicate& q) {
  const auto& space = lab.cfg.space;
  const auto var = *space->find(x);
  const auto& dom = space->vars()[var].domain;
  Predicate def(space), sub(space);
  for (std::size_t s = 0; s < space->size(); ++s) {
    if (!eval_def(es, *space, s, lab.cfg.machine)) continue;
    const auto set = eval_val(es, *space, s, lab.cfg.machine);
    bool in_domain = true, all = true;
    for (auto v : set.items) {
      const auto vi = dom.index_of(Value::integer(v));
      if (!vi) {
        in_domain = false;
        break;
      }
      all = all && q.contains(space->with_coordinate(s, var, *vi));
    }
    if (!in_domain) continue;
    def.set(s);
    sub.set(s, all);
  }
  return {def, sub};
}

struct Guard {
  Predicate def;
  Predicate val;
};

Guard guard_of(const Lab& lab, const Expr& b) {
  const auto& space = lab.cfg.space;
  auto def = def_pred(b, space, lab.cfg.machine);
  auto val = Predicate::from_function(
      space, [&](std::size_t s) { return def.contains(s) && eval_val(b, *space, s, lab.cfg.machine).as_bool(); });
  return {def, val};
}

template <bool Partial>
bool correct(const Predicate& p, const Transformer& s, const Predicate& q, const Predicate& r) {
  return Partial ? partial(p, s, q, r) : total(p, s, q, r);
}

template <bool Partial>
Outcome rule_abort(Lab& lab) {
  const auto p = lab.pred(), q = lab.pred(), r = lab.pred();
  return check_rule(p, q, r, correct<Partial>(p, lab.tf(st::abort_()), q, r), p.is_false(), "abort rule");
}

template <bool Partial>
Outcome rule_stop(Lab& lab) {
  const auto p = lab.pred(), q = lab.pred(), r = lab.pred();
  return check_rule(p, q, r, correct<Partial>(p, lab.tf(st::stop()), q, r), true, "stop rule");
}

template <bool Partial>
Outcome rule_skip(Lab& lab) {
  const auto q = lab.pred(), r = lab.pred();
  const auto S = lab.tf(st::skip());
  const auto p = lab.pre(S, q, r);
  return check_rule(p, q, r, correct<Partial>(p, S, q, r), pred_entails(p, q), "skip rule");
}

template <bool Partial>
Outcome rule_raise(Lab& lab) {
  const auto q = lab.pred(), r = lab.pred();
  const auto S = lab.tf(st::raise_());
  const auto p = lab.pre(S, q, r);
  const bool rule = Partial ? true : pred_entails(p, r);
  return check_rule(p, q, r, correct<Partial>(p, S, q, r), rule, "raise rule");
}

template <bool Partial>
Outcome rule_assign(Lab& lab) {
  const auto& x = lab.cfg.space->vars()[lab.gen.draw(lab.cfg.space->vars().size())].name;
  const auto e = lab.gen.int_expr(2);
  const auto q = lab.pred(), r = lab.pred();
  const auto S = lab.tf(st::assign(x, e));
  const auto p = lab.pre(S, q, r);
  const auto [def, sub] = substitute(lab, x, e, q);
  bool rule = pred_entails(def & p, sub);
  if (!Partial) rule = rule && pred_entails(!def & p, r);
  return check_rule(p, q, r, correct<Partial>(p, S, q, r), rule, "assignment rule");
}

template <bool Partial>
Outcome rule_nondet(Lab& lab) {
  const auto& x = lab.cfg.space->vars()[lab.gen.draw(lab.cfg.space->vars().size())].name;
  const auto es = lab.gen.coin() ? set_range(lab.gen.int_expr(1), lab.gen.int_expr(1))
                                 : set_of({lab.gen.int_expr(1), lab.gen.int_expr(1)});
  const auto q = lab.pred(), r = lab.pred();
  const auto S = lab.tf(st::nondet(x, es));
  const auto p = lab.pre(S, q, r);
  const auto [def, sub] = substitute_all(lab, x, es, q);
  bool rule = pred_entails(def & p, sub);
  if (!Partial) rule = rule && pred_entails(!def & p, r);
  return check_rule(p, q, r, correct<Partial>(p, S, q, r), rule, "nondeterministic assignment rule");
}

template <bool Partial>
Outcome rule_meet(Lab& lab) {
  const auto s = lab.stmt(), t = lab.stmt();
  const auto q = lab.pred(), r = lab.pred();
  const auto C = lab.tf(st::meet(s, t));
  const auto p = lab.pre(C, q, r);
  const bool rule = correct<Partial>(p, lab.tf(s), q, r) && correct<Partial>(p, lab.tf(t), q, r);
  return check_rule(p, q, r, correct<Partial>(p, C, q, r), rule, "demonic choice rule");
}

template <bool Partial>
Outcome rule_if(Lab& lab) {
  const auto b = lab.gen.bool_expr(2);
  const auto s = lab.stmt(lab.cfg.max_depth > 0 ? lab.cfg.max_depth - 1 : 0);
  const auto t = lab.stmt(lab.cfg.max_depth > 0 ? lab.cfg.max_depth - 1 : 0);
  const auto q = lab.pred(), r = lab.pred();
  const auto C = lab.tf(st::if_(b, s, t));
  const auto p = lab.pre(C, q, r);
  const auto g = guard_of(lab, b);
  bool rule;
  if (Partial) {
    rule = total(g.def & g.val & p, lab.tf(s), q, p | r) && total(g.def & !g.val & p, lab.tf(t), q, p | r);
  } else {
    rule = total(g.def & g.val & p, lab.tf(s), q, r) && total(g.def & !g.val & p, lab.tf(t), q, r) &&
           pred_entails(!g.def & p, r);
  }
  return check_rule(p, q, r, correct<Partial>(p, C, q, r), rule, "conditional rule");
}

/// The rules for S ; T and try S catch T, whose right-hand sides quantify
/// over an intermediate predicate h.
template <bool Partial, bool Try>
std::optional<Failure> exists_rule_instance(Lab& lab, bool enumerate) {
  const auto s = lab.stmt(), t = lab.stmt();
  const auto q = lab.pred(), r = lab.pred();
  const auto S = lab.tf(s), T = lab.tf(t);
  const auto C = lab.tf(Try ? st::try_catch(s, t) : st::seq(s, t));
  const auto p = lab.pre(C, q, r);
  const auto r2 = Partial ? p | r : r;
  const auto rhs = [&](const Predicate& h) {
    const bool first = Try ? total(p, S, q, h) : (Partial ? partial(p, S, h, r) : total(p, S, h, r));
    return first && total(h, T, q, r2);
  };
  const bool direct = correct<Partial>(p, C, q, r);
  const char* what = Try ? "try/catch rule" : "sequential rule";
  if (rhs(T.wp(q, r2)) != direct) return rule_mismatch(p, q, r, direct, std::string(what) + " (canonical h)");
  if (enumerate) {
    bool any = false;
    for (const auto& h : ordered_predicates(lab.cfg.space)) {
      if (rhs(h)) {
        any = true;
        break;
      }
    }
    if (any != direct) return rule_mismatch(p, q, r, direct, std::string(what) + " (enumerated h)");
  }
  return std::nullopt;
}

template <bool Partial, bool Try>
Outcome rule_exists(Lab& lab) {
  Outcome o;
  o.failure = exists_rule_instance<Partial, Try>(lab, lab.cfg.space->size() <= 3);
  if (!o.failure && lab.cfg.space->size() > 3) {
    const auto small = enumeration_config(lab.cfg);
    Lab sub(small, lab.gen.draw(std::numeric_limits<std::uint64_t>::max()));
    o.failure = exists_rule_instance<Partial, Try>(sub, true);
  }
  return o;
}

/// S ⊑ T (or ⊑~) against preservation of every (p, q, r) correctness triple.
template <bool Partial>
Outcome refine_iff(Lab& outer) {
  const auto small = enumeration_config(outer.cfg);
  Lab lab(small, outer.gen.draw(std::numeric_limits<std::uint64_t>::max()));
  const auto s = lab.stmt();
  const auto t = lab.gen.coin() ? (Partial ? partial_move(lab, s) : total_move(lab, s)) : lab.stmt();
  const auto S = lab.tf(s), T = lab.tf(t);
  const bool refines = holds(Partial ? partial_ref(S, T) : total_ref(S, T));
  const auto preds = ordered_predicates(lab.cfg.space);
  for (const auto& p : preds) {
    for (const auto& q : preds) {
      for (const auto& r : preds) {
        if (correct<Partial>(p, S, q, r) && !correct<Partial>(p, T, q, r)) {
          Outcome o;
          if (refines) {
            o.failure = Failure{{q, r, lab.cfg.space, p.first().value_or(0)},
                                "refinement holds but correctness is not preserved for p = " + describe(p)};
          }
          return o;
        }
      }
    }
  }
  Outcome o;
  if (!refines) {
    o.failure = Failure{{preds.front(), preds.front(), lab.cfg.space, 0},
                        "every correctness triple is preserved but refinement fails"};
  }
  return o;
}

Outcome partial_consequence(Lab& lab) {
  const auto S = lab.tf(lab.stmt());
  const auto q = lab.pred(), r = lab.pred();
  auto p = lab.pred();
  // Shrink p until ⟪p⟫ S ⟪q, r⟫ holds.
  for (;;) {
    const auto next = p & S.wp(q, p | r);
    if (next == p) break;
    p = next;
  }
  const auto q2 = q | lab.pred(), r2 = r | lab.pred();
  Outcome o;
  o.instance = !p.is_false();
  if (!partial(p, S, q2, r2)) o.failure = rule_mismatch(p, q2, r2, false, "weakened postconditions");
  return o;
}

Outcome total_implies_partial_correct(Lab& lab) {
  const auto S = lab.tf(lab.stmt());
  const auto q = lab.pred(), r = lab.pred();
  const auto p = lab.pre(S, q, r);
  Outcome o;
  o.instance = total(p, S, q, r);
  if (o.instance && !partial(p, S, q, r)) o.failure = rule_mismatch(p, q, r, false, "total but not partial");
  return o;
}

// --- loops --------------------------------------------------------------------

template <bool Partial>
Outcome loop_law(Lab& lab) {
  const auto& space = lab.cfg.space;
  const auto& m = lab.cfg.machine;
  const auto& vars = space->vars();
  const auto& x = vars[lab.gen.draw(vars.size())].name;

  const auto guard = lab.gen.bool_expr(1);
  const auto dec = st::assign(x, bin(BinOp::Sub, var(x), lit(1)));
  const std::size_t depth = lab.cfg.max_depth > 0 ? lab.cfg.max_depth - 1 : 0;
  Statement body = lab.stmt(depth);
  switch (lab.gen.draw(3)) {
    case 0: body = dec; break;
    case 1: body = st::seq(lab.stmt(depth), dec); break;
    default: break;
  }

  Expr variant = var(x);
  switch (lab.gen.draw(3)) {
    case 0: variant = bin(BinOp::Sub, lit(m.max), var(x)); break;
    case 1:
      if (vars.size() > 1) variant = bin(BinOp::Add, var(vars[0].name), var(vars[1].name));
      break;
    default: break;
  }

  const auto S = lab.tf(body);
  const auto g = guard_of(lab, guard);
  const auto r = lab.pred();
  const auto ranked = Predicate::from_function(space, [&](std::size_t s) {
    return eval_def(variant, *space, s, m) && eval_val(variant, *space, s, m).as_int() >= 0;
  });
  RankedInvariant inv{lab.pred() & ranked, variant};
  // Shrink the invariant until the premise holds for every rank.
  for (bool changed = true; changed;) {
    changed = false;
    for (auto w : inv.ranks(m)) {
      const auto entry = inv.at(w, m) & g.def & g.val;
      const auto ok = Partial ? S.wp(inv.below(w, m), entry | r) : S.wp(inv.below(w, m), r);
      const auto bad = entry & !ok;
      if (!bad.is_false()) {
        inv.invariant = inv.invariant & !bad;
        changed = true;
      }
    }
  }

  const auto& p = inv.invariant;
  const auto loop = lab.tf(st::while_(guard, body));
  const auto q = p & g.def & !g.val;
  Outcome o;
  o.instance = !p.is_false();
  const bool ok = Partial ? partial(p, loop, q, r) : total(p, loop, q, (p & !g.def) | r);
  if (!ok) o.failure = rule_mismatch(p, q, r, false, "loop rule conclusion");
  return o;
}

// --- partial refinement -----------------------------------------------------------

Outcome thm4(Lab& lab) { return refine_iff<true>(lab); }

Outcome thm5_raise_top(Lab& lab) {
  Outcome o;
  o.failure = must_hold(partial_ref(lab.tf(lab.stmt()), lab.tf(st::raise_())), "S ⊑~ raise");
  return o;
}

Outcome thm5_total_implies_partial(Lab& lab) {
  const auto s = lab.stmt();
  const auto S = lab.tf(s), T = lab.tf(total_move(lab, s));
  Outcome o;
  o.instance = holds(total_ref(S, T));
  if (o.instance) o.failure = must_hold(partial_ref(S, T), "S ⊑ T but not S ⊑~ T");
  return o;
}

Outcome thm6_preorder(Lab& lab) {
  const auto s = lab.stmt();
  const auto t = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, s);
  const auto u = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, t);
  const auto S = lab.tf(s), T = lab.tf(t), U = lab.tf(u);
  Outcome o;
  o.failure = must_hold(partial_ref(S, S), "S ⊑~ S");
  if (o.failure) return o;
  o.instance = holds(partial_ref(S, T)) && holds(partial_ref(T, U));
  if (o.instance) o.failure = must_hold(partial_ref(S, U), "S ⊑~ T ⊑~ U but not S ⊑~ U");
  return o;
}

Outcome nonantisymmetry_witness(Lab& lab) {
  const auto stop = lab.tf(st::stop()), raise = lab.tf(st::raise_());
  Outcome o;
  o.failure = must_hold(partial_ref(stop, raise), "stop ⊑~ raise");
  if (!o.failure) o.failure = must_hold(partial_ref(raise, stop), "raise ⊑~ stop");
  if (!o.failure && !compare(stop, raise, "")) {
    const auto t = Predicate::truth(lab.cfg.space);
    o.failure = Failure{{t, t, lab.cfg.space, 0}, "stop and raise have equal transformers"};
  }
  return o;
}

using Combine = std::function<Statement(const Statement&, const Statement&)>;

/// S ⊑~ S' ⇒ C(S) ⊑~ C(S') for a context C.
Outcome monotone_in(Lab& lab, const Combine& context, const char* what) {
  const auto s = lab.stmt();
  const auto s2 = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, s);
  Outcome o;
  o.instance = holds(partial_ref(lab.tf(s), lab.tf(s2)));
  if (o.instance) {
    const auto t = lab.stmt();
    o.failure = must_hold(partial_ref(lab.tf(context(s, t)), lab.tf(context(s2, t))), what);
  }
  return o;
}

Outcome thm7_seq_left_mono(Lab& lab) {
  return monotone_in(lab, [](const Statement& s, const Statement& t) { return st::seq(s, t); }, "S ; T ⊑~ S' ; T");
}

Outcome thm7_meet_mono(Lab& lab) {
  const auto s = lab.stmt(), t = lab.stmt();
  const auto s2 = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, s);
  const auto t2 = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, t);
  Outcome o;
  o.instance = holds(partial_ref(lab.tf(s), lab.tf(s2))) && holds(partial_ref(lab.tf(t), lab.tf(t2)));
  if (o.instance) o.failure = must_hold(partial_ref(lab.tf(st::meet(s, t)), lab.tf(st::meet(s2, t2))), "S ⊓ T ⊑~ S' ⊓ T'");
  return o;
}

Outcome thm7_if_mono(Lab& lab) {
  const auto b = lab.gen.bool_expr(2);
  const auto s = lab.stmt(), t = lab.stmt();
  const auto s2 = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, s);
  const auto t2 = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, t);
  Outcome o;
  o.instance = holds(partial_ref(lab.tf(s), lab.tf(s2))) && holds(partial_ref(lab.tf(t), lab.tf(t2)));
  if (o.instance) {
    o.failure = must_hold(partial_ref(lab.tf(st::if_(b, s, t)), lab.tf(st::if_(b, s2, t2))),
                          "if B then S else T ⊑~ if B then S' else T'");
  }
  return o;
}

/// An integer variable with at least two values, and the assignment of its
/// largest value.
std::optional<Statement> witness_assignment(const Lab& lab) {
  for (const auto& v : lab.cfg.space->vars()) {
    const auto& d = v.domain;
    if (d.kind() == Domain::Kind::IntRange && d.lo() < d.hi() && lab.cfg.machine.fits(d.hi())) {
      return st::assign(v.name, lit(d.hi()));
    }
  }
  return std::nullopt;
}

struct NonMonotone {
  Statement s, s2, t;
};

/// Outcome whose failure records a refutation of C(S) ⊑~ C(S') with S ⊑~ S'.
Outcome refute(Lab& lab, const NonMonotone& w, const Combine& context, const std::string& what) {
  Outcome o;
  o.instance = holds(partial_ref(lab.tf(w.s), lab.tf(w.s2)));
  if (!o.instance) return o;
  const auto v = partial_ref(lab.tf(context(w.t, w.s)), lab.tf(context(w.t, w.s2)));
  if (!holds(v)) o.failure = Failure{*v.counterexample, what};
  return o;
}

/// Seed 0 replays the stored witness; other seeds search.
Outcome non_monotone(Lab& lab, const Combine& context, const std::function<std::optional<NonMonotone>(const Lab&)>& stored,
                     const std::string& shape) {
  if (lab.seed == 0) {
    const auto w = stored(lab);
    if (!w) return {false, std::nullopt};
    return refute(lab, *w, context, "stored witness: " + shape);
  }
  NonMonotone w{lab.stmt(), st::skip(), lab.stmt()};
  w.s2 = partial_move(lab, w.s);
  if (lab.gen.coin()) {
    if (auto a = witness_assignment(lab)) w.t = lab.gen.coin() ? *a : st::seq(*a, lab.stmt(1));
  }
  return refute(lab, w, context, "search: " + shape);
}

Outcome thm7_seq_right_nonmono(Lab& lab) {
  return non_monotone(
      lab, [](const Statement& t, const Statement& s) { return st::seq(t, s); },
      [](const Lab& l) -> std::optional<NonMonotone> {
        auto a = witness_assignment(l);
        if (!a) return std::nullopt;
        return NonMonotone{st::skip(), st::raise_(), *a};
      },
      "S ⊑~ S' but not T ; S ⊑~ T ; S' (T = x := max, S = skip, S' = raise)");
}

Outcome thm7_excseq_left_nonmono(Lab& lab) {
  return non_monotone(
      lab, [](const Statement& t, const Statement& s) { return st::exc_seq(s, t); },
      [](const Lab& l) -> std::optional<NonMonotone> {
        auto a = witness_assignment(l);
        if (!a) return std::nullopt;
        return NonMonotone{st::skip(), st::raise_(), *a};
      },
      "S ⊑~ S' but not S ;; T ⊑~ S' ;; T (S = skip, S' = raise, T = x := max)");
}

Outcome thm7_excseq_right_nonmono(Lab& lab) {
  return non_monotone(
      lab, [](const Statement& t, const Statement& s) { return st::exc_seq(t, s); },
      [](const Lab& l) -> std::optional<NonMonotone> {
        auto a = witness_assignment(l);
        if (!a) return std::nullopt;
        return NonMonotone{st::skip(), st::raise_(), st::seq(*a, st::raise_())};
      },
      "S ⊑~ S' but not T ;; S ⊑~ T ;; S' (T = x := max ; raise, S = skip, S' = raise)");
}

// --- incremental development --------------------------------------------------------

Outcome incremental_combination(Lab& lab) {
  const auto b = lab.gen.bool_expr(2), b2 = lab.gen.bool_expr(2);
  const auto s = lab.stmt();
  const auto t = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, s);
  const auto t2 = lab.gen.draw(4) == 0 ? lab.stmt() : partial_move(lab, s);
  const auto S = lab.tf(s);
  Outcome o;
  o.instance = holds(partial_ref(S, lab.tf(st::if_(b, t, st::raise_())))) &&
               holds(partial_ref(S, lab.tf(st::if_(b2, t2, st::raise_()))));
  if (o.instance) {
    o.failure = must_hold(partial_ref(S, lab.tf(st::if_(b, t, st::if_(b2, t2, st::raise_())))),
                          "S ⊑~ if B then T else if B' then T' else raise");
  }
  return o;
}

Outcome cond_disj_switch_identity(Lab& lab) {
  const auto b = lab.gen.bool_expr(2), b2 = lab.gen.bool_expr(2);
  const auto t = lab.stmt(), t2 = lab.stmt();
  Outcome o;
  o.failure = compare(lab.tf(st::if_(b, t, st::if_(b2, t2, st::raise_()))),
                      lab.tf(st::if_(bin(BinOp::CondOr, b, b2), st::if_(b, t, t2), st::raise_())),
                      "switch = if B ∨c B' then (if B then T else T') else raise");
  return o;
}

Outcome tryfinally_desugar(Lab& lab) {
  const auto s = lab.stmt(), t = lab.stmt(), u = lab.stmt();
  const auto C = lab.tf(st::try_catch_finally(s, t, u));
  const auto S = lab.tf(s), T = lab.tf(t), U = lab.tf(u);
  Outcome o;
  o.failure = compare(
      C.normal(), C.exceptional(), [&](const Predicate& q, const Predicate& r) { return C.wp(q, r); },
      [&](const Predicate& q, const Predicate& r) {
        const auto uq = U.wp(q, r);
        return S.wp(uq, T.wp(uq, U.wp(r, r)));
      },
      "try S catch T finally U = S(U(q,r), T(U(q,r), U(r,r)))");
  return o;
}

Outcome coatomic_soundness(Lab& outer) {
  auto cfg = enumeration_config(outer.cfg);
  cfg.allow_angelic = false;
  Lab lab(cfg, outer.gen.draw(std::numeric_limits<std::uint64_t>::max()));
  const auto s = lab.stmt();
  Statement t = lab.stmt();
  switch (lab.gen.draw(4)) {
    case 0: t = st::meet(s, t); break;
    case 1: t = total_move(lab, s); break;
    default: break;
  }
  const bool swap = lab.gen.coin();
  const auto S = lab.tf(swap ? t : s), T = lab.tf(swap ? s : t);
  Outcome o;
  o.instance = S.conjunctive() && T.conjunctive();
  if (!o.instance) return o;
  CheckOptions co;
  co.strategy = StrategyKind::Coatomic;
  for (bool part : {false, true}) {
    const auto a = part ? check_partial_refine(S, T, co) : check_total_refine(S, T, co);
    const auto b = part ? partial_ref(S, T) : total_ref(S, T);
    if (a.status != b.status) {
      const auto& cex = a.counterexample ? *a.counterexample : *b.counterexample;
      o.failure = Failure{cex, std::string(part ? "partial" : "total") + " refinement: coatomic says " +
                                   to_string(a.status) + ", exhaustive says " + to_string(b.status)};
      return o;
    }
  }
  return o;
}

// --- registry -----------------------------------------------------------------------

struct Law {
  LawInfo info;
  Outcome (*run)(Lab&);
  /// Runs once regardless of the trial count.
  bool fixed = false;
};

const std::vector<Law>& laws() {
  static const std::vector<Law> table{
      {{"basic_identity_table", false, "[u,v] and {u,v} at constant arguments equal the basic statements"},
       basic_identity_table, true},
      {{"update_identity_table", false, "[Q,R] and {Q,R} at id and empty equal the basic statements"},
       update_identity_table, true},
      {{"seq_skip_unit", false, "skip is a unit of ;"}, seq_skip_unit},
      {{"excseq_raise_unit", false, "raise is a unit of ;;"}, excseq_raise_unit},
      {{"seq_monoid", false, "; is associative with unit skip"}, seq_monoid},
      {{"excseq_monoid", false, ";; is associative with unit raise"}, excseq_monoid},
      {{"lattice_bounds", false, "abort and stop bound the lattice; meet and join are glb and lub"}, lattice_bounds},
      {{"thm1_abort", false, "total correctness of abort"}, rule_abort<false>},
      {{"thm1_stop", false, "total correctness of stop"}, rule_stop<false>},
      {{"thm1_skip", false, "total correctness of skip"}, rule_skip<false>},
      {{"thm1_raise", false, "total correctness of raise"}, rule_raise<false>},
      {{"thm1_assign", false, "total correctness of x := E"}, rule_assign<false>},
      {{"thm1_nondet_assign", false, "total correctness of x :in ES"}, rule_nondet<false>},
      {{"thm1_seq", false, "total correctness of S ; T"}, rule_exists<false, false>},
      {{"thm1_try_catch", false, "total correctness of try S catch T"}, rule_exists<false, true>},
      {{"thm1_demonic_choice", false, "total correctness of S ⊓ T"}, rule_meet<false>},
      {{"thm1_if", false, "total correctness of if B then S else T"}, rule_if<false>},
      {{"thm2_refine_iff", false, "S ⊑ T iff T preserves total correctness of S"}, refine_iff<false>},
      {{"thm3_abort", false, "partial correctness of abort"}, rule_abort<true>},
      {{"thm3_stop", false, "partial correctness of stop"}, rule_stop<true>},
      {{"thm3_skip", false, "partial correctness of skip"}, rule_skip<true>},
      {{"thm3_raise", false, "partial correctness of raise"}, rule_raise<true>},
      {{"thm3_assign", false, "partial correctness of x := E"}, rule_assign<true>},
      {{"thm3_nondet_assign", false, "partial correctness of x :in ES"}, rule_nondet<true>},
      {{"thm3_seq", false, "partial correctness of S ; T"}, rule_exists<true, false>},
      {{"thm3_try_catch", false, "partial correctness of try S catch T"}, rule_exists<true, true>},
      {{"thm3_demonic_choice", false, "partial correctness of S ⊓ T"}, rule_meet<true>},
      {{"thm3_if", false, "partial correctness of if B then S else T"}, rule_if<true>},
      {{"partial_consequence", false, "partial correctness allows weakening both postconditions"},
       partial_consequence},
      {{"total_implies_partial_correct", false, "total correctness implies partial correctness"},
       total_implies_partial_correct},
      {{"thm_loop_total", false, "ranked invariant rule for loops, total correctness"}, loop_law<false>},
      {{"thm_loop_partial", false, "ranked invariant rule for loops, partial correctness"}, loop_law<true>},
      {{"thm4_partial_refine_iff", false, "S ⊑~ T iff T preserves partial correctness of S"}, thm4},
      {{"thm5_raise_top", false, "raise is a top element of partial refinement"}, thm5_raise_top},
      {{"thm5_total_implies_partial", false, "total refinement implies partial refinement"},
       thm5_total_implies_partial},
      {{"thm6_preorder", false, "partial refinement is reflexive and transitive"}, thm6_preorder},
      {{"nonantisymmetry_witness", false, "stop ⊑~ raise and raise ⊑~ stop but stop ≠ raise"},
       nonantisymmetry_witness, true},
      {{"thm7_seq_left_mono", false, "; is monotonic in its first operand under ⊑~"}, thm7_seq_left_mono},
      {{"thm7_meet_mono", false, "⊓ is monotonic under ⊑~"}, thm7_meet_mono},
      {{"thm7_if_mono", false, "the conditional is monotonic under ⊑~"}, thm7_if_mono},
      {{"thm7_seq_right_nonmono", true, "; is not monotonic in its second operand under ⊑~"},
       thm7_seq_right_nonmono},
      {{"thm7_excseq_left_nonmono", true, ";; is not monotonic in its first operand under ⊑~"},
       thm7_excseq_left_nonmono},
      {{"thm7_excseq_right_nonmono", true, ";; is not monotonic in its second operand under ⊑~"},
       thm7_excseq_right_nonmono},
      {{"incremental_combination", false, "two partial refinements combine into a switch"},
       incremental_combination},
      {{"cond_disj_switch_identity", false, "a switch equals a conditional on B ∨c B'"}, cond_disj_switch_identity},
      {{"tryfinally_desugar", false, "try/catch/finally matches its wp formula"}, tryfinally_desugar},
      {{"coatomic_soundness", false, "co-atomic refinement verdicts agree with exhaustive ones"},
       coatomic_soundness},
  };
  return table;
}

const Law& find_law(const std::string& id) {
  for (const auto& l : laws()) {
    if (l.info.id == id) return l;
  }
  throw std::invalid_argument("unknown law: " + id);
}

void record(LawReport& rep, LawStatus status, std::uint64_t seed, Failure f) {
  rep.status = status;
  rep.seed = seed;
  rep.counterexample = std::move(f.cex);
  rep.detail = std::move(f.detail);
}

}  // namespace

const std::vector<LawInfo>& law_registry() {
  static const std::vector<LawInfo> infos = [] {
    std::vector<LawInfo> out;
    for (const auto& l : laws()) out.push_back(l.info);
    return out;
  }();
  return infos;
}

bool is_law(const std::string& id) {
  return std::any_of(laws().begin(), laws().end(), [&](const Law& l) { return l.info.id == id; });
}

LawReport check_law(const std::string& id, const GenConfig& cfg, std::size_t trials) {
  const auto& law = find_law(id);
  LawReport rep;
  rep.law_id = id;

  if (law.info.expect_refutation) {
    rep.status = LawStatus::Unrefuted;
    Lab stored(cfg, 0);
    auto w = law.run(stored);
    if (w.failure) record(rep, LawStatus::ExpectedRefutation, 0, std::move(*w.failure));
    std::size_t found = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      const auto seed = trial_seed(cfg, i);
      Lab lab(cfg, seed);
      auto o = law.run(lab);
      ++rep.trials;
      if (o.instance) ++rep.instances;
      if (!o.failure) continue;
      if (found++ == 0 && rep.status == LawStatus::Unrefuted) {
        record(rep, LawStatus::ExpectedRefutation, seed, std::move(*o.failure));
      }
    }
    rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("search refuted ") + std::to_string(found) + " of " +
                  std::to_string(rep.trials) + " trials";
    return rep;
  }

  const std::size_t n = law.fixed ? 1 : trials;
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = law.fixed ? 0 : trial_seed(cfg, i);
    Lab lab(cfg, seed);
    auto o = law.run(lab);
    ++rep.trials;
    if (o.instance) ++rep.instances;
    if (o.failure) {
      record(rep, LawStatus::Violated, seed, std::move(*o.failure));
      return rep;
    }
  }
  return rep;
}

LawReport replay_law(const std::string& id, const GenConfig& cfg, std::uint64_t seed) {
  const auto& law = find_law(id);
  LawReport rep;
  rep.law_id = id;
  rep.trials = 1;
  Lab lab(cfg, seed);
  auto o = law.run(lab);
  rep.instances = o.instance ? 1 : 0;
  rep.status = law.info.expect_refutation ? LawStatus::Unrefuted : LawStatus::Pass;
  if (o.failure) {
    record(rep, law.info.expect_refutation ? LawStatus::ExpectedRefutation : LawStatus::Violated, seed,
           std::move(*o.failure));
  }
  return rep;
}

}  // namespace exref
