#include "exref/transformer.hpp"

#include <algorithm>
#include <limits>

namespace exref {

class TransformerNode {
 public:
  TransformerNode(SpaceRef entry, SpaceRef normal, SpaceRef exceptional)
      : entry_(std::move(entry)), normal_(std::move(normal)), exceptional_(std::move(exceptional)) {}
  virtual ~TransformerNode() = default;

  const SpaceRef& entry() const { return entry_; }
  const SpaceRef& normal() const { return normal_; }
  const SpaceRef& exceptional() const { return exceptional_; }

  virtual Predicate wp(const Predicate& q, const Predicate& r) const = 0;
  virtual bool conjunctive() const = 0;

 private:
  SpaceRef entry_;
  SpaceRef normal_;
  SpaceRef exceptional_;
};

namespace {

using NodePtr = std::shared_ptr<const TransformerNode>;
constexpr std::size_t kUndefined = std::numeric_limits<std::size_t>::max();

class ConstNode final : public TransformerNode {
 public:
  ConstNode(SpaceRef entry, SpaceRef normal, SpaceRef exc, bool value)
      : TransformerNode(std::move(entry), std::move(normal), std::move(exc)), value_(value) {}
  Predicate wp(const Predicate&, const Predicate&) const override { return Predicate(entry(), value_); }
  bool conjunctive() const override { return true; }

 private:
  bool value_;
};

class SkipNode final : public TransformerNode {
 public:
  using TransformerNode::TransformerNode;
  Predicate wp(const Predicate& q, const Predicate&) const override { return q; }
  bool conjunctive() const override { return true; }
};

class RaiseNode final : public TransformerNode {
 public:
  using TransformerNode::TransformerNode;
  Predicate wp(const Predicate&, const Predicate& r) const override { return r; }
  bool conjunctive() const override { return true; }
};

// [u, v](q, r) = (u => q) and (v => r)
class AssumeNode final : public TransformerNode {
 public:
  AssumeNode(SpaceRef space, Predicate u, Predicate v)
      : TransformerNode(space, space, space), u_(std::move(u)), v_(std::move(v)) {}
  Predicate wp(const Predicate& q, const Predicate& r) const override { return u_.implies(q) & v_.implies(r); }
  bool conjunctive() const override { return true; }

 private:
  Predicate u_;
  Predicate v_;
};

// {u, v}(q, r) = (u and q) or (v and r)
class AssertNode final : public TransformerNode {
 public:
  AssertNode(SpaceRef space, Predicate u, Predicate v)
      : TransformerNode(space, space, space), u_(std::move(u)), v_(std::move(v)) {}
  Predicate wp(const Predicate& q, const Predicate& r) const override { return (u_ & q) | (v_ & r); }
  bool conjunctive() const override { return (u_ & v_).is_false(); }

 private:
  Predicate u_;
  Predicate v_;
};

class UpdateNode final : public TransformerNode {
 public:
  UpdateNode(Relation q, Relation r, bool angelic)
      : TransformerNode(q.source(), q.target(), r.target()), q_(std::move(q)), r_(std::move(r)), angelic_(angelic) {}

  Predicate wp(const Predicate& q, const Predicate& r) const override {
    Predicate out(entry());
    for (std::size_t d = 0; d < out.size(); ++d) {
      const bool holds = angelic_ ? (q_.row(d).intersects(q.bits()) || r_.row(d).intersects(r.bits()))
                                  : (q_.row(d).is_subset_of(q.bits()) && r_.row(d).is_subset_of(r.bits()));
      if (holds) out.set(d);
    }
    return out;
  }

  bool conjunctive() const override {
    if (!angelic_) return true;
    for (std::size_t d = 0; d < entry()->size(); ++d) {
      if (q_.row(d).count() + r_.row(d).count() > 1) return false;
    }
    return true;
  }

 private:
  Relation q_;
  Relation r_;
  bool angelic_;
};

class SeqNode final : public TransformerNode {
 public:
  SeqNode(NodePtr a, NodePtr b) : TransformerNode(a->entry(), b->normal(), a->exceptional()), a_(a), b_(b) {}
  Predicate wp(const Predicate& q, const Predicate& r) const override { return a_->wp(b_->wp(q, r), r); }
  bool conjunctive() const override { return a_->conjunctive() && b_->conjunctive(); }

 private:
  NodePtr a_, b_;
};

class ExcSeqNode final : public TransformerNode {
 public:
  ExcSeqNode(NodePtr a, NodePtr b) : TransformerNode(a->entry(), a->normal(), b->exceptional()), a_(a), b_(b) {}
  Predicate wp(const Predicate& q, const Predicate& r) const override { return a_->wp(q, b_->wp(q, r)); }
  bool conjunctive() const override { return a_->conjunctive() && b_->conjunctive(); }

 private:
  NodePtr a_, b_;
};

class ChoiceNode final : public TransformerNode {
 public:
  ChoiceNode(NodePtr a, NodePtr b, bool angelic)
      : TransformerNode(a->entry(), a->normal(), a->exceptional()), a_(a), b_(b), angelic_(angelic) {}
  Predicate wp(const Predicate& q, const Predicate& r) const override {
    return angelic_ ? (a_->wp(q, r) | b_->wp(q, r)) : (a_->wp(q, r) & b_->wp(q, r));
  }
  bool conjunctive() const override { return !angelic_ && a_->conjunctive() && b_->conjunctive(); }

 private:
  NodePtr a_, b_;
  bool angelic_;
};

// x := E and x :in ES. targets_[s] lists the successor states of s; an
// undefined right-hand side is marked by `undefined_`.
class AssignNode final : public TransformerNode {
 public:
  AssignNode(SpaceRef space, Bits undefined, std::vector<std::vector<std::size_t>> targets)
      : TransformerNode(space, space, space), undefined_(std::move(undefined)), targets_(std::move(targets)) {}

  Predicate wp(const Predicate& q, const Predicate& r) const override {
    Predicate out(entry());
    for (std::size_t s = 0; s < out.size(); ++s) {
      bool holds;
      if (undefined_.test(s)) {
        holds = r.contains(s);
      } else {
        holds = std::all_of(targets_[s].begin(), targets_[s].end(), [&](std::size_t t) { return q.contains(t); });
      }
      if (holds) out.set(s);
    }
    return out;
  }
  bool conjunctive() const override { return true; }

 private:
  Bits undefined_;
  std::vector<std::vector<std::size_t>> targets_;
};

struct Guard {
  Predicate defined;
  Predicate value;  // meaningful on `defined` only
};

class IfNode final : public TransformerNode {
 public:
  IfNode(Guard guard, NodePtr then_node, NodePtr else_node)
      : TransformerNode(then_node->entry(), then_node->normal(), then_node->exceptional()),
        guard_(std::move(guard)),
        then_(then_node),
        else_(else_node) {}

  Predicate wp(const Predicate& q, const Predicate& r) const override {
    const auto& def = guard_.defined;
    const auto& val = guard_.value;
    return def.implies(val.implies(then_->wp(q, r)) & (!val).implies(else_->wp(q, r))) & (!def).implies(r);
  }
  bool conjunctive() const override { return then_->conjunctive() && else_->conjunctive(); }

 private:
  Guard guard_;
  NodePtr then_, else_;
};

LfpResult iterate_loop(const Guard& guard, const TransformerNode& body, const Predicate& q, const Predicate& r) {
  const auto& def = guard.defined;
  const auto& val = guard.value;
  const Predicate exit = (!def).implies(r) & def.implies((!val).implies(q));
  Predicate p(body.entry());
  std::size_t iterations = 0;
  for (;;) {
    ++iterations;
    Predicate next = exit & def.implies(val.implies(body.wp(p, r)));
    if (next == p) return {std::move(p), iterations};
    p = std::move(next);
  }
}

class WhileNode final : public TransformerNode {
 public:
  WhileNode(Guard guard, NodePtr body)
      : TransformerNode(body->entry(), body->entry(), body->entry()), guard_(std::move(guard)), body_(body) {}

  Predicate wp(const Predicate& q, const Predicate& r) const override {
    return iterate_loop(guard_, *body_, q, r).value;
  }
  LfpResult lfp(const Predicate& q, const Predicate& r) const { return iterate_loop(guard_, *body_, q, r); }
  bool conjunctive() const override { return body_->conjunctive(); }

 private:
  Guard guard_;
  NodePtr body_;
};

// The body runs over entry × {x}; inner state index = outer * |D| + value.
class LocalNode final : public TransformerNode {
 public:
  LocalNode(SpaceRef outer, std::size_t width, Bits init_undefined, std::vector<std::vector<std::size_t>> inits,
            NodePtr body)
      : TransformerNode(outer, outer, outer),
        width_(width),
        init_undefined_(std::move(init_undefined)),
        inits_(std::move(inits)),
        body_(body) {}

  Predicate wp(const Predicate& q, const Predicate& r) const override {
    const auto& inner = body_->entry();
    Predicate q_in(inner), r_in(inner);
    for (std::size_t i = 0; i < inner->size(); ++i) {
      if (q.contains(i / width_)) q_in.set(i);
      if (r.contains(i / width_)) r_in.set(i);
    }
    const Predicate body = body_->wp(q_in, r_in);
    Predicate out(entry());
    for (std::size_t s = 0; s < out.size(); ++s) {
      bool holds;
      if (init_undefined_.test(s)) {
        holds = r.contains(s);
      } else {
        holds = std::all_of(inits_[s].begin(), inits_[s].end(),
                            [&](std::size_t v) { return body.contains(s * width_ + v); });
      }
      if (holds) out.set(s);
    }
    return out;
  }
  bool conjunctive() const override { return body_->conjunctive(); }

 private:
  std::size_t width_;
  Bits init_undefined_;
  std::vector<std::vector<std::size_t>> inits_;
  NodePtr body_;
};

struct Hint {
  SpaceRef normal;
  SpaceRef exceptional;
};

std::string describe(const SpaceRef& s) { return s->to_string(); }

void require_space(const SpaceRef& expected, const SpaceRef& actual, const std::string& what) {
  if (!same_space(expected, actual)) {
    throw TypeError(what + ": expected " + describe(expected) + ", found " + describe(actual));
  }
}

class Compiler {
 public:
  explicit Compiler(const CompileContext& ctx) : ctx_(ctx) {}

  NodePtr compile(const Statement& s, const SpaceRef& entry, const Hint& hint) const {
    return std::visit([&](const auto& node) { return this->node(node, entry, hint); }, s.node);
  }

 private:
  static SpaceRef or_entry(const SpaceRef& hint, const SpaceRef& entry) { return hint ? hint : entry; }

  NodePtr node(const Abort&, const SpaceRef& entry, const Hint& h) const {
    return std::make_shared<ConstNode>(entry, or_entry(h.normal, entry), or_entry(h.exceptional, entry), false);
  }
  NodePtr node(const Stop&, const SpaceRef& entry, const Hint& h) const {
    return std::make_shared<ConstNode>(entry, or_entry(h.normal, entry), or_entry(h.exceptional, entry), true);
  }
  NodePtr node(const Skip&, const SpaceRef& entry, const Hint& h) const {
    return std::make_shared<SkipNode>(entry, entry, or_entry(h.exceptional, entry));
  }
  NodePtr node(const Raise&, const SpaceRef& entry, const Hint& h) const {
    return std::make_shared<RaiseNode>(entry, or_entry(h.normal, entry), entry);
  }

  Predicate cond(const Cond& c, const SpaceRef& space, const char* what) const {
    if (const auto* k = std::get_if<PredConst>(&c)) return Predicate(space, *k == PredConst::True);
    if (const auto* e = std::get_if<Expr>(&c)) return total_pred(*e, space, ctx_.machine, what);
    const auto& p = std::get<Predicate>(c);
    require_space(space, p.space(), what);
    return p;
  }

  NodePtr node(const Assume& a, const SpaceRef& entry, const Hint&) const {
    return std::make_shared<AssumeNode>(entry, cond(a.succeed, entry, "assume"), cond(a.fail, entry, "assume"));
  }
  NodePtr node(const AssertAV& a, const SpaceRef& entry, const Hint&) const {
    return std::make_shared<AssertNode>(entry, cond(a.succeed, entry, "assert"), cond(a.fail, entry, "assert"));
  }

  Relation relation(const RelRef& ref, const SpaceRef& entry, const SpaceRef& hint, const char* what) const {
    if (const auto* k = std::get_if<RelConst>(&ref)) {
      switch (*k) {
        case RelConst::Id: return Relation::identity(entry);
        case RelConst::Empty: return Relation::empty(entry, or_entry(hint, entry));
        case RelConst::Full: return Relation::universal(entry, or_entry(hint, entry));
      }
    }
    if (const auto* n = std::get_if<RelName>(&ref)) {
      if (!ctx_.relations) throw TypeError(std::string(what) + ": unknown relation " + n->name);
      auto it = ctx_.relations->find(n->name);
      if (it == ctx_.relations->end()) throw TypeError(std::string(what) + ": unknown relation " + n->name);
      require_space(entry, it->second.source(), std::string(what) + ": source of relation " + n->name);
      return it->second;
    }
    const auto& r = std::get<Relation>(ref);
    require_space(entry, r.source(), std::string(what) + ": relation source");
    return r;
  }

  NodePtr node(const DemUpd& u, const SpaceRef& entry, const Hint& h) const {
    return std::make_shared<UpdateNode>(relation(u.normal, entry, h.normal, "demonic update"),
                                        relation(u.exceptional, entry, h.exceptional, "demonic update"), false);
  }
  NodePtr node(const AngUpd& u, const SpaceRef& entry, const Hint& h) const {
    return std::make_shared<UpdateNode>(relation(u.normal, entry, h.normal, "angelic update"),
                                        relation(u.exceptional, entry, h.exceptional, "angelic update"), true);
  }

  NodePtr node(const Seq& s, const SpaceRef& entry, const Hint& h) const {
    auto a = compile(*s.first, entry, Hint{nullptr, h.exceptional});
    auto b = compile(*s.second, a->normal(), Hint{h.normal, a->exceptional()});
    require_space(a->exceptional(), b->exceptional(), "';' exceptional space of second statement");
    return std::make_shared<SeqNode>(a, b);
  }
  NodePtr node(const ExcSeq& s, const SpaceRef& entry, const Hint& h) const {
    auto a = compile(*s.first, entry, Hint{h.normal, nullptr});
    auto b = compile(*s.second, a->exceptional(), Hint{a->normal(), h.exceptional});
    require_space(a->normal(), b->normal(), "';;' normal space of second statement");
    return std::make_shared<ExcSeqNode>(a, b);
  }

  NodePtr choice(const Statement& l, const Statement& r, const SpaceRef& entry, const Hint& h, bool angelic) const {
    const char* what = angelic ? "angelic choice" : "demonic choice";
    auto a = compile(l, entry, h);
    auto b = compile(r, entry, Hint{a->normal(), a->exceptional()});
    require_space(a->normal(), b->normal(), std::string(what) + " normal space");
    require_space(a->exceptional(), b->exceptional(), std::string(what) + " exceptional space");
    return std::make_shared<ChoiceNode>(a, b, angelic);
  }
  NodePtr node(const DemChoice& c, const SpaceRef& entry, const Hint& h) const {
    return choice(*c.left, *c.right, entry, h, false);
  }
  NodePtr node(const AngChoice& c, const SpaceRef& entry, const Hint& h) const {
    return choice(*c.left, *c.right, entry, h, true);
  }

  std::size_t variable(const SpaceRef& space, const std::string& name, const char* what) const {
    auto i = space->find(name);
    if (!i) throw TypeError(std::string(what) + ": unknown variable " + name + " in " + describe(space));
    return *i;
  }

  NodePtr node(const Assign& a, const SpaceRef& entry, const Hint&) const {
    if (a.targets.size() != a.values.size() || a.targets.empty()) {
      throw TypeError("assignment: " + std::to_string(a.targets.size()) + " targets but " +
                      std::to_string(a.values.size()) + " values");
    }
    const Scope scope{entry.get()};
    std::vector<std::size_t> vars;
    for (std::size_t k = 0; k < a.targets.size(); ++k) {
      const auto& t = a.targets[k];
      const auto v = variable(entry, t.var, "assignment");
      if (std::find(vars.begin(), vars.end(), v) != vars.end()) {
        throw TypeError("assignment: variable " + t.var + " assigned twice");
      }
      vars.push_back(v);
      const auto var_type = type_of_domain(entry->vars()[v].domain);
      const auto value_type = type_of(a.values[k], scope);
      if (t.index) {
        if (var_type.kind != ExprType::Kind::Array) throw TypeError("assignment: " + t.var + " is not an array");
        require_type(*t.index, scope, ExprType::Kind::Int, "array index");
        if (value_type.kind != ExprType::Kind::Int) {
          throw TypeError("assignment to " + t.var + "[...]: expected int, found " + to_string(value_type));
        }
      } else if (value_type.kind != var_type.kind ||
                 (var_type.kind == ExprType::Kind::Array && value_type.extent != var_type.extent)) {
        throw TypeError("assignment to " + t.var + ": expected " + to_string(var_type) + ", found " +
                        to_string(value_type));
      }
    }

    const auto n = entry->size();
    Bits undefined(n);
    std::vector<std::vector<std::size_t>> targets(n);
    for (std::size_t s = 0; s < n; ++s) {
      const Bindings b{entry.get(), s};
      std::size_t next = s;
      bool ok = true;
      for (std::size_t k = 0; ok && k < a.targets.size(); ++k) {
        auto value = evaluate(a.values[k], b, ctx_.machine);
        if (!value) {
          ok = false;
          break;
        }
        if (a.targets[k].index) {
          auto i = evaluate(*a.targets[k].index, b, ctx_.machine);
          Value array = entry->value(s, vars[k]);
          if (!i || i->scalar < 0 || static_cast<std::size_t>(i->scalar) >= array.items.size()) {
            ok = false;
            break;
          }
          array.items[static_cast<std::size_t>(i->scalar)] = value->scalar;
          value = std::move(array);
        }
        // A value outside the variable's domain cannot be stored: the
        // assignment is undefined there.
        auto coordinate = entry->vars()[vars[k]].domain.index_of(*value);
        if (!coordinate) {
          ok = false;
          break;
        }
        next = entry->with_coordinate(next, vars[k], *coordinate);
      }
      if (ok) {
        targets[s].push_back(next);
      } else {
        undefined.set(s);
      }
    }
    return std::make_shared<AssignNode>(entry, std::move(undefined), std::move(targets));
  }

  NodePtr node(const NondetAssign& a, const SpaceRef& entry, const Hint&) const {
    const auto v = variable(entry, a.var, "nondeterministic assignment");
    const auto& domain = entry->vars()[v].domain;
    if (domain.kind() != Domain::Kind::IntRange) {
      throw TypeError("nondeterministic assignment: " + a.var + " must be an integer variable");
    }
    require_type(a.set, Scope{entry.get()}, ExprType::Kind::Set, "nondeterministic assignment");
    const auto n = entry->size();
    Bits undefined(n);
    std::vector<std::vector<std::size_t>> targets(n);
    for (std::size_t s = 0; s < n; ++s) {
      auto set = evaluate(a.set, Bindings{entry.get(), s}, ctx_.machine);
      bool ok = set.has_value();
      if (ok) {
        for (auto x : set->items) {
          auto coordinate = domain.index_of(Value::integer(x));
          if (!coordinate) {
            ok = false;
            break;
          }
          targets[s].push_back(entry->with_coordinate(s, v, *coordinate));
        }
      }
      if (!ok) {
        undefined.set(s);
        targets[s].clear();
      }
    }
    return std::make_shared<AssignNode>(entry, std::move(undefined), std::move(targets));
  }

  Guard guard(const Expr& e, const SpaceRef& space, const char* what) const {
    require_type(e, Scope{space.get()}, ExprType::Kind::Bool, what);
    Guard g{Predicate(space), Predicate(space)};
    for (std::size_t s = 0; s < space->size(); ++s) {
      auto v = evaluate(e, Bindings{space.get(), s}, ctx_.machine);
      if (!v) continue;
      g.defined.set(s);
      if (v->as_bool()) g.value.set(s);
    }
    return g;
  }

  NodePtr node(const If& i, const SpaceRef& entry, const Hint& h) const {
    auto g = guard(i.guard, entry, "if guard");
    auto a = compile(*i.then_branch, entry, Hint{h.normal, entry});
    auto b = compile(*i.else_branch, entry, Hint{a->normal(), entry});
    require_space(entry, a->exceptional(), "if: exceptional space of then-branch");
    require_space(entry, b->exceptional(), "if: exceptional space of else-branch");
    require_space(a->normal(), b->normal(), "if: normal space of else-branch");
    return std::make_shared<IfNode>(std::move(g), a, b);
  }

  NodePtr node(const While& w, const SpaceRef& entry, const Hint&) const {
    auto g = guard(w.guard, entry, "while guard");
    auto body = compile(*w.body, entry, Hint{entry, entry});
    require_space(entry, body->normal(), "while: normal space of body");
    require_space(entry, body->exceptional(), "while: exceptional space of body");
    return std::make_shared<WhileNode>(std::move(g), body);
  }

  NodePtr node(const Local& l, const SpaceRef& entry, const Hint&) const {
    if (entry->find(l.var)) throw TypeError("local: variable " + l.var + " already declared in " + describe(entry));
    auto inner = entry->extended(VarDecl{l.var, l.domain});
    if (l.init) {
      auto t = type_of(*l.init, Scope{entry.get()});
      if (t != type_of_domain(l.domain)) {
        throw TypeError("local " + l.var + ": initializer has type " + to_string(t) + ", expected " +
                        to_string(type_of_domain(l.domain)));
      }
    }
    auto body = compile(*l.body, inner, Hint{inner, inner});
    require_space(inner, body->normal(), "local " + l.var + ": normal space of body");
    require_space(inner, body->exceptional(), "local " + l.var + ": exceptional space of body");

    const auto width = l.domain.size();
    Bits undefined(entry->size());
    std::vector<std::vector<std::size_t>> inits(entry->size());
    for (std::size_t s = 0; s < entry->size(); ++s) {
      if (!l.init) {
        inits[s].resize(width);
        for (std::size_t v = 0; v < width; ++v) inits[s][v] = v;
        continue;
      }
      auto value = evaluate(*l.init, Bindings{entry.get(), s}, ctx_.machine);
      auto coordinate = value ? l.domain.index_of(*value) : std::nullopt;
      if (coordinate) {
        inits[s].push_back(*coordinate);
      } else {
        undefined.set(s);
      }
    }
    return std::make_shared<LocalNode>(entry, width, std::move(undefined), std::move(inits), body);
  }

  template <class Sugar>
  NodePtr node(const Sugar& sugar, const SpaceRef& entry, const Hint& h) const {
    return compile(desugar(Statement{sugar}), entry, h);
  }

  const CompileContext& ctx_;
};

void check_operands(const Transformer& t, const Predicate& q, const Predicate& r) {
  require_same_space(t.normal(), q.space(), "normal postcondition");
  require_same_space(t.exceptional(), r.space(), "exceptional postcondition");
}

}  // namespace

Transformer::Transformer(std::shared_ptr<const TransformerNode> root) : root_(std::move(root)) {}

const SpaceRef& Transformer::entry() const { return root_->entry(); }
const SpaceRef& Transformer::normal() const { return root_->normal(); }
const SpaceRef& Transformer::exceptional() const { return root_->exceptional(); }

Predicate Transformer::wp(const Predicate& q, const Predicate& r) const {
  check_operands(*this, q, r);
  return root_->wp(q, r);
}

bool Transformer::conjunctive() const { return root_->conjunctive(); }

Transformer compile(const Statement& s, SpaceRef entry, const CompileContext& ctx) {
  return Transformer(Compiler(ctx).compile(s, entry, Hint{}));
}

Exits typecheck(const Statement& s, SpaceRef entry, const CompileContext& ctx) {
  auto t = compile(s, std::move(entry), ctx);
  return {t.normal(), t.exceptional()};
}

Predicate wp(const Statement& s, SpaceRef entry, const Predicate& q, const Predicate& r, const CompileContext& ctx) {
  return compile(s, std::move(entry), ctx).wp(q, r);
}

bool classify_conjunctive(const Transformer& t) { return t.conjunctive(); }

LfpResult lfp_while(const Expr& guard, const Statement& body, SpaceRef space, const Predicate& q,
                    const Predicate& r, const CompileContext& ctx) {
  auto t = compile(st::while_(guard, body), space, ctx);
  check_operands(t, q, r);
  return static_cast<const WhileNode&>(*t.root()).lfp(q, r);
}

Transformer demonic_choice(const Transformer& a, const Transformer& b) {
  require_same_space(a.entry(), b.entry(), "demonic choice entry");
  require_same_space(a.normal(), b.normal(), "demonic choice normal exit");
  require_same_space(a.exceptional(), b.exceptional(), "demonic choice exceptional exit");
  return Transformer(std::make_shared<ChoiceNode>(a.root(), b.root(), false));
}

Transformer sequential(const Transformer& a, const Transformer& b) {
  require_same_space(a.normal(), b.entry(), "';' entry of second statement");
  require_same_space(a.exceptional(), b.exceptional(), "';' exceptional exit");
  return Transformer(std::make_shared<SeqNode>(a.root(), b.root()));
}

Transformer exceptional(const Transformer& a, const Transformer& b) {
  require_same_space(a.exceptional(), b.entry(), "';;' entry of second statement");
  require_same_space(a.normal(), b.normal(), "';;' normal exit");
  return Transformer(std::make_shared<ExcSeqNode>(a.root(), b.root()));
}

Transformer update(const Relation& q, const Relation& r, bool angelic) {
  require_same_space(q.source(), r.source(), "update source");
  return Transformer(std::make_shared<UpdateNode>(q, r, angelic));
}

Transformer raise_on(SpaceRef space, SpaceRef normal) {
  auto n = normal ? normal : space;
  return Transformer(std::make_shared<RaiseNode>(space, n, space));
}

}  // namespace exref
