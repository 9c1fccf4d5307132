#include "exref/stmt.hpp"

namespace exref {

namespace st {
Statement abort_() { return {Abort{}}; }
Statement stop() { return {Stop{}}; }
Statement skip() { return {Skip{}}; }
Statement raise_() { return {Raise{}}; }
Statement assume(Cond u, Cond v) { return {Assume{std::move(u), std::move(v)}}; }
Statement assert_(Cond u, Cond v) { return {AssertAV{std::move(u), std::move(v)}}; }
Statement dem_upd(RelRef q, RelRef r) { return {DemUpd{std::move(q), std::move(r)}}; }
Statement ang_upd(RelRef q, RelRef r) { return {AngUpd{std::move(q), std::move(r)}}; }
Statement seq(Statement a, Statement b) { return {Seq{std::move(a), std::move(b)}}; }
Statement exc_seq(Statement a, Statement b) { return {ExcSeq{std::move(a), std::move(b)}}; }
Statement meet(Statement a, Statement b) { return {DemChoice{std::move(a), std::move(b)}}; }
Statement join(Statement a, Statement b) { return {AngChoice{std::move(a), std::move(b)}}; }
Statement assign(std::string var, Expr e) {
  Assign a;
  a.targets.push_back(Target{std::move(var), std::nullopt});
  a.values.push_back(std::move(e));
  return {std::move(a)};
}
Statement nondet(std::string var, Expr set) { return {NondetAssign{std::move(var), std::move(set)}}; }
Statement if_(Expr guard, Statement then_branch, Statement else_branch) {
  return {If{std::move(guard), std::move(then_branch), std::move(else_branch)}};
}
Statement while_(Expr guard, Statement body) { return {While{std::move(guard), std::move(body)}}; }
Statement local(std::string var, Domain domain, std::optional<Expr> init, Statement body) {
  return {Local{std::move(var), std::move(domain), std::move(init), std::move(body)}};
}
Statement try_catch(Statement body, Statement handler) { return {TryCatch{std::move(body), std::move(handler)}}; }
Statement try_catch_finally(Statement body, Statement handler, Statement finalizer) {
  return {TryCatchFinally{std::move(body), std::move(handler), std::move(finalizer)}};
}
Statement alloc(std::string var, std::size_t length) { return {AllocArray{std::move(var), length}}; }
}  // namespace st

bool is_sugar(const Statement& s) {
  return std::holds_alternative<TryCatch>(s.node) || std::holds_alternative<TryCatchFinally>(s.node) ||
         std::holds_alternative<AssumeOne>(s.node) || std::holds_alternative<AssertOne>(s.node) ||
         std::holds_alternative<DemUpdOne>(s.node) || std::holds_alternative<AngUpdOne>(s.node) ||
         std::holds_alternative<AllocArray>(s.node);
}

namespace {

struct Desugar {
  Statement operator()(const Statement& s) const { return std::visit(*this, s.node); }

  template <class Leaf>
  Statement operator()(const Leaf& leaf) const {
    return {leaf};
  }

  Statement operator()(const Seq& s) const { return st::seq((*this)(*s.first), (*this)(*s.second)); }
  Statement operator()(const ExcSeq& s) const { return st::exc_seq((*this)(*s.first), (*this)(*s.second)); }
  Statement operator()(const DemChoice& s) const { return st::meet((*this)(*s.left), (*this)(*s.right)); }
  Statement operator()(const AngChoice& s) const { return st::join((*this)(*s.left), (*this)(*s.right)); }
  Statement operator()(const If& s) const {
    return st::if_(s.guard, (*this)(*s.then_branch), (*this)(*s.else_branch));
  }
  Statement operator()(const While& s) const { return st::while_(s.guard, (*this)(*s.body)); }
  Statement operator()(const Local& s) const { return st::local(s.var, s.domain, s.init, (*this)(*s.body)); }

  Statement operator()(const TryCatch& s) const { return st::exc_seq((*this)(*s.body), (*this)(*s.handler)); }

  // (S ;; (T ;; (U ; raise))) ; U
  Statement operator()(const TryCatchFinally& s) const {
    auto body = (*this)(*s.body);
    auto handler = (*this)(*s.handler);
    auto fin = (*this)(*s.finalizer);
    return st::seq(st::exc_seq(std::move(body), st::exc_seq(std::move(handler), st::seq(fin, st::raise_()))), fin);
  }

  Statement operator()(const AssumeOne& s) const { return st::assume(s.cond, PredConst::False); }
  Statement operator()(const AssertOne& s) const { return st::assert_(s.cond, PredConst::False); }
  Statement operator()(const DemUpdOne& s) const { return st::dem_upd(s.rel, RelConst::Empty); }
  Statement operator()(const AngUpdOne& s) const { return st::ang_upd(s.rel, RelConst::Empty); }

  // [true, true] ; x := [0]^n
  Statement operator()(const AllocArray& s) const {
    return st::seq(st::assume(PredConst::True, PredConst::True), st::assign(s.var, ex::fill(s.length, ex::lit(0))));
  }
};

}  // namespace

Statement desugar(const Statement& s) { return Desugar{}(s); }

}  // namespace exref
