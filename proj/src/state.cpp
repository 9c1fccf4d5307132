#include "exref/state.hpp"

#include <algorithm>
#include <sstream>

namespace exref {

Value Value::integer(std::int64_t v) { return Value{Kind::Int, v, {}}; }
Value Value::boolean(bool v) { return Value{Kind::Bool, v ? 1 : 0, {}}; }
Value Value::array(std::vector<std::int64_t> elems) { return Value{Kind::Array, 0, std::move(elems)}; }

Value Value::bag(std::vector<std::int64_t> elems) {
  std::sort(elems.begin(), elems.end());
  return Value{Kind::Bag, 0, std::move(elems)};
}

Value Value::set(std::vector<std::int64_t> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return Value{Kind::Set, 0, std::move(elems)};
}

std::string to_string(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int:
      return std::to_string(v.scalar);
    case Value::Kind::Bool:
      return v.scalar ? "true" : "false";
    case Value::Kind::Array:
    case Value::Kind::Bag:
    case Value::Kind::Set: {
      std::string out = v.kind == Value::Kind::Set ? "{" : "[";
      for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v.items[i]);
      }
      out += v.kind == Value::Kind::Set ? "}" : "]";
      return out;
    }
  }
  return {};
}

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > StateSpace::kMaxStates / a) throw std::length_error("state space too large");
  return a * b;
}

// Number of multisets of size k over n values: C(n + k - 1, k).
std::size_t multiset_count(std::size_t n, std::size_t k) {
  if (n == 0) return k == 0 ? 1 : 0;
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n + i - 1) / i;
    if (result > StateSpace::kMaxStates) throw std::length_error("domain too large");
  }
  return result;
}

void nondecreasing(std::vector<std::int64_t>& prefix, std::size_t remaining, std::int64_t from,
                   std::int64_t hi, std::vector<Value>& out) {
  if (remaining == 0) {
    out.push_back(Value::bag(prefix));
    return;
  }
  for (std::int64_t v = from; v <= hi; ++v) {
    prefix.push_back(v);
    nondecreasing(prefix, remaining - 1, v, hi, out);
    prefix.pop_back();
  }
}

}  // namespace

Domain::Domain(Kind kind, std::int64_t lo, std::int64_t hi, std::size_t extent)
    : kind_(kind), lo_(lo), hi_(hi), extent_(extent) {
  if (lo > hi) throw std::invalid_argument("empty range " + std::to_string(lo) + ".." + std::to_string(hi));
  const auto width = static_cast<std::size_t>(hi - lo) + 1;
  auto values = std::make_shared<std::vector<Value>>();
  switch (kind) {
    case Kind::IntRange:
      if (width > StateSpace::kMaxStates) throw std::length_error("domain too large");
      for (std::int64_t v = lo; v <= hi; ++v) values->push_back(Value::integer(v));
      break;
    case Kind::Bool:
      values->push_back(Value::boolean(false));
      values->push_back(Value::boolean(true));
      break;
    case Kind::ArrayFixed: {
      std::size_t total = 1;
      for (std::size_t i = 0; i < extent; ++i) total = checked_mul(total, width);
      values->reserve(total);
      for (std::size_t n = 0; n < total; ++n) {
        std::vector<std::int64_t> elems(extent);
        std::size_t rest = n;
        for (std::size_t i = extent; i-- > 0;) {
          elems[i] = lo + static_cast<std::int64_t>(rest % width);
          rest /= width;
        }
        values->push_back(Value::array(std::move(elems)));
      }
      break;
    }
    case Kind::BagCapped: {
      std::size_t total = 0;
      for (std::size_t k = 0; k <= extent; ++k) total += multiset_count(width, k);
      if (total > StateSpace::kMaxStates) throw std::length_error("domain too large");
      values->reserve(total);
      std::vector<std::int64_t> prefix;
      for (std::size_t k = 0; k <= extent; ++k) nondecreasing(prefix, k, lo, hi, *values);
      auto index = std::make_shared<std::map<Value, std::size_t>>();
      for (std::size_t i = 0; i < values->size(); ++i) index->emplace((*values)[i], i);
      bag_index_ = std::move(index);
      break;
    }
  }
  values_ = std::move(values);
}

Domain Domain::int_range(std::int64_t lo, std::int64_t hi) { return {Kind::IntRange, lo, hi, 0}; }
Domain Domain::boolean() { return {Kind::Bool, 0, 1, 0}; }
Domain Domain::array_fixed(std::size_t length, std::int64_t lo, std::int64_t hi) {
  return {Kind::ArrayFixed, lo, hi, length};
}
Domain Domain::bag_capped(std::int64_t lo, std::int64_t hi, std::size_t cap) {
  return {Kind::BagCapped, lo, hi, cap};
}

std::optional<std::size_t> Domain::index_of(const Value& v) const {
  const auto in_range = [&](std::int64_t x) { return x >= lo_ && x <= hi_; };
  switch (kind_) {
    case Kind::IntRange:
      if (v.kind != Value::Kind::Int || !in_range(v.scalar)) return std::nullopt;
      return static_cast<std::size_t>(v.scalar - lo_);
    case Kind::Bool:
      if (v.kind != Value::Kind::Bool) return std::nullopt;
      return static_cast<std::size_t>(v.scalar);
    case Kind::ArrayFixed: {
      if (v.kind != Value::Kind::Array || v.items.size() != extent_) return std::nullopt;
      const auto width = static_cast<std::size_t>(hi_ - lo_) + 1;
      std::size_t index = 0;
      for (auto x : v.items) {
        if (!in_range(x)) return std::nullopt;
        index = index * width + static_cast<std::size_t>(x - lo_);
      }
      return index;
    }
    case Kind::BagCapped: {
      if (v.kind != Value::Kind::Bag) return std::nullopt;
      auto it = bag_index_->find(v);
      if (it == bag_index_->end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

std::string Domain::to_string() const {
  const std::string range = "(" + std::to_string(lo_) + ".." + std::to_string(hi_) + ")";
  switch (kind_) {
    case Kind::IntRange:
      return "int" + range;
    case Kind::Bool:
      return "bool";
    case Kind::ArrayFixed:
      return "array[" + std::to_string(extent_) + "] of int" + range;
    case Kind::BagCapped:
      return "bag[" + std::to_string(extent_) + "] of int" + range;
  }
  return {};
}

StateSpace::StateSpace(std::vector<VarDecl> vars) : vars_(std::move(vars)), strides_(vars_.size()) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (vars_[i].name == vars_[j].name) throw std::invalid_argument("duplicate variable '" + vars_[i].name + "'");
    }
  }
  for (std::size_t i = vars_.size(); i-- > 0;) {
    strides_[i] = size_;
    size_ = checked_mul(size_, vars_[i].domain.size());
  }
}

SpaceRef StateSpace::make(std::vector<VarDecl> vars) { return std::make_shared<const StateSpace>(std::move(vars)); }

std::optional<std::size_t> StateSpace::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  return std::nullopt;
}

State StateSpace::state(std::size_t index) const {
  State s;
  s.reserve(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) s.push_back(value(index, i));
  return s;
}

std::size_t StateSpace::index(const State& s) const {
  if (s.size() != vars_.size()) throw std::out_of_range("state arity does not match space");
  std::size_t index = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto v = vars_[i].domain.index_of(s[i]);
    if (!v) throw std::out_of_range("value " + exref::to_string(s[i]) + " outside domain of " + vars_[i].name);
    index += *v * strides_[i];
  }
  return index;
}

std::vector<State> StateSpace::enumerate() const {
  std::vector<State> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(state(i));
  return out;
}

SpaceRef StateSpace::extended(VarDecl var) const {
  auto vars = vars_;
  vars.push_back(std::move(var));
  return make(std::move(vars));
}

std::string StateSpace::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += "; ";
    out += vars_[i].name + ": " + vars_[i].domain.to_string();
  }
  return out + "}";
}

bool same_space(const StateSpace& a, const StateSpace& b) { return &a == &b || a == b; }

bool same_space(const SpaceRef& a, const SpaceRef& b) { return a == b || (a && b && *a == *b); }

void require_same_space(const SpaceRef& a, const SpaceRef& b, std::string_view what) {
  if (!same_space(a, b)) {
    throw SpaceMismatch(std::string(what) + ": space " + a->to_string() + " does not match " + b->to_string());
  }
}

std::vector<State> enumerate_states(const StateSpace& space) { return space.enumerate(); }

std::string format_state(const StateSpace& space, std::size_t index) {
  std::string out = "{";
  for (std::size_t i = 0; i < space.vars().size(); ++i) {
    if (i) out += ", ";
    out += space.vars()[i].name + "=" + to_string(space.value(index, i));
  }
  return out + "}";
}

Predicate::Predicate(SpaceRef space, bool value) : space_(std::move(space)), bits_(space_->size()) {
  if (value) bits_.set();
}

Predicate::Predicate(SpaceRef space, Bits bits) : space_(std::move(space)), bits_(std::move(bits)) {
  if (bits_.size() != space_->size()) throw SpaceMismatch("predicate width does not match space");
}

Predicate Predicate::singleton(SpaceRef space, std::size_t index) {
  Predicate p(std::move(space));
  p.set(index);
  return p;
}

Predicate Predicate::from_indices(SpaceRef space, const std::vector<std::size_t>& indices) {
  Predicate p(std::move(space));
  for (auto i : indices) p.set(i);
  return p;
}

Predicate Predicate::from_function(SpaceRef space, const std::function<bool(std::size_t)>& member) {
  Predicate p(std::move(space));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (member(i)) p.set(i);
  }
  return p;
}

std::vector<std::size_t> Predicate::members() const {
  std::vector<std::size_t> out;
  out.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) out.push_back(i);
  return out;
}

std::optional<std::size_t> Predicate::first() const {
  auto i = bits_.find_first();
  if (i == Bits::npos) return std::nullopt;
  return i;
}

Predicate Predicate::operator!() const { return {space_, ~bits_}; }

Predicate Predicate::operator&(const Predicate& o) const {
  require_same_space(space_, o.space_, "meet");
  return {space_, bits_ & o.bits_};
}

Predicate Predicate::operator|(const Predicate& o) const {
  require_same_space(space_, o.space_, "join");
  return {space_, bits_ | o.bits_};
}

Predicate Predicate::implies(const Predicate& o) const {
  require_same_space(space_, o.space_, "implication");
  return {space_, ~bits_ | o.bits_};
}

bool pred_entails(const Predicate& p, const Predicate& q) {
  require_same_space(p.space(), q.space(), "entailment");
  return p.bits().is_subset_of(q.bits());
}

Relation::Relation(SpaceRef source, SpaceRef target)
    : source_(std::move(source)), target_(std::move(target)), rows_(source_->size(), Bits(target_->size())) {}

Relation Relation::identity(SpaceRef space) {
  Relation r(space, space);
  for (std::size_t i = 0; i < space->size(); ++i) r.add(i, i);
  return r;
}

Relation Relation::universal(SpaceRef source, SpaceRef target) {
  Relation r(std::move(source), std::move(target));
  for (auto& row : r.rows_) row.set();
  return r;
}

Relation Relation::from_function(SpaceRef source, SpaceRef target,
                                 const std::function<bool(std::size_t, std::size_t)>& related) {
  Relation r(std::move(source), std::move(target));
  for (std::size_t a = 0; a < r.source_->size(); ++a) {
    for (std::size_t b = 0; b < r.target_->size(); ++b) {
      if (related(a, b)) r.add(a, b);
    }
  }
  return r;
}

Relation Relation::inverse() const {
  Relation inv(target_, source_);
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    for (auto b = rows_[a].find_first(); b != Bits::npos; b = rows_[a].find_next(b)) inv.add(b, a);
  }
  return inv;
}

std::size_t Relation::max_image() const {
  std::size_t best = 0;
  for (const auto& row : rows_) best = std::max(best, row.count());
  return best;
}

Relation rel_inverse(const Relation& r) { return r.inverse(); }

}  // namespace exref
