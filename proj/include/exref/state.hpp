// Finite state spaces, states, predicates and relations.
//
// Everything in the checker is explicit-state: a StateSpace enumerates its
// states in a fixed order, a Predicate is one bit per state in that order and
// a Relation is one target bit row per source state.

#ifndef EXREF_STATE_HPP
#define EXREF_STATE_HPP

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exref {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Raised when two objects that must live over the same space do not.
class SpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A runtime value. Bags are kept as sorted multisets, sets as sorted
/// duplicate-free lists, so structural equality is semantic equality.
struct Value {
  enum class Kind : std::uint8_t { Int, Bool, Array, Bag, Set };

  Kind kind = Kind::Int;
  std::int64_t scalar = 0;
  std::vector<std::int64_t> items;

  static Value integer(std::int64_t v);
  static Value boolean(bool v);
  static Value array(std::vector<std::int64_t> elems);
  static Value bag(std::vector<std::int64_t> elems);
  static Value set(std::vector<std::int64_t> elems);

  bool as_bool() const { return scalar != 0; }
  std::int64_t as_int() const { return scalar; }

  auto operator<=>(const Value&) const = default;
};

std::string to_string(const Value& v);

class Domain {
 public:
  enum class Kind : std::uint8_t { IntRange, Bool, ArrayFixed, BagCapped };

  static Domain int_range(std::int64_t lo, std::int64_t hi);
  static Domain boolean();
  static Domain array_fixed(std::size_t length, std::int64_t lo, std::int64_t hi);
  static Domain bag_capped(std::int64_t lo, std::int64_t hi, std::size_t cap);

  Kind kind() const { return kind_; }
  /// Element bounds (the range itself for IntRange).
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::size_t length() const { return extent_; }
  std::size_t cap() const { return extent_; }

  std::size_t size() const { return values_->size(); }
  const std::vector<Value>& values() const { return *values_; }
  std::optional<std::size_t> index_of(const Value& v) const;
  bool contains(const Value& v) const { return index_of(v).has_value(); }

  std::string to_string() const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.kind_ == b.kind_ && a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.extent_ == b.extent_;
  }

 private:
  Domain(Kind kind, std::int64_t lo, std::int64_t hi, std::size_t extent);

  Kind kind_;
  std::int64_t lo_;
  std::int64_t hi_;
  std::size_t extent_;
  std::shared_ptr<const std::vector<Value>> values_;
  // Only populated for bags; the other kinds are indexed arithmetically.
  std::shared_ptr<const std::map<Value, std::size_t>> bag_index_;
};

struct VarDecl {
  std::string name;
  Domain domain;

  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

/// One value per variable of a StateSpace, in declaration order.
using State = std::vector<Value>;

class StateSpace;
using SpaceRef = std::shared_ptr<const StateSpace>;

class StateSpace {
 public:
  /// Upper bound on the number of states of a single space.
  static constexpr std::size_t kMaxStates = std::size_t{1} << 24;

  explicit StateSpace(std::vector<VarDecl> vars);
  static SpaceRef make(std::vector<VarDecl> vars);

  const std::vector<VarDecl>& vars() const { return vars_; }
  std::size_t size() const { return size_; }
  std::optional<std::size_t> find(std::string_view name) const;

  State state(std::size_t index) const;
  /// Throws std::out_of_range if some value is outside its domain.
  std::size_t index(const State& s) const;
  std::vector<State> enumerate() const;

  /// Index of the value taken by variable `var` in state `index`.
  std::size_t coordinate(std::size_t index, std::size_t var) const {
    return (index / strides_[var]) % vars_[var].domain.size();
  }
  std::size_t with_coordinate(std::size_t index, std::size_t var, std::size_t value_index) const {
    return index - coordinate(index, var) * strides_[var] + value_index * strides_[var];
  }
  const Value& value(std::size_t index, std::size_t var) const {
    return vars_[var].domain.values()[coordinate(index, var)];
  }

  /// This space with one more variable appended (least significant).
  SpaceRef extended(VarDecl var) const;

  std::string to_string() const;

  friend bool operator==(const StateSpace& a, const StateSpace& b) { return a.vars_ == b.vars_; }

 private:
  std::vector<VarDecl> vars_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// Pointer-equal or structurally equal.
bool same_space(const StateSpace& a, const StateSpace& b);
bool same_space(const SpaceRef& a, const SpaceRef& b);
void require_same_space(const SpaceRef& a, const SpaceRef& b, std::string_view what);

std::vector<State> enumerate_states(const StateSpace& space);

/// "{x=0, b=[1,2]}".
std::string format_state(const StateSpace& space, std::size_t index);

class Predicate {
 public:
  explicit Predicate(SpaceRef space, bool value = false);
  Predicate(SpaceRef space, Bits bits);

  static Predicate truth(SpaceRef space) { return Predicate(std::move(space), true); }
  static Predicate falsity(SpaceRef space) { return Predicate(std::move(space), false); }
  static Predicate singleton(SpaceRef space, std::size_t index);
  static Predicate from_indices(SpaceRef space, const std::vector<std::size_t>& indices);
  static Predicate from_function(SpaceRef space, const std::function<bool(std::size_t)>& member);

  const SpaceRef& space() const { return space_; }
  const Bits& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }

  bool contains(std::size_t index) const { return bits_.test(index); }
  void set(std::size_t index, bool value = true) { bits_.set(index, value); }

  std::size_t count() const { return bits_.count(); }
  bool is_false() const { return bits_.none(); }
  bool is_true() const { return bits_.all(); }
  std::vector<std::size_t> members() const;
  std::optional<std::size_t> first() const;

  Predicate operator!() const;
  Predicate operator&(const Predicate& o) const;
  Predicate operator|(const Predicate& o) const;
  Predicate implies(const Predicate& o) const;

  friend bool operator==(const Predicate& a, const Predicate& b) {
    return same_space(a.space_, b.space_) && a.bits_ == b.bits_;
  }

 private:
  SpaceRef space_;
  Bits bits_;
};

/// p <= q: every member of p is a member of q.
bool pred_entails(const Predicate& p, const Predicate& q);

class Relation {
 public:
  /// The empty relation.
  Relation(SpaceRef source, SpaceRef target);

  static Relation empty(SpaceRef source, SpaceRef target) { return {std::move(source), std::move(target)}; }
  static Relation identity(SpaceRef space);
  static Relation universal(SpaceRef source, SpaceRef target);
  static Relation from_function(SpaceRef source, SpaceRef target,
                                const std::function<bool(std::size_t, std::size_t)>& related);

  const SpaceRef& source() const { return source_; }
  const SpaceRef& target() const { return target_; }

  void add(std::size_t from, std::size_t to) { rows_[from].set(to); }
  bool relates(std::size_t from, std::size_t to) const { return rows_[from].test(to); }
  const Bits& row(std::size_t from) const { return rows_[from]; }
  Predicate image(std::size_t from) const { return {target_, rows_[from]}; }

  Relation inverse() const;
  /// Largest image size over all source states.
  std::size_t max_image() const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return same_space(a.source_, b.source_) && same_space(a.target_, b.target_) && a.rows_ == b.rows_;
  }

 private:
  SpaceRef source_;
  SpaceRef target_;
  std::vector<Bits> rows_;
};

Relation rel_inverse(const Relation& r);

}  // namespace exref

#endif  // EXREF_STATE_HPP
