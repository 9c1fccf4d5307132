#ifndef EXREF_TESTS_SUPPORT_HPP
#define EXREF_TESTS_SUPPORT_HPP

#include "exref/expr.hpp"
#include "exref/state.hpp"
#include "exref/stmt.hpp"
#include "exref/transformer.hpp"

#include <functional>
#include <initializer_list>
#include <random>
#include <vector>

namespace exref::test {

inline SpaceRef int_space(std::initializer_list<std::pair<const char*, std::pair<int, int>>> vars) {
  std::vector<VarDecl> decls;
  for (const auto& [name, range] : vars) decls.push_back({name, Domain::int_range(range.first, range.second)});
  return StateSpace::make(std::move(decls));
}

/// n-state space: one variable ranging over 0..n-1.
inline SpaceRef counter_space(std::size_t n, const char* name = "x") {
  return StateSpace::make({{name, Domain::int_range(0, static_cast<std::int64_t>(n) - 1)}});
}

inline Predicate pred(const SpaceRef& s, std::initializer_list<std::size_t> members) {
  return Predicate::from_indices(s, std::vector<std::size_t>(members));
}

/// Every predicate over a space, in bit-pattern order.
inline std::vector<Predicate> all_predicates(const SpaceRef& s) {
  std::vector<Predicate> out;
  const std::size_t n = s->size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    out.push_back(Predicate::from_function(s, [mask](std::size_t i) { return (mask >> i) & 1U; }));
  }
  return out;
}

inline Predicate random_pred(const SpaceRef& s, std::mt19937_64& rng) {
  return Predicate::from_function(s, [&](std::size_t) { return (rng() & 1U) != 0; });
}

inline Relation random_rel(const SpaceRef& a, const SpaceRef& b, std::mt19937_64& rng, unsigned density = 2) {
  return Relation::from_function(a, b, [&](std::size_t, std::size_t) { return rng() % density == 0; });
}

/// Transformer equality by brute force over every (q, r) pair.
inline bool same_transformer(const Transformer& a, const Transformer& b) {
  if (!same_space(a.entry(), b.entry()) || !same_space(a.normal(), b.normal()) ||
      !same_space(a.exceptional(), b.exceptional())) {
    return false;
  }
  for (const auto& q : all_predicates(a.normal())) {
    for (const auto& r : all_predicates(a.exceptional())) {
      if (!(a.wp(q, r) == b.wp(q, r))) return false;
    }
  }
  return true;
}

/// S ⊑ T by brute force.
inline bool refines(const Transformer& a, const Transformer& b) {
  for (const auto& q : all_predicates(a.normal())) {
    for (const auto& r : all_predicates(a.exceptional())) {
      if (!pred_entails(a.wp(q, r), b.wp(q, r))) return false;
    }
  }
  return true;
}

inline Transformer compile_on(const Statement& s, const SpaceRef& space, const CompileContext& ctx = {}) {
  return compile(s, space, ctx);
}

}  // namespace exref::test

#endif  // EXREF_TESTS_SUPPORT_HPP
