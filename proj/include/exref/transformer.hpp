// Compilation of statements to predicate transformers and their evaluation.
//
// compile() typechecks a statement against an entry space, resolves every
// expression, relation name and polymorphic constant, and precomputes the
// per-state tables (assignment targets, guard truth sets). The resulting
// Transformer is immutable; wp() is a pure function of (q, r).

#ifndef EXREF_TRANSFORMER_HPP
#define EXREF_TRANSFORMER_HPP

#include "exref/expr.hpp"
#include "exref/state.hpp"
#include "exref/stmt.hpp"

#include <map>
#include <memory>
#include <string>

namespace exref {

struct CompileContext {
  MachineParams machine;
  /// Named relations visible to `update(...)` forms; may be null.
  const std::map<std::string, Relation>* relations = nullptr;
};

struct Exits {
  SpaceRef normal;
  SpaceRef exceptional;
};

class TransformerNode;

class Transformer {
 public:
  explicit Transformer(std::shared_ptr<const TransformerNode> root);

  const SpaceRef& entry() const;
  const SpaceRef& normal() const;
  const SpaceRef& exceptional() const;

  /// S(q, r): the weakest precondition under which S succeeds with q or
  /// fails with r. Throws SpaceMismatch if q, r do not live on the exits.
  Predicate wp(const Predicate& q, const Predicate& r) const;

  /// Conservative: true only if S preserves nonempty meets of (q, r) pairs.
  bool conjunctive() const;

  const std::shared_ptr<const TransformerNode>& root() const { return root_; }

 private:
  std::shared_ptr<const TransformerNode> root_;
};

/// Throws TypeError with a diagnostic naming the offending constructor.
Transformer compile(const Statement& s, SpaceRef entry, const CompileContext& ctx = {});
Exits typecheck(const Statement& s, SpaceRef entry, const CompileContext& ctx = {});
Predicate wp(const Statement& s, SpaceRef entry, const Predicate& q, const Predicate& r,
             const CompileContext& ctx = {});
bool classify_conjunctive(const Transformer& t);

struct LfpResult {
  Predicate value;
  /// Applications of the loop functional until the first repeated iterate.
  std::size_t iterations;
};

/// Least fixed point of p -> if-guard-then-(body ; p)-else-q, starting at false.
LfpResult lfp_while(const Expr& guard, const Statement& body, SpaceRef space, const Predicate& q,
                    const Predicate& r, const CompileContext& ctx = {});

/// S ⊓ T of two compiled transformers with identical spaces.
Transformer demonic_choice(const Transformer& a, const Transformer& b);
Transformer sequential(const Transformer& a, const Transformer& b);
Transformer exceptional(const Transformer& a, const Transformer& b);
/// [Q, R] or {Q, R}; Q and R must share their source space.
Transformer update(const Relation& q, const Relation& r, bool angelic);
/// `raise` from `space`; the normal exit defaults to `space` as well.
Transformer raise_on(SpaceRef space, SpaceRef normal = nullptr);

}  // namespace exref

#endif  // EXREF_TRANSFORMER_HPP
