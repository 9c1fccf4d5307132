// Correctness assertions and total, partial and data refinement checks.

#ifndef EXREF_VERIFY_HPP
#define EXREF_VERIFY_HPP

#include "exref/state.hpp"
#include "exref/transformer.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace exref {

enum class Status : std::uint8_t { Holds, Fails, Refuted, Unknown };
enum class StrategyKind : std::uint8_t { Auto, Exhaustive, Coatomic, Sampled };

const char* to_string(Status s);
const char* to_string(StrategyKind s);
std::optional<StrategyKind> parse_strategy(const std::string& name);

/// Raised for requests a strategy cannot honour (co-atomic on a
/// non-conjunctive statement, exhaustive beyond the cap, wrong space shape).
class CheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `state` is an entry state where the left side holds and the right side
/// does not, for the postcondition pair (q, r).
struct Counterexample {
  Predicate q;
  Predicate r;
  SpaceRef space;
  std::size_t state = 0;
};

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Counterexample> counterexample;
  StrategyKind strategy = StrategyKind::Exhaustive;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::chrono::duration<double> elapsed{};
  /// Number of (q, r) pairs evaluated.
  std::size_t pairs = 0;
};

struct CheckOptions {
  StrategyKind strategy = StrategyKind::Auto;
  /// Exhaustive enumeration is allowed while |Ψ| + |Ω| <= 2 * max_states.
  std::size_t max_states = 10;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

Verdict check_total_correct(const Predicate& p, const Transformer& s, const Predicate& q, const Predicate& r);
/// p <= S(q, p or r); S's exceptional space must be its entry space.
Verdict check_partial_correct(const Predicate& p, const Transformer& s, const Predicate& q, const Predicate& r);

Verdict check_total_refine(const Transformer& s, const Transformer& t, const CheckOptions& opts = {});
/// S ⊓ raise ⊑ T.
Verdict check_partial_refine(const Transformer& s, const Transformer& t, const CheckOptions& opts = {});

/// S ⊓ raise, the left side of a partial refinement.
Transformer meet_raise(const Transformer& s);

/// T_R = [R] ; ((T ; {R⁻¹}) ;; {⊥, R⁻¹}), with R: abstract <-> concrete.
Transformer project(const Transformer& t, const Relation& r);

enum class RefineKind : std::uint8_t { Total, Partial };
Verdict check_data_refine(RefineKind kind, const Transformer& s, const Relation& r, const Transformer& t,
                          const CheckOptions& opts = {});

/// The strategy AUTO resolves to for this pair.
StrategyKind choose_strategy(const Transformer& s, const Transformer& t, const CheckOptions& opts);

/// Every predicate over `space` in a canonical order. Weakest first: by
/// population count descending, ties broken by the ascending member list of
/// the complement (`true` first). Strongest first: by population count
/// ascending, ties broken by the ascending member list (`false` first).
/// Exhaustive checks scan normal postconditions weakest first and
/// exceptional postconditions strongest first, q-major.
enum class PredOrder : std::uint8_t { WeakestFirst, StrongestFirst };
std::vector<Predicate> ordered_predicates(const SpaceRef& space, PredOrder order = PredOrder::WeakestFirst);

/// True if the counterexample still separates left and right through wp.
bool replays(const Counterexample& c, const Transformer& left, const Transformer& right);

}  // namespace exref

#endif  // EXREF_VERIFY_HPP
