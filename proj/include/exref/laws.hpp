// Seeded re-verification of the algebraic laws and theorems of two-exit
// statements.

#ifndef EXREF_LAWS_HPP
#define EXREF_LAWS_HPP

#include "exref/expr.hpp"
#include "exref/state.hpp"
#include "exref/stmt.hpp"
#include "exref/verify.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace exref {

struct GenConfig {
  /// Integer variables only; their domains should equal the machine range so
  /// that every defined value can be stored.
  SpaceRef space;
  std::size_t max_depth = 3;
  bool allow_angelic = true;
  bool allow_loops = false;
  std::uint64_t seed = 1;
  MachineParams machine;
};

/// Two integer variables x, y over [lo..hi] with the machine range [lo..hi].
GenConfig default_gen_config(std::int64_t lo = 0, std::int64_t hi = 1, std::size_t vars = 2);
/// A config over the single variable x: int(lo..hi).
GenConfig single_var_config(std::int64_t lo, std::int64_t hi);

/// Random statements, predicates and expressions over a config's space.
/// Draws are `rng() % n` on a mt19937_64, so generation is reproducible
/// across platforms.
class Generator {
 public:
  Generator(GenConfig cfg, std::uint64_t seed);

  Statement statement() { return statement(cfg_.space, cfg_.max_depth); }
  Statement statement(std::size_t depth) { return statement(cfg_.space, depth); }
  Statement leaf() { return leaf(cfg_.space); }
  Predicate predicate() { return predicate(cfg_.space); }
  Relation relation() { return relation(cfg_.space, cfg_.space); }
  Expr int_expr(std::size_t depth) { return int_expr(cfg_.space, depth); }
  Expr bool_expr(std::size_t depth) { return bool_expr(cfg_.space, depth); }

  std::uint64_t draw(std::uint64_t n) { return rng_() % n; }
  bool coin() { return draw(2) == 0; }
  const GenConfig& config() const { return cfg_; }

 private:
  Statement statement(const SpaceRef& space, std::size_t depth);
  Statement leaf(const SpaceRef& space);
  Predicate predicate(const SpaceRef& space);
  Relation relation(const SpaceRef& from, const SpaceRef& to);
  Expr int_expr(const SpaceRef& space, std::size_t depth);
  Expr bool_expr(const SpaceRef& space, std::size_t depth);
  Expr set_expr(const SpaceRef& space);
  const std::string& pick_var(const SpaceRef& space);

  GenConfig cfg_;
  std::mt19937_64 rng_;
  std::size_t locals_ = 0;
};

/// Same config and seed give structurally identical statements.
Statement gen_statement(const GenConfig& cfg);

/// p_w = invariant ∧ (variant = w); p_<w = invariant ∧ (variant < w).
struct RankedInvariant {
  Predicate invariant;
  Expr variant;

  /// Throws std::invalid_argument unless the variant is a defined natural
  /// number on every invariant state.
  std::vector<std::int64_t> ranks(const MachineParams& m) const;
  Predicate at(std::int64_t w, const MachineParams& m) const;
  Predicate below(std::int64_t w, const MachineParams& m) const;
};

enum class LawStatus : std::uint8_t { Pass, Violated, ExpectedRefutation, Unrefuted };
const char* to_string(LawStatus s);

struct LawReport {
  std::string law_id;
  std::size_t trials = 0;
  /// Trials whose premise held (equal to trials for unconditional laws).
  std::size_t instances = 0;
  LawStatus status = LawStatus::Pass;
  /// Trial seed of the violation or refutation; replay_law() reproduces it.
  std::uint64_t seed = 0;
  std::optional<Counterexample> counterexample;
  std::string detail;
};

struct LawInfo {
  std::string id;
  /// True for claims that do not hold in general.
  bool expect_refutation;
  std::string summary;
};

const std::vector<LawInfo>& law_registry();
bool is_law(const std::string& id);

/// Throws std::invalid_argument for an unknown id.
LawReport check_law(const std::string& id, const GenConfig& cfg, std::size_t trials = 200);
/// Runs the single trial with the given seed. Seed 0 is the stored witness
/// of a law expected to be refuted.
LawReport replay_law(const std::string& id, const GenConfig& cfg, std::uint64_t trial_seed);
/// The seed of trial `index` under `cfg`.
std::uint64_t trial_seed(const GenConfig& cfg, std::size_t index);

}  // namespace exref

#endif  // EXREF_LAWS_HPP
