#include "exref/verify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace exref {

const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::Fails: return "FAILS";
    case Status::Refuted: return "REFUTED";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

const char* to_string(StrategyKind s) {
  switch (s) {
    case StrategyKind::Auto: return "AUTO";
    case StrategyKind::Exhaustive: return "EXHAUSTIVE";
    case StrategyKind::Coatomic: return "COATOMIC";
    case StrategyKind::Sampled: return "SAMPLED";
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy(const std::string& name) {
  if (name == "auto") return StrategyKind::Auto;
  if (name == "exhaustive") return StrategyKind::Exhaustive;
  if (name == "coatomic") return StrategyKind::Coatomic;
  if (name == "sampled") return StrategyKind::Sampled;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

std::optional<std::size_t> first_gap(const Predicate& left, const Predicate& right) {
  Bits gap = left.bits() - right.bits();
  auto i = gap.find_first();
  if (i == Bits::npos) return std::nullopt;
  return i;
}

Verdict correctness(const Predicate& p, const Transformer& s, const Predicate& q, const Predicate& r,
                    const Predicate& r_effective) {
  const auto start = Clock::now();
  require_same_space(s.entry(), p.space(), "precondition");
  Verdict v;
  v.strategy = StrategyKind::Exhaustive;
  v.pairs = 1;
  const auto w = s.wp(q, r_effective);
  if (auto gap = first_gap(p, w)) {
    v.status = Status::Fails;
    v.counterexample = Counterexample{q, r, s.entry(), *gap};
  } else {
    v.status = Status::Holds;
  }
  v.elapsed = Clock::now() - start;
  return v;
}

void require_shape(const Transformer& s, const Transformer& t) {
  require_same_space(s.entry(), t.entry(), "refinement entry space");
  require_same_space(s.normal(), t.normal(), "refinement normal exit");
  require_same_space(s.exceptional(), t.exceptional(), "refinement exceptional exit");
}

struct PairFailure {
  std::size_t qi;
  std::size_t ri;
  std::size_t state;
};

// Scans qs × rs in q-major order; returns the least failing pair.
std::optional<PairFailure> scan(const Transformer& left, const Transformer& right, const std::vector<Predicate>& qs,
                                const std::vector<Predicate>& rs, std::size_t jobs) {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best_q{kNone};
  std::mutex mu;
  std::optional<PairFailure> best;

  auto worker = [&] {
    for (;;) {
      const std::size_t qi = next.fetch_add(1);
      if (qi >= qs.size() || qi > best_q.load()) return;
      for (std::size_t ri = 0; ri < rs.size(); ++ri) {
        auto gap = first_gap(left.wp(qs[qi], rs[ri]), right.wp(qs[qi], rs[ri]));
        if (!gap) continue;
        std::lock_guard lock(mu);
        if (!best || std::pair(qi, ri) < std::pair(best->qi, best->ri)) {
          best = PairFailure{qi, ri, *gap};
          best_q = qi;
        }
        break;
      }
    }
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, qs.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return best;
}

Verdict exhaustive(const Transformer& left, const Transformer& right, const CheckOptions& opts) {
  Verdict v;
  v.strategy = StrategyKind::Exhaustive;
  const auto qs = ordered_predicates(left.normal());
  const auto rs = ordered_predicates(left.exceptional(), PredOrder::StrongestFirst);
  auto failure = scan(left, right, qs, rs, opts.jobs);
  if (failure) {
    v.status = Status::Fails;
    v.counterexample = Counterexample{qs[failure->qi], rs[failure->ri], left.entry(), failure->state};
    v.pairs = failure->qi * rs.size() + failure->ri + 1;
  } else {
    v.status = Status::Holds;
    v.pairs = qs.size() * rs.size();
  }
  return v;
}

Verdict coatomic(const Transformer& left, const Transformer& right) {
  Verdict v;
  v.strategy = StrategyKind::Coatomic;
  const auto& psi = left.normal();
  const auto& omega = left.exceptional();
  std::vector<std::pair<Predicate, Predicate>> pairs;
  pairs.emplace_back(Predicate::truth(psi), Predicate::truth(omega));
  for (std::size_t s = 0; s < psi->size(); ++s) {
    pairs.emplace_back(!Predicate::singleton(psi, s), Predicate::truth(omega));
  }
  for (std::size_t s = 0; s < omega->size(); ++s) {
    pairs.emplace_back(Predicate::truth(psi), !Predicate::singleton(omega, s));
  }
  for (auto& [q, r] : pairs) {
    ++v.pairs;
    if (auto gap = first_gap(left.wp(q, r), right.wp(q, r))) {
      v.status = Status::Fails;
      v.counterexample = Counterexample{q, r, left.entry(), *gap};
      return v;
    }
  }
  v.status = Status::Holds;
  return v;
}

Predicate random_predicate(const SpaceRef& space, std::mt19937_64& rng) {
  Predicate p(space);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (rng() & 1U) p.set(i);
  }
  return p;
}

Verdict sampled(const Transformer& left, const Transformer& right, const CheckOptions& opts) {
  Verdict v;
  v.strategy = StrategyKind::Sampled;
  v.samples = opts.samples;
  v.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  for (std::size_t n = 0; n < opts.samples; ++n) {
    auto q = random_predicate(left.normal(), rng);
    auto r = random_predicate(left.exceptional(), rng);
    ++v.pairs;
    if (auto gap = first_gap(left.wp(q, r), right.wp(q, r))) {
      v.status = Status::Refuted;
      v.counterexample = Counterexample{std::move(q), std::move(r), left.entry(), *gap};
      return v;
    }
  }
  v.status = Status::Unknown;
  return v;
}

bool within_cap(const Transformer& s, const CheckOptions& opts) {
  return s.normal()->size() + s.exceptional()->size() <= 2 * opts.max_states;
}

Verdict refine(const Transformer& left, const Transformer& right, const CheckOptions& opts) {
  const auto start = Clock::now();
  Verdict v;
  switch (opts.strategy == StrategyKind::Auto ? choose_strategy(left, right, opts) : opts.strategy) {
    case StrategyKind::Exhaustive:
      if (!within_cap(left, opts)) {
        throw CheckError("exhaustive strategy needs |normal| + |exceptional| <= " +
                         std::to_string(2 * opts.max_states) + " states, got " +
                         std::to_string(left.normal()->size() + left.exceptional()->size()));
      }
      v = exhaustive(left, right, opts);
      break;
    case StrategyKind::Coatomic:
      if (!left.conjunctive() || !right.conjunctive()) {
        throw CheckError(std::string("coatomic strategy requires conjunctive statements; ") +
                         (left.conjunctive() ? "right" : "left") + " side is not");
      }
      v = coatomic(left, right);
      break;
    case StrategyKind::Sampled:
    case StrategyKind::Auto:
      v = sampled(left, right, opts);
      break;
  }
  v.elapsed = Clock::now() - start;
  return v;
}

}  // namespace

Transformer meet_raise(const Transformer& s) {
  if (!same_space(s.entry(), s.exceptional())) {
    throw CheckError("partial refinement requires the exceptional space to equal the entry space, got " +
                     s.exceptional()->to_string() + " and " + s.entry()->to_string());
  }
  return demonic_choice(s, raise_on(s.entry(), s.normal()));
}

std::vector<Predicate> ordered_predicates(const SpaceRef& space, PredOrder order) {
  const bool weakest = order == PredOrder::WeakestFirst;
  const std::size_t n = space->size();
  if (n >= 8 * sizeof(std::size_t) - 1) throw CheckError("predicate lattice too large to enumerate");
  std::vector<Predicate> out;
  out.reserve(std::size_t{1} << n);
  // All k-subsets in lexicographic order, k = 0..n, or their complements.
  std::vector<std::size_t> combo;
  for (std::size_t k = 0; k <= n; ++k) {
    combo.resize(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i;
    for (;;) {
      Predicate p(space, weakest);
      for (auto i : combo) p.set(i, !weakest);
      out.push_back(std::move(p));
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return out;
}

StrategyKind choose_strategy(const Transformer& s, const Transformer& t, const CheckOptions& opts) {
  if (within_cap(s, opts)) return StrategyKind::Exhaustive;
  if (s.conjunctive() && t.conjunctive()) return StrategyKind::Coatomic;
  return StrategyKind::Sampled;
}

Verdict check_total_correct(const Predicate& p, const Transformer& s, const Predicate& q, const Predicate& r) {
  return correctness(p, s, q, r, r);
}

Verdict check_partial_correct(const Predicate& p, const Transformer& s, const Predicate& q, const Predicate& r) {
  if (!same_space(s.entry(), s.exceptional())) {
    throw CheckError("partial correctness requires the exceptional space to equal the entry space");
  }
  require_same_space(s.exceptional(), r.space(), "exceptional postcondition");
  return correctness(p, s, q, r, p | r);
}

Verdict check_total_refine(const Transformer& s, const Transformer& t, const CheckOptions& opts) {
  require_shape(s, t);
  return refine(s, t, opts);
}

Verdict check_partial_refine(const Transformer& s, const Transformer& t, const CheckOptions& opts) {
  require_shape(s, t);
  meet_raise(t);
  return refine(meet_raise(s), t, opts);
}

Transformer project(const Transformer& t, const Relation& r) {
  const auto& sigma = r.source();
  const auto& delta = r.target();
  require_same_space(delta, t.entry(), "projection: concrete entry space");
  require_same_space(delta, t.normal(), "projection: concrete normal space");
  require_same_space(delta, t.exceptional(), "projection: concrete exceptional space");
  const auto back = r.inverse();
  auto enter = update(r, Relation::empty(sigma, sigma), false);
  auto normal_back = update(back, Relation::empty(delta, delta), true);
  auto exc_back = update(Relation::empty(delta, sigma), back, true);
  return sequential(enter, exceptional(sequential(t, normal_back), exc_back));
}

Verdict check_data_refine(RefineKind kind, const Transformer& s, const Relation& r, const Transformer& t,
                          const CheckOptions& opts) {
  require_same_space(s.entry(), r.source(), "data refinement: abstract space");
  auto projected = project(t, r);
  return kind == RefineKind::Total ? check_total_refine(s, projected, opts)
                                   : check_partial_refine(s, projected, opts);
}

bool replays(const Counterexample& c, const Transformer& left, const Transformer& right) {
  return left.wp(c.q, c.r).contains(c.state) && !right.wp(c.q, c.r).contains(c.state);
}

}  // namespace exref
