#ifndef SAMPLUS_CORE_LEARNER_HPP
#define SAMPLUS_CORE_LEARNER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "core/model.hpp"
#include "core/trajectory.hpp"

namespace samplus {

enum class LearnMode { interval, point };

struct LearnerConfig {
  double delta = 0.1;  // in (0, 1)
  LearnMode mode = LearnMode::interval;
  // union-bound constants when no domain supplies them
  std::optional<std::uint64_t> fluent_count_override;
  std::optional<std::uint64_t> action_count_override;
};

// Weighted observation counts for one (action, literal) pair: `eligible` is
// the weight of triplets whose pre-state lacks the literal (the only
// informative ones), `added` the weight of those where it appears in the
// post-state but not the pre-state.
struct EffectCounts {
  std::uint64_t added = 0;
  std::uint64_t eligible = 0;
};

// Closed subinterval of [0,1] of admissible transition probabilities.
struct CredalInterval {
  double low = 0.0;
  double high = 1.0;

  bool vacuous() const { return low == 0.0 && high == 1.0; }
  bool contains(double p) const { return low <= p && p <= high; }
};

// Point form of an estimate: the exact empirical ratio when the effect was
// observed, otherwise the union-bound value for never-observed literals.
using PointEstimate = std::variant<Rat, double>;

double point_value(const PointEstimate& p);

struct LearnedEffect {
  Literal literal;
  EffectCounts counts;
  CredalInterval interval;
  std::optional<PointEstimate> point;  // empty when no triplet was informative

  bool observed() const { return counts.added > 0; }
  bool unconstrained() const { return counts.eligible == 0; }
};

struct LearnedAction {
  std::string name;
  std::vector<Literal> preconditions;  // vocabulary order
  std::vector<LearnedEffect> effects;  // 2|F|: per fluent, positive then negative

  const LearnedEffect* find_effect(const Literal& lit) const;
};

struct LearnedModel {
  VocabPtr vocab;
  std::string domain_name;
  LearnerConfig config;
  std::uint64_t fluent_count = 0;  // the |F|, |A| used by the union bound
  std::uint64_t action_count = 0;
  std::vector<LearnedAction> actions;
  std::vector<std::string> unobserved_actions;

  const LearnedAction* find_action(std::string_view name) const;
};

// Intersection of the pre-state literal sets: exactly the literals true in
// every observed pre-state. Weights are irrelevant. Requires a nonempty
// multiset.
std::vector<Literal> learn_preconditions(std::span<const WeightedTriplet> triplets);

EffectCounts count_effects(std::span<const WeightedTriplet> triplets,
                           const Literal& lit);

// eligible == 0           -> [0, 1]
// added > 0               -> added/eligible +- sqrt(ln(2/delta) / (2 eligible)), capped
// added == 0, eligible > 0 -> [0, min(1, ln(1/delta) / eligible)]
CredalInterval credal_interval(const EffectCounts& counts, double delta);

// added > 0               -> added/eligible, exact
// added == 0, eligible > 0 -> min(1, ln(2 |F| |A| / delta) / (2 eligible))
// eligible == 0           -> nothing (unconstrained)
std::optional<PointEstimate> point_estimate(const EffectCounts& counts,
                                            double delta,
                                            std::uint64_t fluent_count,
                                            std::uint64_t action_count);

// Learns preconditions and per-literal effect estimates for every action
// observed in `ts`. When `dom` is supplied it fixes the vocabulary, the
// action order, the union-bound constants and the unobserved-action list;
// otherwise everything is inferred from `ts`.
LearnedModel learn(const TrajectorySet& ts, const LearnerConfig& cfg,
                   const Domain* dom);

// PPDDL(-IP) view of the model. Interval endpoints and union-bound values
// are rounded to `precision` decimal places; empirical ratios stay exact.
// Vacuous entries ([0,1] intervals, zero or absent point estimates) are
// omitted; factors keep a (when (not l) ...) guard unless the preconditions
// already entail it.
Domain to_domain(const LearnedModel& model, int precision);

// to_domain rendered as text, preceded by a comment header naming any
// unobserved actions
std::string emit_learned(const LearnedModel& model, int precision);

}  // namespace samplus

#endif
