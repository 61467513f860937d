#ifndef SAMPLUS_CORE_TRAJECTORY_HPP
#define SAMPLUS_CORE_TRAJECTORY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/model.hpp"

namespace samplus {

struct ActionTriplet {
  State pre;
  std::string action;
  State post;
};

// s0, a1, s1, ..., an, sn with n >= 1
struct Trajectory {
  std::string id;
  State initial;
  std::vector<std::pair<std::string, State>> steps;  // (action, successor)

  std::size_t triplet_count() const { return steps.size(); }
};

struct WeightedTrajectory {
  Trajectory trajectory;
  std::uint64_t weight = 1;
};

struct TrajectorySet {
  VocabPtr vocab;
  std::vector<WeightedTrajectory> entries;

  bool empty() const { return entries.empty(); }
};

struct WeightedTriplet {
  ActionTriplet triplet;
  std::uint64_t weight = 1;
};

// every triplet of every trajectory whose action equals `action`, each
// carrying its trajectory's weight; unknown actions give an empty result
std::vector<WeightedTriplet> triplets_for(const TrajectorySet& ts,
                                          std::string_view action);

std::uint64_t total_weight(const std::vector<WeightedTriplet>& triplets);

// distinct action names in first-appearance order
std::vector<std::string> observed_actions(const TrajectorySet& ts);

// ------------------------------------------------------------------
// file format: one s-expression per trajectory, states as positive-literal
// lists under the closed world
//
//   (:trajectory <id> :weight <n>
//     (:state (lit)...)
//     (:action <name>)
//     (:state ...) ...)
//
// :weight defaults to 1 when omitted.

// When `dom` is null the vocabulary is inferred as the union of fluents in
// the inputs, ordered by first appearance.
TrajectorySet parse_trajectories(std::string_view text, const Domain* dom);
TrajectorySet load_trajectories(const std::vector<std::string>& paths,
                                const Domain* dom);

std::string emit_trajectories(const TrajectorySet& ts);

// ------------------------------------------------------------------
// consistency against a ground-truth domain

struct Violation {
  std::string trajectory_id;
  std::size_t step = 0;  // 1-based
  std::string kind;      // unknown-action | precondition | unexplained-change | unrealized-effect
  std::string message;
};

struct ValidationReport {
  std::size_t trajectory_count = 0;
  std::size_t triplet_count = 0;  // weight-independent
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks, per triplet: the pre-state satisfies the action's preconditions;
// every changed fluent is explained by a factor whose condition holds in the
// pre-state and whose probability can be positive; and every deterministic
// factor whose condition holds is realized in the post-state.
ValidationReport validate(const TrajectorySet& ts, const Domain& dom);

std::string render_text(const ValidationReport& report);
std::string render_json(const ValidationReport& report);

std::string read_file(const std::string& path);  // throws Error(io)

}  // namespace samplus

#endif
