#ifndef SAMPLUS_CORE_EVALUATE_HPP
#define SAMPLUS_CORE_EVALUATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace samplus {

// One row of the effect comparison: the truth model's add probability for a
// literal under the it-was-absent condition, against what the learned model
// claims. A learned point is a degenerate interval. Absent learned factors
// read as [0,1] when the learned file uses intervals, else as point 0.
struct EvalEffect {
  Literal literal;
  Rat truth;
  std::optional<Prob> learned;  // empty = no factor in the learned action
  bool contained = false;       // truth in [low, high]
  double abs_error = 0.0;
};

struct EvalAction {
  std::string name;
  // learned precondition literals the truth preconditions do not entail
  std::vector<Literal> spurious_preconditions;
  // truth precondition literals missing from the learned ones
  std::vector<Literal> missing_preconditions;
  bool preconditions_entailed() const { return spurious_preconditions.empty(); }
  std::vector<EvalEffect> effects;  // rows where truth != 0 or a factor exists
  std::size_t skipped_conditional_factors = 0;
};

struct EvalReport {
  std::vector<EvalAction> actions;           // present in both models
  std::vector<std::string> missing_actions;  // truth only (unobserved)
  std::vector<std::string> extra_actions;    // learned only
  bool learned_uses_intervals = false;

  bool all_contained() const;
};

// `truth` must be point-valued. Actions and fluents are matched by name.
EvalReport evaluate(const Domain& learned, const Domain& truth);

std::string render_text(const EvalReport& report);
std::string render_json(const EvalReport& report);

}  // namespace samplus

#endif
