#include "core/learner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "core/error.hpp"
#include "core/syntax.hpp"

namespace samplus {

double point_value(const PointEstimate& p) {
  if (const Rat* r = std::get_if<Rat>(&p)) return to_double(*r);
  return std::get<double>(p);
}

const LearnedEffect* LearnedAction::find_effect(const Literal& lit) const {
  for (const auto& e : effects) {
    if (e.literal == lit) return &e;
  }
  return nullptr;
}

const LearnedAction* LearnedModel::find_action(std::string_view name) const {
  for (const auto& a : actions) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::vector<Literal> learn_preconditions(std::span<const WeightedTriplet> triplets) {
  if (triplets.empty()) {
    throw Error(ErrorKind::empty_input,
                "cannot learn preconditions from zero observations");
  }
  const State& first = triplets[0].triplet.pre;
  std::vector<Literal> out;
  for (std::size_t i = 0; i < first.size(); ++i) {
    bool value = first.value(i);
    bool constant = true;
    for (const auto& wt : triplets.subspan(1)) {
      if (wt.triplet.pre.value(i) != value) {
        constant = false;
        break;
      }
    }
    if (constant) out.push_back({first.vocab()->name(i), value});
  }
  return out;
}

EffectCounts count_effects(std::span<const WeightedTriplet> triplets,
                           const Literal& lit) {
  EffectCounts counts;
  for (const auto& wt : triplets) {
    if (wt.triplet.pre.holds(lit)) continue;
    counts.eligible += wt.weight;
    if (wt.triplet.post.holds(lit)) counts.added += wt.weight;
  }
  return counts;
}

CredalInterval credal_interval(const EffectCounts& counts, double delta) {
  if (counts.eligible == 0) return {0.0, 1.0};
  double n = static_cast<double>(counts.eligible);
  if (counts.added > 0) {
    double center = static_cast<double>(counts.added) / n;
    double half_width = std::sqrt(std::log(2.0 / delta) / (2.0 * n));
    return {std::max(0.0, center - half_width), std::min(1.0, center + half_width)};
  }
  return {0.0, std::min(1.0, std::log(1.0 / delta) / n)};
}

std::optional<PointEstimate> point_estimate(const EffectCounts& counts,
                                            double delta,
                                            std::uint64_t fluent_count,
                                            std::uint64_t action_count) {
  if (counts.eligible == 0) return std::nullopt;
  if (counts.added > 0) {
    return PointEstimate{Rat(BigInt(counts.added), BigInt(counts.eligible))};
  }
  double n = static_cast<double>(counts.eligible);
  double bound = std::log(2.0 * static_cast<double>(fluent_count) *
                          static_cast<double>(action_count) / delta) /
                 (2.0 * n);
  return PointEstimate{std::min(1.0, bound)};
}

LearnedModel learn(const TrajectorySet& ts, const LearnerConfig& cfg,
                   const Domain* dom) {
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw Error(ErrorKind::config, "delta must lie strictly between 0 and 1");
  }
  if (ts.entries.empty()) {
    throw Error(ErrorKind::empty_input, "trajectory set is empty");
  }

  VocabPtr vocab = ts.vocab;
  if (dom && !(*vocab == *dom->fluents)) {
    throw Error(ErrorKind::vocabulary,
                "trajectory vocabulary does not match the domain");
  }

  std::vector<std::string> observed = observed_actions(ts);
  std::vector<std::string> order;
  std::vector<std::string> unobserved;
  if (dom) {
    std::unordered_set<std::string_view> seen(observed.begin(), observed.end());
    for (const auto& name : observed) {
      if (!dom->find_action(name)) {
        throw Error(ErrorKind::vocabulary,
                    "action '" + name + "' is not declared in the domain");
      }
    }
    for (const auto& a : dom->actions) {
      if (seen.contains(a.name)) {
        order.push_back(a.name);
      } else {
        unobserved.push_back(a.name);
      }
    }
  } else {
    order = observed;
  }

  LearnedModel model;
  model.vocab = vocab;
  model.domain_name = dom ? dom->name : "learned";
  model.config = cfg;
  model.fluent_count = cfg.fluent_count_override.value_or(
      dom ? dom->fluents->size() : vocab->size());
  model.action_count = cfg.action_count_override.value_or(
      dom ? dom->actions.size() : observed.size());
  if (model.fluent_count == 0 || model.action_count == 0) {
    throw Error(ErrorKind::config,
                "the union bound needs at least one fluent and one action");
  }
  model.unobserved_actions = std::move(unobserved);

  for (const auto& name : order) {
    auto triplets = triplets_for(ts, name);
    LearnedAction action;
    action.name = name;
    action.preconditions = learn_preconditions(triplets);
    for (std::size_t i = 0; i < vocab->size(); ++i) {
      for (bool positive : {true, false}) {
        LearnedEffect effect;
        effect.literal = {vocab->name(i), positive};
        effect.counts = count_effects(triplets, effect.literal);
        effect.interval = credal_interval(effect.counts, cfg.delta);
        effect.point = point_estimate(effect.counts, cfg.delta,
                                      model.fluent_count, model.action_count);
        action.effects.push_back(std::move(effect));
      }
    }
    model.actions.push_back(std::move(action));
  }
  return model;
}

namespace {

Rat round_to_precision(double value, int precision) {
  auto parsed = parse_rational(format_fixed(rat_from_double(value), precision));
  return *parsed;
}

}  // namespace

Domain to_domain(const LearnedModel& model, int precision) {
  Domain dom;
  dom.name = model.domain_name;
  dom.requirements = {":negative-preconditions"};
  dom.fluents = model.vocab;
  for (const auto& learned : model.actions) {
    ActionSchema schema;
    schema.name = learned.name;
    schema.precondition = learned.preconditions;
    for (const auto& e : learned.effects) {
      Prob prob;
      if (model.config.mode == LearnMode::interval) {
        if (e.interval.vacuous()) continue;
        prob = Prob::interval(round_to_precision(e.interval.low, precision),
                              round_to_precision(e.interval.high, precision));
      } else {
        if (!e.point) continue;
        if (const Rat* ratio = std::get_if<Rat>(&*e.point)) {
          prob = Prob::point(*ratio);
        } else {
          prob = Prob::point(round_to_precision(std::get<double>(*e.point), precision));
        }
        if (prob.low == 0) continue;
      }
      EffectFactor factor;
      factor.probability = std::move(prob);
      factor.added = e.literal;
      // the estimate conditions on the literal being absent; drop the guard
      // when the preconditions already entail that
      Literal guard = e.literal.negated();
      bool entailed = std::find(learned.preconditions.begin(),
                                learned.preconditions.end(),
                                guard) != learned.preconditions.end();
      if (!entailed) factor.condition.push_back(std::move(guard));
      schema.effect.push_back(std::move(factor));
    }
    dom.actions.push_back(std::move(schema));
  }
  return dom;
}

std::string emit_learned(const LearnedModel& model, int precision) {
  std::ostringstream out;
  if (!model.unobserved_actions.empty()) {
    out << "; unobserved actions:";
    for (const auto& name : model.unobserved_actions) out << " " << name;
    out << "\n";
  }
  out << emit_domain(to_domain(model, precision), precision);
  return out.str();
}

}  // namespace samplus
