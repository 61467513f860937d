#include "core/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace samplus {

namespace {

bool condition_matches(const std::vector<Literal>& condition, const Literal& lit) {
  if (condition.empty()) return true;
  return condition.size() == 1 && condition[0] == lit.negated();
}

// independent factors compose as 1 - prod(1 - p)
Rat combine(const std::vector<Rat>& probs) {
  Rat miss(1);
  for (const auto& p : probs) miss *= (Rat(1) - p);
  return Rat(1) - miss;
}

}  // namespace

bool EvalReport::all_contained() const {
  for (const auto& a : actions) {
    for (const auto& e : a.effects) {
      if (!e.contained) return false;
    }
  }
  return true;
}

EvalReport evaluate(const Domain& learned, const Domain& truth) {
  for (const auto& a : truth.actions) {
    for (const auto& f : a.effect) {
      if (!f.probability.is_point()) {
        throw Error(ErrorKind::semantic,
                    "truth model must be point-valued (action '" + a.name + "')");
      }
    }
  }

  EvalReport report;
  for (const auto& a : learned.actions) {
    for (const auto& f : a.effect) {
      if (!f.probability.is_point()) {
        report.learned_uses_intervals = true;
      }
    }
  }

  for (const auto& truth_action : truth.actions) {
    const ActionSchema* learned_action = learned.find_action(truth_action.name);
    if (!learned_action) {
      report.missing_actions.push_back(truth_action.name);
      continue;
    }
    EvalAction row;
    row.name = truth_action.name;
    for (const auto& lit : learned_action->precondition) {
      if (std::find(truth_action.precondition.begin(),
                    truth_action.precondition.end(),
                    lit) == truth_action.precondition.end()) {
        row.spurious_preconditions.push_back(lit);
      }
    }
    for (const auto& lit : truth_action.precondition) {
      if (std::find(learned_action->precondition.begin(),
                    learned_action->precondition.end(),
                    lit) == learned_action->precondition.end()) {
        row.missing_preconditions.push_back(lit);
      }
    }

    for (std::size_t i = 0; i < truth.fluents->size(); ++i) {
      for (bool positive : {true, false}) {
        Literal lit{truth.fluents->name(i), positive};

        std::vector<Rat> truth_probs;
        for (const auto& f : truth_action.effect) {
          if (f.added != lit) continue;
          if (condition_matches(f.condition, lit)) {
            truth_probs.push_back(f.probability.low);
          } else {
            ++row.skipped_conditional_factors;
          }
        }
        Rat truth_p = combine(truth_probs);

        std::vector<Prob> learned_probs;
        for (const auto& f : learned_action->effect) {
          if (f.added != lit) continue;
          if (condition_matches(f.condition, lit)) {
            learned_probs.push_back(f.probability);
          } else {
            ++row.skipped_conditional_factors;
          }
        }

        EvalEffect effect;
        effect.literal = lit;
        effect.truth = truth_p;
        if (!learned_probs.empty()) {
          Rat lo_miss(1), hi_miss(1);
          for (const auto& p : learned_probs) {
            lo_miss *= (Rat(1) - p.low);
            hi_miss *= (Rat(1) - p.high);
          }
          effect.learned = Prob::interval(Rat(1) - lo_miss, Rat(1) - hi_miss);
        } else if (truth_p == 0) {
          continue;  // trivially silent on both sides
        }

        Rat low = effect.learned ? effect.learned->low : Rat(0);
        Rat high = effect.learned
                       ? effect.learned->high
                       : (report.learned_uses_intervals ? Rat(1) : Rat(0));
        effect.contained = low <= truth_p && truth_p <= high;
        if (effect.contained) {
          effect.abs_error = 0.0;
        } else if (truth_p < low) {
          effect.abs_error = to_double(Rat(low - truth_p));
        } else {
          effect.abs_error = to_double(Rat(truth_p - high));
        }
        row.effects.push_back(std::move(effect));
      }
    }
    report.actions.push_back(std::move(row));
  }

  for (const auto& a : learned.actions) {
    if (!truth.find_action(a.name)) report.extra_actions.push_back(a.name);
  }
  return report;
}

namespace {

std::string prob_to_text(const Prob& p) {
  if (p.is_point()) return format_fixed(p.low, 6);
  return "[" + format_fixed(p.low, 6) + ", " + format_fixed(p.high, 6) + "]";
}

}  // namespace

std::string render_text(const EvalReport& report) {
  std::ostringstream out;
  for (const auto& a : report.actions) {
    out << "action " << a.name << "\n";
    if (a.preconditions_entailed()) {
      out << "  preconditions: entailed by truth\n";
    } else {
      out << "  preconditions: spurious";
      for (const auto& l : a.spurious_preconditions) out << " " << to_string(l);
      out << "\n";
    }
    if (!a.missing_preconditions.empty()) {
      out << "  preconditions: missing";
      for (const auto& l : a.missing_preconditions) out << " " << to_string(l);
      out << "\n";
    }
    for (const auto& e : a.effects) {
      out << "  " << to_string(e.literal) << " truth " << format_fixed(e.truth, 6)
          << " learned " << (e.learned ? prob_to_text(*e.learned) : "absent")
          << (e.contained ? " contained" : " NOT CONTAINED");
      if (!e.contained) {
        out << " (error " << format_fixed(rat_from_double(e.abs_error), 6) << ")";
      }
      out << "\n";
    }
    if (a.skipped_conditional_factors > 0) {
      out << "  (" << a.skipped_conditional_factors
          << " state-dependent conditional factors not compared)\n";
    }
  }
  if (!report.missing_actions.empty()) {
    out << "unobserved in learned model:";
    for (const auto& n : report.missing_actions) out << " " << n;
    out << "\n";
  }
  if (!report.extra_actions.empty()) {
    out << "extra in learned model:";
    for (const auto& n : report.extra_actions) out << " " << n;
    out << "\n";
  }
  out << (report.all_contained() ? "all effect probabilities contained\n"
                                 : "some effect probabilities not contained\n");
  return out.str();
}

std::string render_json(const EvalReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["actions"] = nlohmann::json::array();
  for (const auto& a : report.actions) {
    nlohmann::json ja;
    ja["name"] = a.name;
    ja["preconditions_entailed"] = a.preconditions_entailed();
    auto lit_names = [](const std::vector<Literal>& lits) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& l : lits) arr.push_back(to_string(l));
      return arr;
    };
    ja["spurious_preconditions"] = lit_names(a.spurious_preconditions);
    ja["missing_preconditions"] = lit_names(a.missing_preconditions);
    ja["effects"] = nlohmann::json::array();
    for (const auto& e : a.effects) {
      nlohmann::json je;
      je["literal"] = to_string(e.literal);
      je["truth"] = to_double(e.truth);
      if (e.learned) {
        if (e.learned->is_point()) {
          je["learned"] = {{"point", to_double(e.learned->low)}};
        } else {
          je["learned"] = {{"low", to_double(e.learned->low)},
                           {"high", to_double(e.learned->high)}};
        }
      } else {
        je["learned"] = nullptr;
      }
      je["contained"] = e.contained;
      je["abs_error"] = e.abs_error;
      ja["effects"].push_back(std::move(je));
    }
    ja["skipped_conditional_factors"] = a.skipped_conditional_factors;
    j["actions"].push_back(std::move(ja));
  }
  j["missing_actions"] = report.missing_actions;
  j["extra_actions"] = report.extra_actions;
  j["all_contained"] = report.all_contained();
  return j.dump(2) + "\n";
}

}  // namespace samplus
