#include "core/trajectory.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/syntax.hpp"

namespace samplus {

namespace {

[[noreturn]] void fail(const SourceSpan& span, const std::string& msg) {
  throw ParseError(ErrorKind::syntax, span, msg);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_';
  });
}

// raw trajectory before closed-world completion
struct RawStep {
  std::vector<std::string> positive;  // fluent names
  SourceSpan span;
};

struct RawTrajectory {
  std::string id;
  std::uint64_t weight = 1;
  std::vector<RawStep> states;
  std::vector<std::string> actions;
};

RawStep parse_state_form(const SExpr& e) {
  RawStep step;
  step.span = e.span;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& lit = e[i];
    if (lit.is_atom || lit.size() != 1 || !lit[0].is_atom ||
        !is_identifier(lit[0].atom)) {
      fail(lit.span, "states list positive literals: (fluent-name)");
    }
    if (!seen.insert(lit[0].atom).second) {
      throw ParseError(ErrorKind::semantic, lit.span,
                       "duplicate literal '" + lit[0].atom + "' in state");
    }
    step.positive.push_back(lit[0].atom);
  }
  return step;
}

RawTrajectory parse_trajectory_form(const SExpr& root) {
  if (!root.tagged(":trajectory")) {
    fail(root.span, "expected (:trajectory ...)");
  }
  if (root.size() < 2 || !root[1].is_atom || !is_identifier(root[1].atom)) {
    fail(root.span, "expected a trajectory id after :trajectory");
  }
  RawTrajectory out;
  out.id = root[1].atom;

  std::size_t i = 2;
  if (i < root.size() && root[i].is_atom && root[i].atom == ":weight") {
    if (i + 1 >= root.size() || !root[i + 1].is_atom) {
      fail(root[i].span, "expected a positive integer after :weight");
    }
    auto w = parse_rational(root[i + 1].atom);
    if (!w || denominator(*w) != 1 || *w < 1) {
      fail(root[i + 1].span, "weight must be a positive integer");
    }
    out.weight = numerator(*w).convert_to<std::uint64_t>();
    i += 2;
  }

  bool expect_state = true;
  for (; i < root.size(); ++i) {
    const SExpr& part = root[i];
    if (expect_state) {
      if (!part.tagged(":state")) fail(part.span, "expected (:state ...)");
      out.states.push_back(parse_state_form(part));
    } else {
      if (!part.tagged(":action") || part.size() != 2 || !part[1].is_atom ||
          !is_identifier(part[1].atom)) {
        fail(part.span, "expected (:action <name>)");
      }
      out.actions.push_back(part[1].atom);
    }
    expect_state = !expect_state;
  }
  if (out.states.size() != out.actions.size() + 1 || out.actions.empty()) {
    throw ParseError(ErrorKind::semantic, root.span,
                     "trajectory '" + out.id +
                         "' must alternate states and actions and contain at "
                         "least one action");
  }
  return out;
}

TrajectorySet assemble(const std::vector<RawTrajectory>& raw, const Domain* dom) {
  VocabPtr vocab;
  if (dom) {
    vocab = dom->fluents;
    for (const auto& t : raw) {
      for (const auto& s : t.states) {
        for (const auto& name : s.positive) {
          if (!vocab->find(name)) {
            throw ParseError(ErrorKind::vocabulary, s.span,
                             "unknown fluent '" + name + "'");
          }
        }
      }
    }
  } else {
    std::vector<std::string> names;
    for (const auto& t : raw) {
      for (const auto& s : t.states) {
        for (const auto& name : s.positive) {
          if (std::find(names.begin(), names.end(), name) == names.end()) {
            names.push_back(name);
          }
        }
      }
    }
    vocab = make_vocabulary(std::move(names));
  }

  TrajectorySet ts;
  ts.vocab = vocab;
  std::unordered_set<std::string> ids;
  for (const auto& t : raw) {
    if (!ids.insert(t.id).second) {
      throw Error(ErrorKind::semantic, "duplicate trajectory id '" + t.id + "'");
    }
    Trajectory traj;
    traj.id = t.id;
    traj.initial = State::from_positive(vocab, t.states[0].positive);
    for (std::size_t k = 0; k < t.actions.size(); ++k) {
      traj.steps.emplace_back(t.actions[k],
                              State::from_positive(vocab, t.states[k + 1].positive));
    }
    ts.entries.push_back({std::move(traj), t.weight});
  }
  return ts;
}

}  // namespace

std::vector<WeightedTriplet> triplets_for(const TrajectorySet& ts,
                                          std::string_view action) {
  std::vector<WeightedTriplet> out;
  for (const auto& entry : ts.entries) {
    const State* pre = &entry.trajectory.initial;
    for (const auto& [name, post] : entry.trajectory.steps) {
      if (name == action) {
        out.push_back({{*pre, name, post}, entry.weight});
      }
      pre = &post;
    }
  }
  return out;
}

std::uint64_t total_weight(const std::vector<WeightedTriplet>& triplets) {
  std::uint64_t sum = 0;
  for (const auto& t : triplets) sum += t.weight;
  return sum;
}

std::vector<std::string> observed_actions(const TrajectorySet& ts) {
  std::vector<std::string> out;
  for (const auto& entry : ts.entries) {
    for (const auto& [name, post] : entry.trajectory.steps) {
      if (std::find(out.begin(), out.end(), name) == out.end()) {
        out.push_back(name);
      }
    }
  }
  return out;
}

TrajectorySet parse_trajectories(std::string_view text, const Domain* dom) {
  std::vector<RawTrajectory> raw;
  for (const SExpr& form : parse_sexprs(text)) {
    raw.push_back(parse_trajectory_form(form));
  }
  return assemble(raw, dom);
}

TrajectorySet load_trajectories(const std::vector<std::string>& paths,
                                const Domain* dom) {
  std::vector<RawTrajectory> raw;
  for (const auto& path : paths) {
    std::string text = read_file(path);
    try {
      for (const SExpr& form : parse_sexprs(text)) {
        raw.push_back(parse_trajectory_form(form));
      }
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.span(), path + ": " + e.message(), e.expected());
    }
  }
  try {
    return assemble(raw, dom);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.span(), e.message(), e.expected());
  }
}

std::string emit_trajectories(const TrajectorySet& ts) {
  std::ostringstream out;
  bool first = true;
  for (const auto& entry : ts.entries) {
    if (!first) out << "\n";
    first = false;
    out << "(:trajectory " << entry.trajectory.id << " :weight " << entry.weight;
    auto emit_state = [&](const State& s) {
      out << "\n  (:state";
      for (const auto& name : s.positive_names()) out << " (" << name << ")";
      out << ")";
    };
    emit_state(entry.trajectory.initial);
    for (const auto& [name, post] : entry.trajectory.steps) {
      out << "\n  (:action " << name << ")";
      emit_state(post);
    }
    out << ")\n";
  }
  return out.str();
}

ValidationReport validate(const TrajectorySet& ts, const Domain& dom) {
  if (!ts.entries.empty() && !(*ts.vocab == *dom.fluents)) {
    throw Error(ErrorKind::vocabulary,
                "trajectory vocabulary does not match the domain");
  }
  ValidationReport report;
  report.trajectory_count = ts.entries.size();
  for (const auto& entry : ts.entries) {
    const Trajectory& traj = entry.trajectory;
    const State* pre = &traj.initial;
    for (std::size_t k = 0; k < traj.steps.size(); ++k) {
      const auto& [name, post] = traj.steps[k];
      ++report.triplet_count;
      auto add = [&](std::string kind, std::string msg) {
        report.violations.push_back(
            {traj.id, k + 1, std::move(kind), std::move(msg)});
      };

      const ActionSchema* schema = dom.find_action(name);
      if (!schema) {
        add("unknown-action", "action '" + name + "' is not declared");
        pre = &post;
        continue;
      }
      for (const auto& lit : schema->precondition) {
        if (!pre->holds(lit)) {
          add("precondition",
              "'" + name + "' requires " + to_string(lit) + " in the pre-state");
        }
      }
      for (const auto& changed : literal_diff(*pre, post)) {
        bool explained = false;
        for (const auto& f : schema->effect) {
          if (f.added == changed && f.probability.high > 0 &&
              state_satisfies(*pre, f.condition)) {
            explained = true;
            break;
          }
        }
        if (!explained) {
          add("unexplained-change",
              to_string(changed) + " changed but no applicable factor adds it");
        }
      }
      for (const auto& f : schema->effect) {
        if (f.deterministic() && state_satisfies(*pre, f.condition) &&
            !post.holds(f.added)) {
          add("unrealized-effect",
              "deterministic effect " + to_string(f.added) + " of '" + name +
                  "' is absent from the post-state");
        }
      }
      pre = &post;
    }
  }
  return report;
}

std::string render_text(const ValidationReport& report) {
  std::ostringstream out;
  out << report.trajectory_count << " trajectories, " << report.triplet_count
      << " triplets, " << report.violations.size() << " violations\n";
  for (const auto& v : report.violations) {
    out << v.trajectory_id << " step " << v.step << ": [" << v.kind << "] "
        << v.message << "\n";
  }
  return out.str();
}

std::string render_json(const ValidationReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["trajectories"] = report.trajectory_count;
  j["triplets"] = report.triplet_count;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations) {
    j["violations"].push_back({{"trajectory", v.trajectory_id},
                               {"step", v.step},
                               {"kind", v.kind},
                               {"message", v.message}});
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::io, "cannot read '" + path + "'");
  return buf.str();
}

}  // namespace samplus
