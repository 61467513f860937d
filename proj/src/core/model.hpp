#ifndef SAMPLUS_CORE_MODEL_HPP
#define SAMPLUS_CORE_MODEL_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/rational.hpp"

namespace samplus {

// Ordered fluent vocabulary. Order is the declaration order of the
// (:predicates ...) block and drives every serialized iteration.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  // throws Error(vocabulary) when the fluent is not declared
  std::size_t require(std::string_view name) const;

  bool operator==(const Vocabulary& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using VocabPtr = std::shared_ptr<const Vocabulary>;

VocabPtr make_vocabulary(std::vector<std::string> names);

// A fluent or its negation. Names are canonical lower case.
struct Literal {
  std::string fluent;
  bool positive = true;

  Literal negated() const { return {fluent, !positive}; }
  auto operator<=>(const Literal&) const = default;
};

std::string to_string(const Literal& lit);  // "(f)" or "(not (f))"

// Total truth assignment over a vocabulary (closed world).
class State {
 public:
  State() = default;
  State(VocabPtr vocab, std::vector<bool> truth);

  static State all_false(VocabPtr vocab);
  // positive fluent names; everything unlisted is false
  static State from_positive(VocabPtr vocab, std::span<const std::string> names);

  const VocabPtr& vocab() const { return vocab_; }
  std::size_t size() const { return truth_.size(); }
  bool value(std::size_t fluent_index) const { return truth_[fluent_index]; }
  const std::vector<bool>& bits() const { return truth_; }

  // membership test: l in s  <=>  assignment(l.fluent) == l.positive
  bool holds(const Literal& lit) const;

  // the 2-per-fluent literal-set view has exactly |F| elements
  std::vector<Literal> literals() const;
  std::vector<std::string> positive_names() const;

  bool operator==(const State& other) const;

 private:
  VocabPtr vocab_;
  std::vector<bool> truth_;
};

// Point probabilities are stored as degenerate intervals (low == high).
struct Prob {
  Rat low;
  Rat high;

  static Prob point(Rat p) { return {p, p}; }
  static Prob interval(Rat lo, Rat hi) { return {std::move(lo), std::move(hi)}; }
  bool is_point() const { return low == high; }
  bool operator==(const Prob&) const = default;
};

// One independent stochastic effect: when `condition` holds in the pre-state,
// `added` becomes true with probability `probability`.
struct EffectFactor {
  std::vector<Literal> condition;
  Prob probability;
  Literal added;

  bool deterministic() const {
    return probability.is_point() && probability.low == 1;
  }
  bool operator==(const EffectFactor&) const = default;
};

struct ActionSchema {
  std::string name;
  std::vector<Literal> precondition;  // conjunction, at most one literal per fluent
  std::vector<EffectFactor> effect;

  bool operator==(const ActionSchema&) const = default;
};

struct Domain {
  std::string name;
  std::vector<std::string> requirements;
  VocabPtr fluents;
  std::vector<ActionSchema> actions;

  const ActionSchema* find_action(std::string_view name) const;
};

bool domains_equal(const Domain& a, const Domain& b);

struct Problem {
  std::string name;
  State init;
  std::vector<Literal> goal;
};

// true iff every literal's polarity matches the assignment; empty set is
// vacuously satisfied. Throws Error(vocabulary) on unknown fluents.
bool state_satisfies(const State& s, std::span<const Literal> lits);

// literals true in `after` and false in `before` (the changed fluents, with
// the post-state polarity), in vocabulary order
std::vector<Literal> literal_diff(const State& before, const State& after);

std::string canonical_name(std::string_view raw);  // lower-cased copy

}  // namespace samplus

#endif
