#include "core/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "core/error.hpp"

namespace samplus {

Vocabulary::Vocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error(ErrorKind::semantic, "empty fluent name");
    if (!seen.insert(n).second) {
      throw Error(ErrorKind::semantic, "duplicate fluent '" + n + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Vocabulary::require(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorKind::vocabulary, "unknown fluent '" + std::string(name) + "'");
}

VocabPtr make_vocabulary(std::vector<std::string> names) {
  return std::make_shared<const Vocabulary>(std::move(names));
}

std::string to_string(const Literal& lit) {
  return lit.positive ? "(" + lit.fluent + ")" : "(not (" + lit.fluent + "))";
}

State::State(VocabPtr vocab, std::vector<bool> truth)
    : vocab_(std::move(vocab)), truth_(std::move(truth)) {
  if (!vocab_ || truth_.size() != vocab_->size()) {
    throw Error(ErrorKind::vocabulary, "state size does not match vocabulary");
  }
}

State State::all_false(VocabPtr vocab) {
  std::vector<bool> truth(vocab->size(), false);
  return State(std::move(vocab), std::move(truth));
}

State State::from_positive(VocabPtr vocab, std::span<const std::string> names) {
  std::vector<bool> truth(vocab->size(), false);
  for (const auto& n : names) truth[vocab->require(n)] = true;
  return State(std::move(vocab), std::move(truth));
}

bool State::holds(const Literal& lit) const {
  return truth_[vocab_->require(lit.fluent)] == lit.positive;
}

std::vector<Literal> State::literals() const {
  std::vector<Literal> out;
  out.reserve(truth_.size());
  for (std::size_t i = 0; i < truth_.size(); ++i) {
    out.push_back({vocab_->name(i), truth_[i]});
  }
  return out;
}

std::vector<std::string> State::positive_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < truth_.size(); ++i) {
    if (truth_[i]) out.push_back(vocab_->name(i));
  }
  return out;
}

bool State::operator==(const State& other) const {
  if (vocab_ == other.vocab_) return truth_ == other.truth_;
  if (!vocab_ || !other.vocab_) return false;
  return *vocab_ == *other.vocab_ && truth_ == other.truth_;
}

const ActionSchema* Domain::find_action(std::string_view name) const {
  for (const auto& a : actions) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

bool domains_equal(const Domain& a, const Domain& b) {
  return a.name == b.name && a.requirements == b.requirements &&
         *a.fluents == *b.fluents && a.actions == b.actions;
}

bool state_satisfies(const State& s, std::span<const Literal> lits) {
  return std::all_of(lits.begin(), lits.end(),
                     [&](const Literal& l) { return s.holds(l); });
}

std::vector<Literal> literal_diff(const State& before, const State& after) {
  if (!(*before.vocab() == *after.vocab())) {
    throw Error(ErrorKind::vocabulary, "states have different vocabularies");
  }
  std::vector<Literal> out;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before.value(i) != after.value(i)) {
      out.push_back({before.vocab()->name(i), after.value(i)});
    }
  }
  return out;
}

std::string canonical_name(std::string_view raw) {
  std::string out(raw);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace samplus
