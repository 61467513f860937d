#ifndef SAMPLUS_CORE_SYNTAX_HPP
#define SAMPLUS_CORE_SYNTAX_HPP

#include <string>
#include <string_view>
#include <vector>

#include "core/error.hpp"
#include "core/model.hpp"

namespace samplus {

// S-expression layer, shared by the domain/problem grammar and the
// trajectory file format. `;` starts a comment running to end of line.
struct SExpr {
  bool is_atom = false;
  std::string atom;            // canonical lower case
  std::vector<SExpr> children;
  SourceSpan span;

  bool tagged(std::string_view tag) const {
    return !is_atom && !children.empty() && children[0].is_atom &&
           children[0].atom == tag;
  }
  const SExpr& operator[](std::size_t i) const { return children[i]; }
  std::size_t size() const { return children.size(); }
};

// every top-level form in the input, in order
std::vector<SExpr> parse_sexprs(std::string_view text);

// Grammar:
//   (define (domain N)
//     (:requirements :flag...)
//     (:predicates (p)...)
//     (:action N :precondition GD :effect E)...)
//   GD ::= (p) | (not (p)) | (and GD...)
//   E  ::= (and E...) | (p) | (not (p))
//        | (probabilistic P E) | (probabilistic-interval P P E)
//        | (when GD E)
// Probabilities are decimal ("0.9") or rational ("1/3") literals, stored
// exactly. Effects normalize to a flat factor list; a `probabilistic` over a
// conjunction distributes its probability over the conjunct literals.
Domain parse_domain(std::string_view text);

// Accepts both (define (problem N) ...) and the header-as-atom variant
// (:define N ...); an optional (:domain N) section is checked against `dom`
// when present. :init is completed to a total state under the closed-world
// reading.
Problem parse_problem(std::string_view text, const Domain& dom);

// Deterministic pretty printer; probabilities carry exactly `precision`
// decimal places. parse_domain(emit_domain(d, k)) == d up to probability
// rounding at k places.
std::string emit_domain(const Domain& dom, int precision);

std::string emit_problem(const Problem& prob, int precision);

}  // namespace samplus

#endif
