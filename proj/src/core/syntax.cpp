#include "core/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace samplus {

namespace {

constexpr int kMaxNesting = 1000;

struct Token {
  enum Kind { lparen, rparen, atom, eof } kind = eof;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_trivia();
    Token tok;
    tok.span = here();
    if (pos_ >= src_.size()) {
      tok.kind = Token::eof;
      return tok;
    }
    char c = src_[pos_];
    if (c == '(' || c == ')') {
      tok.kind = c == '(' ? Token::lparen : Token::rparen;
      tok.text = c;
      advance();
      tok.span.end = pos_;
      return tok;
    }
    tok.kind = Token::atom;
    std::size_t start = pos_;
    while (pos_ < src_.size() && !is_delim(src_[pos_])) advance();
    tok.text = std::string(src_.substr(start, pos_ - start));
    tok.span.end = pos_;
    return tok;
  }

 private:
  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == ';' ||
           std::isspace(static_cast<unsigned char>(c));
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  SourceSpan here() const { return {pos_, pos_, line_, column_}; }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

[[noreturn]] void fail(const SourceSpan& span, const std::string& msg,
                       std::vector<std::string> expected = {}) {
  throw ParseError(ErrorKind::syntax, span, msg, std::move(expected));
}

[[noreturn]] void fail_semantic(const SourceSpan& span, const std::string& msg) {
  throw ParseError(ErrorKind::semantic, span, msg);
}

SExpr parse_node(Lexer& lex, const Token& tok, int depth) {
  if (depth > kMaxNesting) fail(tok.span, "expression nested too deeply");
  if (tok.kind == Token::eof) fail(tok.span, "unexpected end of input");
  if (tok.kind == Token::rparen) fail(tok.span, "unexpected ')'");
  if (tok.kind == Token::atom) {
    SExpr node;
    node.is_atom = true;
    node.atom = canonical_name(tok.text);
    node.span = tok.span;
    return node;
  }
  SExpr node;
  node.span = tok.span;
  while (true) {
    Token t = lex.next();
    if (t.kind == Token::eof) fail(t.span, "unclosed '('");
    if (t.kind == Token::rparen) {
      node.span.end = t.span.end;
      return node;
    }
    node.children.push_back(parse_node(lex, t, depth + 1));
  }
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_';
  });
}

std::string expect_identifier(const SExpr& e, const char* what) {
  if (!e.is_atom || !is_identifier(e.atom)) {
    fail(e.span, std::string("expected ") + what, {what});
  }
  return e.atom;
}

// ------------------------------------------------------------------
// domain grammar

struct DomainParser {
  const Vocabulary* vocab = nullptr;

  Literal parse_literal(const SExpr& e) {
    if (e.tagged("not")) {
      if (e.size() != 2) {
        fail(e.span, "(not ...) takes exactly one literal");
      }
      Literal inner = parse_literal(e[1]);
      if (!inner.positive) fail(e.span, "double negation is not supported");
      return inner.negated();
    }
    if (e.is_atom || e.size() != 1 || !e[0].is_atom) {
      fail(e.span, "expected a literal", {"(fluent)", "(not (fluent))"});
    }
    std::string name = expect_identifier(e[0], "fluent name");
    if (!vocab->find(name)) {
      fail_semantic(e[0].span, "undeclared predicate '" + name + "'");
    }
    return {name, true};
  }

  // GD ::= literal | (not L) | (and GD...); flattened, one literal per fluent
  void parse_condition(const SExpr& e, std::vector<Literal>& out) {
    if (e.tagged("and")) {
      for (std::size_t i = 1; i < e.size(); ++i) parse_condition(e[i], out);
      return;
    }
    Literal lit = parse_literal(e);
    for (const auto& prev : out) {
      if (prev.fluent == lit.fluent) {
        if (prev.positive != lit.positive) {
          fail_semantic(e.span, "contradictory literals for '" + lit.fluent + "'");
        }
        return;  // duplicate, keep first
      }
    }
    out.push_back(std::move(lit));
  }

  Rat parse_probability(const SExpr& e) {
    if (!e.is_atom) fail(e.span, "expected a probability literal");
    auto r = parse_rational(e.atom);
    if (!r) fail(e.span, "malformed probability '" + e.atom + "'");
    if (*r < 0 || *r > 1) {
      fail_semantic(e.span, "probability '" + e.atom + "' is outside [0,1]");
    }
    return *r;
  }

  // the operand of probabilistic / probabilistic-interval: a literal or a
  // conjunction of literals, nothing deeper
  std::vector<Literal> parse_added_literals(const SExpr& e) {
    std::vector<Literal> lits;
    if (e.tagged("and")) {
      for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i].tagged("and") || e[i].tagged("probabilistic") ||
            e[i].tagged("probabilistic-interval") || e[i].tagged("when")) {
          fail(e[i].span, "probabilistic effect must wrap literals only");
        }
        lits.push_back(parse_effect_literal(e[i]));
      }
      return lits;
    }
    lits.push_back(parse_effect_literal(e));
    return lits;
  }

  Literal parse_effect_literal(const SExpr& e) {
    if (e.tagged("not")) {
      if (e.size() != 2) fail(e.span, "(not ...) takes exactly one literal");
      Literal inner = parse_effect_literal(e[1]);
      if (!inner.positive) fail(e.span, "double negation is not supported");
      return inner.negated();
    }
    if (e.tagged("and") || e.tagged("when") || e.tagged("probabilistic") ||
        e.tagged("probabilistic-interval")) {
      fail(e.span, "nested compound effect is not allowed here");
    }
    if (e.is_atom || e.size() == 0 || !e[0].is_atom) {
      fail(e.span, "expected a literal", {"(fluent)", "(not (fluent))"});
    }
    if (e.size() != 1) {
      fail(e.span, "predicates take no arguments in this dialect");
    }
    std::string name = expect_identifier(e[0], "fluent name");
    if (!vocab->find(name)) {
      fail_semantic(e[0].span, "undeclared predicate '" + name + "'");
    }
    return {name, true};
  }

  void parse_effect(const SExpr& e, std::vector<Literal> condition,
                    std::vector<EffectFactor>& out) {
    if (e.tagged("and")) {
      for (std::size_t i = 1; i < e.size(); ++i) parse_effect(e[i], condition, out);
      return;
    }
    if (e.tagged("when")) {
      if (e.size() != 3) fail(e.span, "(when ...) takes a condition and an effect");
      std::vector<Literal> cond = condition;
      parse_condition(e[1], cond);
      parse_effect(e[2], std::move(cond), out);
      return;
    }
    if (e.tagged("probabilistic")) {
      if (e.size() != 3) {
        fail(e.span,
             "(probabilistic ...) takes one probability and one effect; "
             "multiple outcomes are not supported");
      }
      Rat p = parse_probability(e[1]);
      for (auto& lit : parse_added_literals(e[2])) {
        out.push_back({condition, Prob::point(p), std::move(lit)});
      }
      return;
    }
    if (e.tagged("probabilistic-interval")) {
      if (e.size() != 4) {
        fail(e.span, "(probabilistic-interval ...) takes two bounds and one effect");
      }
      Rat lo = parse_probability(e[1]);
      Rat hi = parse_probability(e[2]);
      if (lo > hi) fail_semantic(e[1].span, "interval lower bound exceeds upper bound");
      for (auto& lit : parse_added_literals(e[3])) {
        out.push_back({condition, Prob::interval(lo, hi), std::move(lit)});
      }
      return;
    }
    Literal lit = parse_effect_literal(e);
    out.push_back({std::move(condition), Prob::point(Rat(1)), std::move(lit)});
  }

  ActionSchema parse_action(const SExpr& e) {
    if (e.size() < 2) fail(e.span, "(:action ...) needs a name");
    ActionSchema action;
    action.name = expect_identifier(e[1], "action name");
    bool saw_precondition = false, saw_effect = false;
    for (std::size_t i = 2; i < e.size(); i += 2) {
      if (!e[i].is_atom || i + 1 >= e.size()) {
        fail(e[i].span, "expected :precondition or :effect followed by a value");
      }
      const std::string& key = e[i].atom;
      if (key == ":precondition") {
        if (saw_precondition) fail(e[i].span, "duplicate :precondition");
        saw_precondition = true;
        parse_condition(e[i + 1], action.precondition);
      } else if (key == ":effect") {
        if (saw_effect) fail(e[i].span, "duplicate :effect");
        saw_effect = true;
        parse_effect(e[i + 1], {}, action.effect);
      } else {
        fail(e[i].span, "unknown action section '" + key + "'",
             {":precondition", ":effect"});
      }
    }
    return action;
  }
};

const SExpr& single_root(const std::vector<SExpr>& forms, const char* what) {
  if (forms.empty()) {
    fail(SourceSpan{}, std::string("empty input, expected ") + what);
  }
  if (forms.size() > 1) {
    fail(forms[1].span, std::string("multiple top-level forms, expected one ") + what);
  }
  return forms[0];
}

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) {
  Lexer lex(text);
  std::vector<SExpr> forms;
  while (true) {
    Token t = lex.next();
    if (t.kind == Token::eof) return forms;
    forms.push_back(parse_node(lex, t, 0));
  }
}

Domain parse_domain(std::string_view text) {
  const SExpr root = single_root(parse_sexprs(text), "(define ...)");
  if (!root.tagged("define")) fail(root.span, "expected (define (domain ...) ...)");
  if (root.size() < 2 || !root[1].tagged("domain") || root[1].size() != 2) {
    fail(root.size() >= 2 ? root[1].span : root.span,
         "expected (domain <name>) after define");
  }

  Domain dom;
  dom.name = expect_identifier(root[1][1], "domain name");

  std::vector<std::string> fluent_names;
  std::vector<const SExpr*> action_forms;
  bool saw_predicates = false;

  for (std::size_t i = 2; i < root.size(); ++i) {
    const SExpr& section = root[i];
    if (section.tagged(":requirements")) {
      for (std::size_t j = 1; j < section.size(); ++j) {
        if (!section[j].is_atom || section[j].atom.empty() ||
            section[j].atom[0] != ':') {
          fail(section[j].span, "requirement flags start with ':'");
        }
        // unknown flags are accepted and recorded
        dom.requirements.push_back(section[j].atom);
      }
    } else if (section.tagged(":predicates")) {
      if (saw_predicates) fail(section.span, "duplicate (:predicates ...) section");
      saw_predicates = true;
      for (std::size_t j = 1; j < section.size(); ++j) {
        const SExpr& p = section[j];
        if (p.is_atom || p.size() == 0 || !p[0].is_atom) {
          fail(p.span, "expected (predicate-name)");
        }
        if (p.size() != 1) {
          fail(p.span, "predicates take no parameters in this dialect");
        }
        std::string name = expect_identifier(p[0], "predicate name");
        if (std::find(fluent_names.begin(), fluent_names.end(), name) !=
            fluent_names.end()) {
          fail_semantic(p[0].span, "duplicate predicate '" + name + "'");
        }
        fluent_names.push_back(std::move(name));
      }
    } else if (section.tagged(":action")) {
      action_forms.push_back(&section);
    } else {
      fail(section.span,
           section.is_atom || section.children.empty() || !section[0].is_atom
               ? "expected a domain section"
               : "unknown section keyword '" + section[0].atom + "'",
           {":requirements", ":predicates", ":action"});
    }
  }

  dom.fluents = make_vocabulary(std::move(fluent_names));

  DomainParser parser{dom.fluents.get()};
  std::unordered_set<std::string> action_names;
  for (const SExpr* form : action_forms) {
    ActionSchema action = parser.parse_action(*form);
    if (!action_names.insert(action.name).second) {
      fail_semantic((*form)[1].span, "duplicate action name '" + action.name + "'");
    }
    dom.actions.push_back(std::move(action));
  }
  return dom;
}

Problem parse_problem(std::string_view text, const Domain& dom) {
  const SExpr root = single_root(parse_sexprs(text), "(define ...)");
  std::size_t body_start = 0;
  Problem prob;

  if (root.tagged("define") || root.tagged(":define")) {
    if (root.size() < 2) fail(root.span, "expected a problem name after define");
    if (root[1].is_atom) {
      prob.name = expect_identifier(root[1], "problem name");
    } else if (root[1].tagged("problem") && root[1].size() == 2) {
      prob.name = expect_identifier(root[1][1], "problem name");
    } else {
      fail(root[1].span, "expected (problem <name>) or a bare problem name");
    }
    body_start = 2;
  } else {
    fail(root.span, "expected (define ...) or (:define ...)");
  }

  DomainParser parser{dom.fluents.get()};
  std::vector<bool> truth(dom.fluents->size(), false);
  std::vector<bool> pinned(dom.fluents->size(), false);
  bool saw_init = false, saw_goal = false;

  for (std::size_t i = body_start; i < root.size(); ++i) {
    const SExpr& section = root[i];
    if (section.tagged(":domain")) {
      if (section.size() != 2) fail(section.span, "expected (:domain <name>)");
      std::string ref = expect_identifier(section[1], "domain name");
      if (ref != dom.name) {
        fail_semantic(section[1].span, "problem references domain '" + ref +
                                           "' but '" + dom.name + "' was supplied");
      }
    } else if (section.tagged(":init")) {
      if (saw_init) fail(section.span, "duplicate (:init ...) section");
      saw_init = true;
      // either (:init lit...) or (:init (and lit...))
      std::vector<Literal> lits;
      if (section.size() == 2 && section[1].tagged("and")) {
        parser.parse_condition(section[1], lits);
      } else {
        for (std::size_t j = 1; j < section.size(); ++j) {
          parser.parse_condition(section[j], lits);
        }
      }
      for (const auto& lit : lits) {
        std::size_t idx = dom.fluents->require(lit.fluent);
        if (pinned[idx] && truth[idx] != lit.positive) {
          fail_semantic(section.span, "contradictory :init values for '" + lit.fluent + "'");
        }
        pinned[idx] = true;
        truth[idx] = lit.positive;
      }
    } else if (section.tagged(":goal")) {
      if (saw_goal) fail(section.span, "duplicate (:goal ...) section");
      saw_goal = true;
      if (section.size() != 2) fail(section.span, "expected (:goal <condition>)");
      parser.parse_condition(section[1], prob.goal);
    } else {
      fail(section.span, "unknown section in problem",
           {":domain", ":init", ":goal"});
    }
  }

  prob.init = State(dom.fluents, std::move(truth));
  return prob;
}

// ------------------------------------------------------------------
// emission

namespace {

std::string emit_literal(const Literal& lit) { return to_string(lit); }

std::string emit_condition(const std::vector<Literal>& lits) {
  if (lits.size() == 1) return emit_literal(lits[0]);
  std::string out = "(and";
  for (const auto& l : lits) out += " " + emit_literal(l);
  out += ")";
  return out;
}

std::string emit_factor(const EffectFactor& f, int precision) {
  std::string inner;
  if (f.probability.is_point() && f.probability.low == 1) {
    inner = emit_literal(f.added);
  } else if (f.probability.is_point()) {
    inner = "(probabilistic " + format_fixed(f.probability.low, precision) + " " +
            emit_literal(f.added) + ")";
  } else {
    inner = "(probabilistic-interval " + format_fixed(f.probability.low, precision) +
            " " + format_fixed(f.probability.high, precision) + " " +
            emit_literal(f.added) + ")";
  }
  if (f.condition.empty()) return inner;
  return "(when " + emit_condition(f.condition) + " " + inner + ")";
}

}  // namespace

std::string emit_domain(const Domain& dom, int precision) {
  std::ostringstream out;
  out << "(define (domain " << dom.name << ")\n";
  if (!dom.requirements.empty()) {
    out << "  (:requirements";
    for (const auto& r : dom.requirements) out << " " << r;
    out << ")\n";
  }
  out << "  (:predicates";
  for (const auto& f : dom.fluents->names()) out << " (" << f << ")";
  out << ")\n";
  for (const auto& action : dom.actions) {
    out << "  (:action " << action.name << "\n";
    out << "    :precondition " << emit_condition(action.precondition) << "\n";
    out << "    :effect (and";
    for (const auto& f : action.effect) out << " " << emit_factor(f, precision);
    out << "))\n";
  }
  out << ")\n";
  return out.str();
}

std::string emit_problem(const Problem& prob, int precision) {
  (void)precision;
  std::ostringstream out;
  out << "(define (problem " << prob.name << ")\n";
  out << "  (:init";
  for (const auto& n : prob.init.positive_names()) out << " (" << n << ")";
  out << ")\n";
  out << "  (:goal " << emit_condition(prob.goal) << ")\n";
  out << ")\n";
  return out.str();
}

}  // namespace samplus
