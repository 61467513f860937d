#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/model.hpp"
#include "core/rational.hpp"

using namespace samplus;

namespace {

VocabPtr coffee_vocab() {
  return make_vocabulary(
      {"in-office", "has-umbrella", "is-wet", "has-coffee", "user-has-coffee"});
}

State make_state(const VocabPtr& v, std::vector<bool> bits) {
  return State(v, std::move(bits));
}

}  // namespace

TEST_CASE("vocabulary rejects duplicates and empty names") {
  CHECK_THROWS_AS(Vocabulary({"a", "a"}), Error);
  CHECK_THROWS_AS(Vocabulary({""}), Error);
  Vocabulary v({"a", "b"});
  CHECK(v.find("b") == 1);
  CHECK(!v.find("c"));
  CHECK_THROWS_AS(v.require("c"), Error);
}

TEST_CASE("literal negation is an involution") {
  Literal l{"is-wet", true};
  CHECK(l.negated().negated() == l);
  CHECK(l.negated() == Literal{"is-wet", false});
}

TEST_CASE("state membership and literal-set view") {
  auto v = coffee_vocab();
  State s0 = make_state(v, {true, false, false, false, false});
  CHECK(s0.holds({"in-office", true}));
  CHECK(s0.holds({"has-umbrella", false}));
  CHECK(!s0.holds({"has-umbrella", true}));
  CHECK(s0.literals().size() == 5);
  CHECK_THROWS_AS(s0.holds({"no-such", true}), Error);

  CHECK(state_satisfies(s0, s0.literals()));
}

TEST_CASE("state_satisfies") {
  auto v = coffee_vocab();
  State s0 = make_state(v, {true, false, false, false, false});
  State s1 = make_state(v, {false, false, true, false, false});

  std::vector<Literal> lits{{"in-office", true}, {"has-umbrella", false}};
  CHECK(state_satisfies(s0, lits));

  CHECK(state_satisfies(s0, {}));  // empty conjunction
  CHECK(state_satisfies(s1, {}));

  std::vector<Literal> io{{"in-office", true}};
  CHECK(!state_satisfies(s1, io));

  std::vector<Literal> unknown{{"ghost", true}};
  CHECK_THROWS_AS(state_satisfies(s0, unknown), Error);
}

TEST_CASE("literal_diff") {
  auto v = coffee_vocab();
  State s0 = make_state(v, {true, false, false, false, false});
  State s1 = make_state(v, {false, false, true, false, false});
  State s3 = make_state(v, {false, false, false, true, false});
  State s4 = make_state(v, {true, false, true, true, false});

  CHECK(literal_diff(s0, s1) ==
        std::vector<Literal>{{"in-office", false}, {"is-wet", true}});
  CHECK(literal_diff(s0, s0).empty());
  CHECK(literal_diff(s3, s4) ==
        std::vector<Literal>{{"in-office", true}, {"is-wet", true}});

  auto other = make_vocabulary({"x"});
  CHECK_THROWS_AS(literal_diff(s0, State::all_false(other)), Error);
}

TEST_CASE("diff properties over random state pairs") {
  auto v = coffee_vocab();
  for (unsigned mask_a = 0; mask_a < 32; ++mask_a) {
    for (unsigned mask_b = 0; mask_b < 32; ++mask_b) {
      std::vector<bool> a, b;
      for (int i = 0; i < 5; ++i) {
        a.push_back((mask_a >> i) & 1);
        b.push_back((mask_b >> i) & 1);
      }
      State sa = make_state(v, a), sb = make_state(v, b);
      auto fwd = literal_diff(sa, sb);
      auto bwd = literal_diff(sb, sa);
      // the diff never overlaps the source literal set
      for (const auto& l : fwd) CHECK(!sa.holds(l));
      // together the two directions cover the disagreement set once per fluent
      CHECK(fwd.size() == bwd.size());
      std::size_t disagreements = 0;
      for (int i = 0; i < 5; ++i) disagreements += a[i] != b[i];
      CHECK(fwd.size() == disagreements);
      for (const auto& l : fwd) {
        CHECK(std::find(bwd.begin(), bwd.end(), l.negated()) != bwd.end());
      }
    }
  }
}

TEST_CASE("rational parsing and fixed formatting") {
  CHECK(*parse_rational("0.9") == Rat(9, 10));
  CHECK(*parse_rational("1/3") == Rat(1, 3));
  CHECK(*parse_rational("1") == Rat(1));
  CHECK(*parse_rational("0.125") == Rat(1, 8));
  CHECK(!parse_rational("1.2.3"));
  CHECK(!parse_rational("-0.5"));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("x"));
  CHECK(!parse_rational(""));

  CHECK(format_fixed(Rat(1, 3), 4) == "0.3333");
  CHECK(format_fixed(Rat(1, 3), 6) == "0.333333");
  CHECK(format_fixed(Rat(2, 3), 4) == "0.6667");
  CHECK(format_fixed(Rat(1), 6) == "1.000000");
  CHECK(format_fixed(Rat(0), 3) == "0.000");
  CHECK(format_fixed(Rat(1, 2), 1) == "0.5");
  CHECK(format_fixed(Rat(895, 1000), 6) == "0.895000");

  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(0.0) == Rat(0));
  CHECK(to_double(rat_from_double(0.7066036458008114)) == 0.7066036458008114);
}

TEST_CASE("identifier canonicalization") {
  CHECK(canonical_name("In-Office") == "in-office");
  CHECK(canonical_name("GU") == "gu");
}
