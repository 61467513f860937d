#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/learner.hpp"
#include "core/syntax.hpp"
#include "core/trajectory.hpp"

using namespace samplus;

namespace {

std::string fixture(const char* name) {
  return read_file(std::string(FIXTURE_DIR) + "/" + name);
}

Domain coffee() { return parse_domain(fixture("coffee.ppddl")); }

TrajectorySet demo(const Domain& dom, const char* name = "coffee-demo.traj") {
  return parse_trajectories(fixture(name), &dom);
}

TrajectorySet scale_weights(TrajectorySet ts, std::uint64_t factor) {
  for (auto& e : ts.entries) e.weight *= factor;
  return ts;
}

std::vector<Literal> lits(std::initializer_list<std::pair<const char*, bool>> xs) {
  std::vector<Literal> out;
  for (const auto& [name, pos] : xs) out.push_back({name, pos});
  return out;
}

constexpr double kTol = 1e-9;

bool near(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("preconditions are the intersection of observed pre-states") {
  Domain dom = coffee();
  TrajectorySet ts = demo(dom);

  auto lowou = triplets_for(ts, "leave-office-without-umbrella");
  CHECK(learn_preconditions(lowou) == lits({{"in-office", true},
                                            {"has-umbrella", false},
                                            {"is-wet", false},
                                            {"has-coffee", false},
                                            {"user-has-coffee", false}}));

  auto mtowou = triplets_for(ts, "move-to-office-without-umbrella");
  CHECK(learn_preconditions(mtowou) == lits({{"in-office", false},
                                             {"has-umbrella", false},
                                             {"is-wet", false},
                                             {"has-coffee", true},
                                             {"user-has-coffee", false}}));

  // a single observation pins every fluent
  auto one = triplets_for(ts, "get-umbrella");
  CHECK(learn_preconditions(one).size() == dom.fluents->size());
  CHECK(learn_preconditions(one) ==
        triplets_for(ts, "get-umbrella")[0].triplet.pre.literals());

  CHECK_THROWS_AS(learn_preconditions({}), Error);
}

TEST_CASE("effect counts are weighted") {
  Domain dom = coffee();
  TrajectorySet ts = demo(dom);
  auto lowou = triplets_for(ts, "leave-office-without-umbrella");

  EffectCounts iw = count_effects(lowou, {"is-wet", true});
  CHECK(iw.added == 1);
  CHECK(iw.eligible == 3);

  EffectCounts io = count_effects(lowou, {"in-office", true});
  CHECK(io.added == 0);
  CHECK(io.eligible == 0);  // in-office holds in every pre-state

  EffectCounts nio = count_effects(lowou, {"in-office", false});
  CHECK(nio.added == 3);
  CHECK(nio.eligible == 3);

  TrajectorySet skewed = demo(dom, "coffee-demo-skewed.traj");
  auto lowou_w = triplets_for(skewed, "leave-office-without-umbrella");
  EffectCounts iw_w = count_effects(lowou_w, {"is-wet", true});
  CHECK(iw_w.added == 895);
  CHECK(iw_w.eligible == 1000);
}

TEST_CASE("credal intervals: golden values at delta 0.1") {
  // observed effect: center added/eligible, half-width sqrt(ln(2/d)/(2n))
  CredalInterval nio = credal_interval({3, 3}, 0.1);
  CHECK(nio.high == 1.0);
  CHECK(near(nio.low, 0.2933963541991886));
  CHECK(std::abs((1.0 - nio.low) - 0.706604) < 1e-6);

  CredalInterval iw = credal_interval({1, 3}, 0.1);
  CHECK(iw.low == 0.0);  // capped
  CHECK(iw.high == 1.0);

  // never-observed effect: [0, ln(1/d)/n]
  CredalInterval hu = credal_interval({0, 300}, 0.1);
  CHECK(hu.low == 0.0);
  CHECK(std::abs(hu.high - 0.0076753) < 1e-6);
  CHECK(near(hu.high, 0.0076752836433134864));

  // no informative triplet at all
  CredalInterval fallback = credal_interval({0, 0}, 0.1);
  CHECK(fallback.low == 0.0);
  CHECK(fallback.high == 1.0);
  CHECK(fallback.vacuous());

  CredalInterval x100 = credal_interval({100, 300}, 0.1);
  CHECK(near(x100.low, 0.2626729687532522));
  CHECK(near(x100.high, 0.40399369791341444));
  double half = (x100.high - x100.low) / 2.0;
  CHECK(std::abs(half - 0.070660) < 1e-6);
  // small-sample bound is capped at 1
  CHECK(credal_interval({0, 1}, 0.1).high == 1.0);
}

TEST_CASE("point estimates: exact ratios and union-bound values") {
  auto iw = point_estimate({100, 300}, 0.1, 5, 7);
  REQUIRE(iw.has_value());
  CHECK(std::get<Rat>(*iw) == Rat(1, 3));

  auto hu = point_estimate({0, 300}, 0.1, 5, 7);
  REQUIRE(hu.has_value());
  CHECK(near(std::get<double>(*hu), 0.01091846722507234));
  CHECK(std::abs(std::get<double>(*hu) - 0.0109185) < 1e-6);

  auto skew = point_estimate({895, 1000}, 0.1, 5, 7);
  CHECK(std::get<Rat>(*skew) == Rat(179, 200));  // 0.895 exactly

  auto certain = point_estimate({50, 50}, 0.1, 5, 7);
  CHECK(std::get<Rat>(*certain) == Rat(1));

  // the bound caps at 1 for tiny samples: ln(700)/6 > 1
  auto tiny = point_estimate({0, 3}, 0.1, 5, 7);
  CHECK(std::get<double>(*tiny) == 1.0);

  CHECK(!point_estimate({0, 0}, 0.1, 5, 7).has_value());

  auto overridden = point_estimate({0, 300}, 0.1, 10, 14);
  CHECK(near(std::get<double>(*overridden), 0.013228957826938826));
}

TEST_CASE("learn: interval mode over the unit-weight demo set") {
  Domain dom = coffee();
  LearnerConfig cfg;
  cfg.delta = 0.1;
  cfg.mode = LearnMode::interval;
  LearnedModel model = learn(demo(dom), cfg, &dom);

  CHECK(model.fluent_count == 5);
  CHECK(model.action_count == 7);
  CHECK(model.unobserved_actions.empty());
  CHECK(model.actions.size() == 7);

  const LearnedAction* lowou = model.find_action("leave-office-without-umbrella");
  REQUIRE(lowou);
  CHECK(lowou->effects.size() == 10);

  const LearnedEffect* nio = lowou->find_effect({"in-office", false});
  REQUIRE(nio);
  CHECK(nio->interval.high == 1.0);
  CHECK(std::abs(nio->interval.low - (1.0 - 0.706604)) < 1e-6);

  const LearnedEffect* iw = lowou->find_effect({"is-wet", true});
  REQUIRE(iw);
  CHECK(iw->counts.added == 1);
  CHECK(iw->counts.eligible == 3);
  CHECK(Rat(iw->counts.added, iw->counts.eligible) == Rat(1, 3));  // exact center
  CHECK(iw->interval.low == 0.0);
  CHECK(iw->interval.high == 1.0);
}

TEST_CASE("learn: point mode over the x100 demo set") {
  Domain dom = coffee();
  LearnerConfig cfg;
  cfg.delta = 0.1;
  cfg.mode = LearnMode::point;
  LearnedModel model = learn(scale_weights(demo(dom), 100), cfg, &dom);

  const LearnedAction* lowou = model.find_action("leave-office-without-umbrella");
  REQUIRE(lowou);
  CHECK(std::get<Rat>(*lowou->find_effect({"in-office", false})->point) == Rat(1));
  CHECK(std::get<Rat>(*lowou->find_effect({"is-wet", true})->point) == Rat(1, 3));
  for (const char* f : {"has-umbrella", "has-coffee", "user-has-coffee"}) {
    double p = std::get<double>(*lowou->find_effect({f, true})->point);
    CHECK(std::abs(p - 0.0109185) < 1e-6);
  }
  // opposite polarities of pinned-true preconditions are unconstrained
  CHECK(!lowou->find_effect({"in-office", true})->point.has_value());
  CHECK(lowou->find_effect({"in-office", true})->interval.vacuous());
}

TEST_CASE("learn: skewed weights, documented discrepancy values") {
  Domain dom = coffee();
  LearnerConfig cfg;
  cfg.delta = 0.1;
  cfg.mode = LearnMode::point;
  LearnedModel model = learn(demo(dom, "coffee-demo-skewed.traj"), cfg, &dom);

  const LearnedAction* lowou = model.find_action("leave-office-without-umbrella");
  CHECK(std::get<Rat>(*lowou->find_effect({"is-wet", true})->point) ==
        Rat(179, 200));

  const LearnedAction* mtowou = model.find_action("move-to-office-without-umbrella");
  REQUIRE(mtowou);
  CHECK(mtowou->preconditions == lits({{"in-office", false},
                                       {"has-umbrella", false},
                                       {"is-wet", false},
                                       {"has-coffee", true},
                                       {"user-has-coffee", false}}));
  // the empirical ratio forces 1.0 here
  CHECK(std::get<Rat>(*mtowou->find_effect({"is-wet", true})->point) == Rat(1));
  CHECK(mtowou->find_effect({"is-wet", true})->counts.eligible == 95);
  // never-added literals: ln(2*5*7/0.1) / (2*95)
  for (auto lit : lits({{"has-umbrella", true},
                        {"user-has-coffee", true},
                        {"has-coffee", false}})) {
    double p = std::get<double>(*mtowou->find_effect(lit)->point);
    CHECK(std::abs(p - 0.034479) < 1e-6);
    CHECK(near(p, 0.03447937018443897));
  }

  // interval mode on the same data: the never-observed bound is ln(1/delta)/n
  cfg.mode = LearnMode::interval;
  LearnedModel ivm = learn(demo(dom, "coffee-demo-skewed.traj"), cfg, &dom);
  const LearnedAction* lowou_iv = ivm.find_action("leave-office-without-umbrella");
  double hu_high = lowou_iv->find_effect({"has-umbrella", true})->interval.high;
  CHECK(near(hu_high, 0.002302585092994046));
  double hu_point = std::get<double>(
      *lowou_iv->find_effect({"has-umbrella", true})->point);
  CHECK(near(hu_point, 0.003275540167521702));
}

TEST_CASE("learn: the alternate 19-weight fixture") {
  Domain dom = coffee();
  LearnerConfig cfg;
  cfg.delta = 0.1;
  cfg.mode = LearnMode::point;
  LearnedModel model = learn(demo(dom, "coffee-demo-skewed-alt.traj"), cfg, &dom);
  const LearnedAction* lowou = model.find_action("leave-office-without-umbrella");
  const LearnedEffect* iw = lowou->find_effect({"is-wet", true});
  CHECK(iw->counts.eligible == 1009);
  CHECK(std::get<Rat>(*iw->point) == Rat(895, 1009));
}

TEST_CASE("learn: unobserved actions are listed and excluded") {
  Domain dom = coffee();
  std::string only_t1 =
      "(:trajectory t1 :weight 1 (:state (in-office))"
      " (:action leave-office-without-umbrella) (:state (is-wet)))";
  TrajectorySet ts = parse_trajectories(only_t1, &dom);
  LearnerConfig cfg;
  LearnedModel model = learn(ts, cfg, &dom);
  CHECK(model.actions.size() == 1);
  CHECK(model.unobserved_actions ==
        std::vector<std::string>{"buy-coffee", "move-to-office-with-umbrella",
                                 "leave-office-with-umbrella",
                                 "move-to-office-without-umbrella",
                                 "get-umbrella", "deliver-coffee"});
  // union-bound constants still come from the domain
  CHECK(model.action_count == 7);
}

TEST_CASE("learn without a domain infers the vocabulary") {
  Domain dom = coffee();
  TrajectorySet ts = parse_trajectories(fixture("coffee-demo.traj"), nullptr);
  LearnerConfig cfg;
  cfg.mode = LearnMode::point;
  LearnedModel model = learn(ts, cfg, nullptr);
  // all 7 actions appear in the demo set, so |F| and |A| match the domain
  CHECK(model.fluent_count == 5);
  CHECK(model.action_count == 7);
  CHECK(model.unobserved_actions.empty());

  cfg.fluent_count_override = 10;
  cfg.action_count_override = 14;
  LearnedModel overridden = learn(ts, cfg, nullptr);
  const LearnedAction* lowou =
      overridden.find_action("leave-office-without-umbrella");
  double p = std::get<double>(
      *lowou->find_effect({"has-umbrella", true})->point);
  CHECK(p == 1.0);  // ln(2*10*14/0.1)/6 > 1, capped
  (void)dom;
}

TEST_CASE("learn rejects bad inputs") {
  Domain dom = coffee();
  TrajectorySet empty;
  empty.vocab = dom.fluents;
  LearnerConfig cfg;
  CHECK_THROWS_AS(learn(empty, cfg, &dom), Error);

  cfg.delta = 0.0;
  CHECK_THROWS_AS(learn(demo(dom), cfg, &dom), Error);
  cfg.delta = 1.0;
  CHECK_THROWS_AS(learn(demo(dom), cfg, &dom), Error);
  cfg.delta = 0.1;

  // vocabulary conflict: trajectory fluents unknown to the domain
  Domain small = parse_domain("(define (domain d) (:predicates (in-office)))");
  TrajectorySet ts = parse_trajectories(fixture("coffee-demo.traj"), nullptr);
  CHECK_THROWS_AS(learn(ts, cfg, &small), Error);

  // action missing from the domain
  Domain nogu = parse_domain(
      "(define (domain d) (:predicates (in-office) (has-umbrella) (is-wet)"
      " (has-coffee) (user-has-coffee)))");
  TrajectorySet ts2 = parse_trajectories(fixture("coffee-demo.traj"), &nogu);
  CHECK_THROWS_AS(learn(ts2, cfg, &nogu), Error);
}

TEST_CASE("properties: pre-state consistency and interval validity") {
  Domain dom = coffee();
  LearnerConfig cfg;
  LearnedModel model = learn(demo(dom, "coffee-demo-skewed.traj"), cfg, &dom);
  TrajectorySet ts = demo(dom, "coffee-demo-skewed.traj");
  for (const auto& learned : model.actions) {
    auto triplets = triplets_for(ts, learned.name);
    for (const auto& wt : triplets) {
      CHECK(state_satisfies(wt.triplet.pre, learned.preconditions));
    }
    for (const auto& e : learned.effects) {
      CHECK(e.interval.low >= 0.0);
      CHECK(e.interval.low <= e.interval.high);
      CHECK(e.interval.high <= 1.0);
      if (e.counts.added > 0) {
        double center =
            static_cast<double>(e.counts.added) / static_cast<double>(e.counts.eligible);
        CHECK(e.interval.contains(center));
        // point/interval coherence: the estimate is the pre-capping center
        CHECK(std::abs(to_double(std::get<Rat>(*e.point)) - center) < kTol);
      } else if (e.counts.eligible > 0) {
        CHECK(e.interval.low == 0.0);
      }
    }
  }
}

TEST_CASE("properties: width laws") {
  // multiplying weights by k^2 shrinks the Hoeffding half-width by k
  for (std::uint64_t n : {3ULL, 10ULL, 47ULL}) {
    for (std::uint64_t k : {2ULL, 5ULL}) {
      CredalInterval base = credal_interval({n, 2 * n}, 0.2);
      CredalInterval scaled = credal_interval({n * k * k, 2 * n * k * k}, 0.2);
      double hw_base = (base.high - base.low) / 2.0;
      double hw_scaled = (scaled.high - scaled.low) / 2.0;
      CHECK(std::abs(hw_base / hw_scaled - static_cast<double>(k)) < kTol);

      // the never-observed bound shrinks linearly
      CredalInterval miss = credal_interval({0, 100 * n}, 0.2);
      CredalInterval miss_scaled = credal_interval({0, 100 * n * k}, 0.2);
      CHECK(std::abs(miss.high / miss_scaled.high - static_cast<double>(k)) < kTol);
    }
  }
}

TEST_CASE("properties: weight expansion equivalence") {
  Domain dom = coffee();
  TrajectorySet weighted = demo(dom);
  weighted.entries[0].weight = 3;
  weighted.entries[1].weight = 2;

  TrajectorySet expanded;
  expanded.vocab = weighted.vocab;
  int counter = 0;
  for (const auto& e : weighted.entries) {
    for (std::uint64_t i = 0; i < e.weight; ++i) {
      WeightedTrajectory copy{e.trajectory, 1};
      copy.trajectory.id += "-" + std::to_string(counter++);
      expanded.entries.push_back(std::move(copy));
    }
  }

  LearnerConfig cfg;
  LearnedModel a = learn(weighted, cfg, &dom);
  LearnedModel b = learn(expanded, cfg, &dom);
  REQUIRE(a.actions.size() == b.actions.size());
  for (std::size_t i = 0; i < a.actions.size(); ++i) {
    CHECK(a.actions[i].preconditions == b.actions[i].preconditions);
    for (std::size_t j = 0; j < a.actions[i].effects.size(); ++j) {
      const auto& ea = a.actions[i].effects[j];
      const auto& eb = b.actions[i].effects[j];
      CHECK(ea.counts.added == eb.counts.added);
      CHECK(ea.counts.eligible == eb.counts.eligible);
      CHECK(ea.interval.low == eb.interval.low);
      CHECK(ea.interval.high == eb.interval.high);
    }
  }
}

TEST_CASE("properties: precondition anti-monotonicity on random nested sets") {
  Domain dom = coffee();
  TrajectorySet full = demo(dom, "coffee-demo-skewed.traj");
  std::mt19937_64 rng(99);
  LearnerConfig cfg;
  for (int round = 0; round < 50; ++round) {
    TrajectorySet sub;
    sub.vocab = full.vocab;
    for (const auto& e : full.entries) {
      std::uint64_t w = rng() % (e.weight + 1);
      if (w > 0) sub.entries.push_back({e.trajectory, w});
    }
    if (sub.entries.empty()) continue;
    LearnedModel big = learn(full, cfg, &dom);
    LearnedModel small = learn(sub, cfg, &dom);
    for (const auto& sa : small.actions) {
      const LearnedAction* ba = big.find_action(sa.name);
      REQUIRE(ba);
      for (const auto& lit : ba->preconditions) {
        CHECK(std::find(sa.preconditions.begin(), sa.preconditions.end(), lit) !=
              sa.preconditions.end());
      }
    }
  }
}

TEST_CASE("emitted point model: guards, certain effects, omitted zeros") {
  Domain dom = coffee();
  LearnerConfig cfg;
  cfg.delta = 0.1;
  cfg.mode = LearnMode::point;
  LearnedModel model = learn(scale_weights(demo(dom), 100), cfg, &dom);
  std::string text = emit_learned(model, 6);

  // the preconditions entail the conditioning event, so no guard is kept
  CHECK(text.find("(probabilistic 0.333333 (is-wet))") != std::string::npos);
  CHECK(text.find("(not (in-office))") != std::string::npos);
  CHECK(text.find("(probabilistic 0.010918 (has-umbrella))") != std::string::npos);

  Domain reparsed = parse_domain(text);
  const ActionSchema* lowou = reparsed.find_action("leave-office-without-umbrella");
  REQUIRE(lowou);
  CHECK(lowou->precondition.size() == 5);
  for (const auto& f : lowou->effect) {
    CHECK(f.condition.empty());
    CHECK(f.probability.low > 0);
  }
}

TEST_CASE("emitted interval model: vacuous intervals are omitted") {
  Domain dom = coffee();
  LearnerConfig cfg;
  cfg.delta = 0.1;
  cfg.mode = LearnMode::interval;
  LearnedModel model = learn(scale_weights(demo(dom), 100), cfg, &dom);
  std::string text = emit_learned(model, 6);

  CHECK(text.find("(probabilistic-interval 0.000000 0.007675 (has-coffee))") !=
        std::string::npos);
  // x1 weights give [0,1] for is-wet, which is vacuous and omitted
  LearnedModel x1 = learn(demo(dom), cfg, &dom);
  std::string x1_text = emit_learned(x1, 6);
  Domain x1_dom = parse_domain(x1_text);
  const ActionSchema* lowou = x1_dom.find_action("leave-office-without-umbrella");
  REQUIRE(lowou);
  for (const auto& f : lowou->effect) {
    CHECK(f.added != Literal{"is-wet", true});
  }
}

TEST_CASE("emitted factors keep the guard when preconditions do not entail it") {
  Domain dom = coffee();
  // two observations of the same action from pre-states disagreeing on
  // has-coffee leave it unpinned
  std::string text =
      "(:trajectory a :weight 50 (:state (in-office)) (:action get-umbrella)"
      " (:state (in-office) (has-umbrella) (has-coffee)))"
      "(:trajectory b :weight 50 (:state (in-office) (has-coffee)) (:action get-umbrella)"
      " (:state (in-office) (has-umbrella) (has-coffee)))";
  TrajectorySet ts = parse_trajectories(text, &dom);
  LearnerConfig cfg;
  cfg.mode = LearnMode::interval;
  LearnedModel model = learn(ts, cfg, &dom);
  std::string emitted = emit_learned(model, 6);
  CHECK(emitted.find("(when (not (has-coffee)) (probabilistic-interval") !=
        std::string::npos);
}

TEST_CASE("model with zero observed actions emits a header comment") {
  LearnedModel model;
  model.vocab = make_vocabulary({"a", "b"});
  model.domain_name = "empty";
  model.fluent_count = 2;
  model.action_count = 2;
  model.unobserved_actions = {"x", "y"};
  std::string text = emit_learned(model, 6);
  CHECK(text.find("; unobserved actions: x y") != std::string::npos);
  Domain dom = parse_domain(text);
  CHECK(dom.actions.empty());
}
