#include "core/sampler.hpp"

#include <optional>
#include <thread>

#include "core/error.hpp"

namespace samplus {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t StepRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

StepRng::StepRng(std::uint64_t seed, std::uint64_t episode, std::uint64_t step) {
  std::uint64_t z = mix(seed + kGamma);
  z = mix(z ^ ((episode + 1) * kGamma));
  z = mix(z ^ ((step + 1) * kGamma));
  state_ = z;
}

std::uint64_t StepRng::next() {
  state_ += kGamma;
  return mix(state_);
}

double StepRng::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

struct EpisodeResult {
  std::optional<Trajectory> trajectory;
  std::exception_ptr error;
};

Trajectory run_episode(const Domain& dom, const Problem& prob,
                       const SampleConfig& cfg, std::uint64_t episode,
                       const std::vector<const ActionSchema*>& script) {
  Trajectory traj;
  traj.initial = prob.init;
  State state = prob.init;
  for (std::uint64_t step = 0; step < cfg.max_steps; ++step) {
    StepRng rng(cfg.seed, episode, step);

    const ActionSchema* action = nullptr;
    if (cfg.policy == Policy::script) {
      if (step >= script.size()) break;
      action = script[step];
      if (!state_satisfies(state, action->precondition)) {
        throw Error(ErrorKind::script_violation,
                    "episode " + std::to_string(episode) + " step " +
                        std::to_string(step + 1) + ": precondition of '" +
                        action->name + "' does not hold");
      }
    } else {
      std::vector<const ActionSchema*> applicable;
      for (const auto& a : dom.actions) {
        if (state_satisfies(state, a.precondition)) applicable.push_back(&a);
      }
      if (applicable.empty()) break;
      action = applicable[rng.next() % applicable.size()];
    }

    // factors fire independently against the pre-state snapshot, in
    // declaration order; one draw per applicable factor
    std::vector<bool> next_bits = state.bits();
    std::vector<int> written(next_bits.size(), -1);
    for (const auto& factor : action->effect) {
      if (!state_satisfies(state, factor.condition)) continue;
      double u = rng.next_unit();
      if (u < to_double(factor.probability.low)) {
        std::size_t idx = state.vocab()->require(factor.added.fluent);
        int val = factor.added.positive ? 1 : 0;
        if (written[idx] >= 0 && written[idx] != val) {
          throw Error(ErrorKind::semantic,
                      "conflicting effects on '" + factor.added.fluent +
                          "' in action '" + action->name + "'");
        }
        written[idx] = val;
        next_bits[idx] = factor.added.positive;
      }
    }

    State next(state.vocab(), std::move(next_bits));
    traj.steps.emplace_back(action->name, next);
    state = std::move(next);

    if (cfg.stop_on_goal && state_satisfies(state, prob.goal)) break;
  }
  return traj;
}

}  // namespace

TrajectorySet sample(const Domain& dom, const Problem& prob,
                     const SampleConfig& cfg) {
  if (cfg.episodes < 1) throw Error(ErrorKind::config, "episodes must be >= 1");
  if (cfg.max_steps < 1) throw Error(ErrorKind::config, "max-steps must be >= 1");
  for (const auto& a : dom.actions) {
    for (const auto& f : a.effect) {
      if (!f.probability.is_point()) {
        throw Error(ErrorKind::config,
                    "action '" + a.name +
                        "' has an interval-valued effect probability; the "
                        "sampled domain must be point-valued");
      }
    }
  }
  std::vector<const ActionSchema*> script;
  if (cfg.policy == Policy::script) {
    if (cfg.script.empty()) {
      throw Error(ErrorKind::config, "script policy needs at least one action");
    }
    for (const auto& name : cfg.script) {
      const ActionSchema* a = dom.find_action(canonical_name(name));
      if (!a) {
        throw Error(ErrorKind::config, "script action '" + name + "' is not declared");
      }
      script.push_back(a);
    }
  }

  std::vector<EpisodeResult> results(cfg.episodes);
  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t ep = begin; ep < end; ++ep) {
      try {
        results[ep].trajectory = run_episode(dom, prob, cfg, ep, script);
      } catch (...) {
        results[ep].error = std::current_exception();
      }
    }
  };

  unsigned threads = cfg.threads;
  if (threads <= 1 || cfg.episodes == 1) {
    worker(0, cfg.episodes);
  } else {
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, cfg.episodes));
    std::vector<std::thread> pool;
    std::uint64_t chunk = (cfg.episodes + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t begin = t * chunk;
      std::uint64_t end = std::min<std::uint64_t>(begin + chunk, cfg.episodes);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  TrajectorySet ts;
  ts.vocab = dom.fluents;
  for (std::uint64_t ep = 0; ep < cfg.episodes; ++ep) {
    if (results[ep].error) std::rethrow_exception(results[ep].error);
    Trajectory& traj = *results[ep].trajectory;
    if (traj.steps.empty()) continue;  // no applicable action at the start
    traj.id = "e" + std::to_string(ep);
    ts.entries.push_back({std::move(traj), 1});
  }
  return ts;
}

}  // namespace samplus
