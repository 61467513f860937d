#ifndef SAMPLUS_CORE_SAMPLER_HPP
#define SAMPLUS_CORE_SAMPLER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/trajectory.hpp"

namespace samplus {

// Deterministic per-(seed, episode, step) random stream. The generator is
// SplitMix64; the stream seed is derived only from the three key values, so
// results are independent of scheduling and iteration order. The exact
// derivation is documented in the README and pinned by golden tests.
class StepRng {
 public:
  StepRng(std::uint64_t seed, std::uint64_t episode, std::uint64_t step);

  std::uint64_t next();
  double next_unit();  // uniform in [0, 1), 53 mantissa bits

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

enum class Policy { random, script };

struct SampleConfig {
  std::uint64_t seed = 0;
  std::uint64_t episodes = 1;   // >= 1
  std::uint64_t max_steps = 1;  // >= 1
  Policy policy = Policy::random;
  std::vector<std::string> script;  // used when policy == script
  bool stop_on_goal = false;
  unsigned threads = 1;  // 0 or 1 = serial; result is thread-count independent
};

// Executes the domain from prob.init for each episode. The random policy
// draws uniformly among actions whose preconditions hold (declaration-order
// indexing); the script policy applies the listed actions in order and
// raises Error(script_violation) when a precondition fails. Each applicable
// factor fires independently against the pre-state snapshot. Episodes that
// produce no step are dropped. Interval-valued factors are rejected: ground
// truth must be point-valued.
TrajectorySet sample(const Domain& dom, const Problem& prob,
                     const SampleConfig& cfg);

}  // namespace samplus

#endif
