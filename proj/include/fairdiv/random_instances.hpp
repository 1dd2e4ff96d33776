#pragma once

#include <cstdint>

#include "fairdiv/model.hpp"

namespace fairdiv {

// Deterministic splitmix64 stream; fixed seeds keep every suite replayable
// across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform over [lo, hi], inclusive.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

Instance random_additive_instance(Rng& rng, int num_agents, int num_goods, int max_value);
Instance random_identical_additive_instance(Rng& rng, int num_agents, int num_goods,
                                            int max_value);
// Monotone by construction: each bundle adds a nonnegative increment over its
// largest sub-bundles.
Instance random_table_instance(Rng& rng, int num_agents, int num_goods, int max_step);
Instance random_single_minded_instance(Rng& rng, int num_agents, int num_goods, int max_payoff);
Allocation random_complete_allocation(Rng& rng, int num_agents, int num_goods);

}  // namespace fairdiv
