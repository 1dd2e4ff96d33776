#include "fairdiv/random_instances.hpp"

#include "fairdiv/fixtures.hpp"

namespace fairdiv {

Instance random_additive_instance(Rng& rng, int n, int m, int max_value) {
  Instance inst;
  inst.goods = default_good_labels(m);
  for (int i = 0; i < n; ++i) {
    AdditiveValuation v;
    v.item_values.reserve(m);
    for (int g = 0; g < m; ++g) v.item_values.emplace_back(rng.uniform(0, max_value));
    inst.valuations.push_back(std::move(v));
  }
  return inst;
}

Instance random_identical_additive_instance(Rng& rng, int n, int m, int max_value) {
  Instance inst;
  inst.goods = default_good_labels(m);
  AdditiveValuation v;
  for (int g = 0; g < m; ++g) v.item_values.emplace_back(rng.uniform(0, max_value));
  for (int i = 0; i < n; ++i) inst.valuations.push_back(v);
  return inst;
}

Instance random_table_instance(Rng& rng, int n, int m, int max_step) {
  Instance inst;
  inst.goods = default_good_labels(m);
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<GoodSet, Value>> overrides;
    std::vector<Value> values(std::size_t{1} << m);
    for (GoodSet mask = 1; mask <= full_bundle(m); ++mask) {
      Value floor;
      for (int g = 0; g < m; ++g) {
        if (!bundle_contains(mask, g)) continue;
        const Value& below = values[mask & ~good_bit(g)];
        if (below > floor) floor = below;
      }
      values[mask] = floor + Value{rng.uniform(0, max_step)};
      overrides.emplace_back(mask, values[mask]);
    }
    inst.valuations.push_back(
        make_table_valuation(std::vector<Value>(m, Value{}), std::move(overrides), m));
  }
  return inst;
}

Instance random_single_minded_instance(Rng& rng, int n, int m, int max_payoff) {
  Instance inst;
  inst.goods = default_good_labels(m);
  for (int i = 0; i < n; ++i) {
    GoodSet desired = static_cast<GoodSet>(rng.uniform(1, static_cast<int>(full_bundle(m))));
    inst.valuations.push_back(SingleMindedValuation{desired, Value{rng.uniform(1, max_payoff)}});
  }
  return inst;
}

Allocation random_complete_allocation(Rng& rng, int n, int m) {
  Allocation alloc;
  alloc.bundles.assign(n, 0);
  for (int g = 0; g < m; ++g) alloc.bundles[rng.uniform(0, n - 1)] |= good_bit(g);
  return alloc;
}

}  // namespace fairdiv
