#include "fairdiv/fixtures.hpp"

namespace fairdiv {

Instance make_additive_instance(std::vector<std::string> goods,
                                std::vector<std::vector<long long>> per_agent_values) {
  Instance inst;
  inst.goods = std::move(goods);
  for (auto& row : per_agent_values) {
    inst.valuations.push_back(make_additive_valuation(std::move(row)));
  }
  return inst;
}

Valuation make_additive_valuation(std::vector<long long> values) {
  AdditiveValuation v;
  v.item_values.assign(values.begin(), values.end());
  return v;
}

Instance make_single_minded_instance(
    std::vector<std::string> goods,
    std::vector<std::pair<std::vector<std::string>, long long>> desires) {
  Instance inst;
  inst.goods = std::move(goods);
  for (auto& [labels, payoff] : desires) {
    inst.valuations.push_back(SingleMindedValuation{0, Value{payoff}});
  }
  // Resolve labels once the goods list is in place.
  for (size_t i = 0; i < desires.size(); ++i) {
    std::get<SingleMindedValuation>(inst.valuations[i]).desired =
        inst.bundle_of_labels(desires[i].first);
  }
  return inst;
}

Instance with_valuation(Instance inst, int agent, Valuation valuation) {
  inst.valuations.at(agent) = std::move(valuation);
  return inst;
}

namespace fixtures {

namespace {

// Identical table valuation shared by every agent.
Instance identical_table(std::vector<std::string> goods, std::vector<long long> base,
                         std::vector<std::pair<std::vector<std::string>, long long>> overrides,
                         int agents) {
  Instance inst;
  inst.goods = std::move(goods);
  std::vector<Value> base_values(base.begin(), base.end());
  std::vector<std::pair<GoodSet, Value>> masked;
  for (const auto& [labels, value] : overrides) {
    masked.emplace_back(inst.bundle_of_labels(labels), Value{value});
  }
  Valuation table = make_table_valuation(base_values, masked, inst.num_goods());
  for (int i = 0; i < agents; ++i) inst.valuations.push_back(table);
  return inst;
}

}  // namespace

Instance mms_example() {
  return make_additive_instance({"a", "b", "c"}, {{10, 20, 40}, {10, 40, 20}});
}

Instance prop_example() {
  return identical_table({"a", "b", "c"}, {10, 20, 15},
                         {{{"a", "b"}, 30}, {{"b", "c"}, 30}, {{"a", "c"}, 30},
                          {{"a", "b", "c"}, 30}},
                         2);
}

Instance ef_example() {
  return make_additive_instance({"a", "b"}, {{20, 10}, {10, 20}});
}

Instance prop_counterexample() {
  return make_additive_instance({"a", "b", "c"}, {{20, 10, 5}, {5, 10, 20}});
}

Valuation prop_counterexample_misreport() { return make_additive_valuation({10, 10, 10}); }

Instance efx_counterexample() {
  return make_additive_instance({"a", "b", "c", "d"}, {{40, 100, 20, 40}, {100, 40, 20, 40}});
}

Valuation efx_counterexample_misreport_agent1() {
  return make_additive_valuation({90, 70, 15, 25});
}

Valuation efx_counterexample_misreport_agent2() {
  return make_additive_valuation({70, 90, 15, 25});
}

Instance greedy_manipulable() {
  return make_additive_instance({"a", "b", "c", "d", "e"},
                                {{12, 10, 8, 6, 1}, {1, 10, 8, 6, 9}});
}

Valuation greedy_misreport_agent1() { return make_additive_valuation({10, 12, 8, 6, 1}); }

Valuation greedy_misreport_agent2() { return make_additive_valuation({1, 10, 8, 8, 5}); }

Instance cycle_manipulable() {
  // Pairs among {a,b,c} complement to 16; the triple override keeps the
  // table monotone (the additive sum 15 would undercut the pairs).
  return identical_table({"a", "b", "c", "d"}, {5, 5, 5, 10},
                         {{{"a", "b"}, 16},
                          {{"b", "c"}, 16},
                          {{"a", "c"}, 16},
                          {{"a", "b", "c"}, 16}},
                         2);
}

Valuation cycle_misreport() {
  // Understates d; every superset of a 16-pair needs an override to stay
  // monotone once d is worth 4.
  Instance shaped = identical_table({"a", "b", "c", "d"}, {5, 5, 5, 4},
                                    {{{"a", "b"}, 16},
                                     {{"b", "c"}, 16},
                                     {{"a", "c"}, 16},
                                     {{"a", "b", "c"}, 16},
                                     {{"a", "b", "d"}, 16},
                                     {{"a", "c", "d"}, 16},
                                     {{"b", "c", "d"}, 16}},
                                    1);
  return shaped.valuations[0];
}

Instance cycle_additive() {
  return make_additive_instance({"a", "b", "c"}, {{5, 5, 12}, {5, 5, 12}});
}

Instance sd_nested() {
  return make_single_minded_instance({"a", "b"}, {{{"a"}, 1}, {{"a", "b"}, 1}});
}

Instance sd_disjoint() {
  return make_single_minded_instance({"a", "b", "c"}, {{{"a"}, 1}, {{"b"}, 1}});
}

std::vector<std::pair<std::string, Instance>> all() {
  return {
      {"mms_example", mms_example()},
      {"prop_example", prop_example()},
      {"ef_example", ef_example()},
      {"prop_counterexample", prop_counterexample()},
      {"prop_counterexample_misreport",
       with_valuation(prop_counterexample(), 0, prop_counterexample_misreport())},
      {"efx_counterexample", efx_counterexample()},
      {"efx_counterexample_misreport",
       with_valuation(efx_counterexample(), 0, efx_counterexample_misreport_agent1())},
      {"greedy_manipulable", greedy_manipulable()},
      {"greedy_misreport_agent1",
       with_valuation(greedy_manipulable(), 0, greedy_misreport_agent1())},
      {"greedy_misreport_agent2",
       with_valuation(greedy_manipulable(), 1, greedy_misreport_agent2())},
      {"cycle_manipulable", cycle_manipulable()},
      {"cycle_manipulable_misreport",
       with_valuation(cycle_manipulable(), 0, cycle_misreport())},
      {"cycle_additive", cycle_additive()},
      {"sd_nested", sd_nested()},
      {"sd_disjoint", sd_disjoint()},
  };
}

}  // namespace fixtures
}  // namespace fairdiv
