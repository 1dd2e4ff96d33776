#include "fairdiv/repro.hpp"

#include <algorithm>
#include <sstream>

#include "fairdiv/fairness.hpp"
#include "fairdiv/fixtures.hpp"
#include "fairdiv/mechanisms.hpp"
#include "fairdiv/random_instances.hpp"
#include "fairdiv/strategy.hpp"

namespace fairdiv {

bool ReproResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ReproCheck& c) { return c.pass; });
}

namespace {

void add(ReproResult& result, std::string name, bool pass, std::string detail = "") {
  result.checks.push_back({std::move(name), pass, std::move(detail)});
}

Allocation alloc_of(const Instance& inst, std::vector<std::vector<std::string>> bundles) {
  Allocation a;
  for (const auto& labels : bundles) a.bundles.push_back(inst.bundle_of_labels(labels));
  return a;
}

bool same_allocation_set(std::vector<Allocation> lhs, std::vector<Allocation> rhs) {
  auto key = [](const Allocation& a) { return a.bundles; };
  std::sort(lhs.begin(), lhs.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
  std::sort(rhs.begin(), rhs.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
  return lhs == rhs;
}

Value min_true_value(const Instance& truth, int agent, const std::vector<Allocation>& set) {
  Value worst;
  bool first = true;
  for (const auto& a : set) {
    Value v = truth.value_of(agent, a.bundles[agent]);
    if (first || v < worst) {
      worst = v;
      first = false;
    }
  }
  return worst;
}

// (bundles, envy edges) after every step; the shape the worked traces use.
struct TraceRow {
  std::vector<GoodSet> bundles;
  std::vector<std::pair<int, int>> edges;
  bool operator==(const TraceRow&) const = default;
};

std::vector<TraceRow> rows_of(const Trace& trace) {
  std::vector<TraceRow> rows;
  for (const auto& step : trace.steps) rows.push_back({step.bundles, step.envy_edges});
  return rows;
}

ReproResult repro_mms_example() {
  ReproResult result{"mms-example", {}};
  const Instance inst = fixtures::mms_example();
  const MmsShare s1 = mms_share(inst, 0);
  const MmsShare s2 = mms_share(inst, 1);
  add(result, "agent 1 maximin share is exactly 30", s1.mu == Value{30}, s1.mu.str());
  add(result, "agent 2 maximin share is exactly 30", s2.mu == Value{30}, s2.mu.str());

  Value attained = inst.value_of(0, s1.partition.bundles[0]);
  for (GoodSet b : s1.partition.bundles) {
    attained = std::min(attained, inst.value_of(0, b));
  }
  add(result, "reported partition attains the share", attained == s1.mu, attained.str());

  const Allocation split = alloc_of(inst, {{"c"}, {"a", "b"}});
  add(result, "allocation c | ab satisfies maximin fairness", is_mms(inst, split).holds());
  return result;
}

ReproResult repro_prop_counterexample() {
  ReproResult result{"prop-table", {}};
  const Instance truth = fixtures::prop_counterexample();
  const Allocation first = alloc_of(truth, {{"a"}, {"b", "c"}});
  const Allocation second = alloc_of(truth, {{"a", "b"}, {"c"}});

  add(result, "truthful proportional set is exactly {a|bc, ab|c}",
      same_allocation_set(fair_set(truth, Criterion::Proportional), {first, second}));

  const Instance lie1 = with_valuation(truth, 0, fixtures::prop_counterexample_misreport());
  const auto shifted1 = fair_set(lie1, Criterion::Proportional);
  add(result, "agent 1's flat report leaves exactly {ab|c}",
      same_allocation_set(shifted1, {second}));
  const Value offered1 = truth.value_of(0, first.bundles[0]);
  const Value gained1 = min_true_value(truth, 0, shifted1);
  add(result, "agent 1 rises from 20 to 30",
      offered1 == Value{20} && gained1 == Value{30},
      offered1.str() + " -> " + gained1.str());

  const Instance lie2 = with_valuation(truth, 1, fixtures::prop_counterexample_misreport());
  const auto shifted2 = fair_set(lie2, Criterion::Proportional);
  add(result, "agent 2's mirrored report leaves exactly {a|bc}",
      same_allocation_set(shifted2, {first}));
  const Value offered2 = truth.value_of(1, second.bundles[1]);
  const Value gained2 = min_true_value(truth, 1, shifted2);
  add(result, "agent 2 rises from 20 to 30",
      offered2 == Value{20} && gained2 == Value{30},
      offered2.str() + " -> " + gained2.str());

  ImpossibilityWitness witness;
  witness.criterion = Criterion::Proportional;
  witness.entries.push_back({first, 0, fixtures::prop_counterexample_misreport()});
  witness.entries.push_back({second, 1, fixtures::prop_counterexample_misreport()});
  add(result, "impossibility witness verifies",
      verify_impossibility_witness(truth, Criterion::Proportional, witness));
  return result;
}

ReproResult repro_efx_counterexample() {
  ReproResult result{"efx-table", {}};
  const Instance truth = fixtures::efx_counterexample();
  add(result, "exactly 16 complete allocations",
      enumerate_allocations(truth).size() == 16);

  const Allocation a1 = alloc_of(truth, {{"b"}, {"a", "c", "d"}});
  const Allocation a2 = alloc_of(truth, {{"b", "c"}, {"a", "d"}});
  const Allocation a3 = alloc_of(truth, {{"b", "d"}, {"a", "c"}});
  const Allocation a4 = alloc_of(truth, {{"b", "c", "d"}, {"a"}});
  add(result, "truthful set has exactly the four envy-free-up-to-any-good splits",
      same_allocation_set(fair_set(truth, Criterion::EFX), {a1, a2, a3, a4}));

  const Instance lie1 = with_valuation(truth, 0, fixtures::efx_counterexample_misreport_agent1());
  const auto shifted1 = fair_set(lie1, Criterion::EFX);
  add(result, "agent 1's reshaped report leaves exactly {bd|ac, bcd|a}",
      same_allocation_set(shifted1, {a3, a4}));
  const Value floor1 = min_true_value(truth, 0, shifted1);
  add(result, "agent 1 is guaranteed 140, above the offered 100 and 120",
      floor1 == Value{140} && truth.value_of(0, a1.bundles[0]) == Value{100} &&
          truth.value_of(0, a2.bundles[0]) == Value{120},
      "floor " + floor1.str());

  const Instance lie2 = with_valuation(truth, 1, fixtures::efx_counterexample_misreport_agent2());
  const auto shifted2 = fair_set(lie2, Criterion::EFX);
  const Value floor2 = min_true_value(truth, 1, shifted2);
  add(result, "agent 2's mirrored report is guaranteed 140, above 120 and 100",
      floor2 == Value{140} && truth.value_of(1, a3.bundles[1]) == Value{120} &&
          truth.value_of(1, a4.bundles[1]) == Value{100},
      "floor " + floor2.str());

  ImpossibilityWitness witness;
  witness.criterion = Criterion::EFX;
  witness.entries.push_back({a1, 0, fixtures::efx_counterexample_misreport_agent1()});
  witness.entries.push_back({a2, 0, fixtures::efx_counterexample_misreport_agent1()});
  witness.entries.push_back({a3, 1, fixtures::efx_counterexample_misreport_agent2()});
  witness.entries.push_back({a4, 1, fixtures::efx_counterexample_misreport_agent2()});
  add(result, "impossibility witness verifies",
      verify_impossibility_witness(truth, Criterion::EFX, witness));
  return result;
}

ReproResult repro_greedy() {
  ReproResult result{"greedy-table", {}};
  const Instance truth = fixtures::greedy_manipulable();
  MechanismConfig first_order;   // agents 1,2
  MechanismConfig second_order;  // agents 2,1
  second_order.agent_order = {1, 0};

  const Allocation t1 = allocate(MechanismId::GreedyRoundRobin, truth, first_order);
  add(result, "truthful order 1,2 gives acd | be",
      t1 == alloc_of(truth, {{"a", "c", "d"}, {"b", "e"}}));
  const Allocation t2 = allocate(MechanismId::GreedyRoundRobin, truth, second_order);
  add(result, "truthful order 2,1 gives ac | bde",
      t2 == alloc_of(truth, {{"a", "c"}, {"b", "d", "e"}}));

  const Instance lie1 = with_valuation(truth, 0, fixtures::greedy_misreport_agent1());
  const Allocation d1 = allocate(MechanismId::GreedyRoundRobin, lie1, first_order);
  add(result, "agent 1's swap report gives abd | ce",
      d1 == alloc_of(truth, {{"a", "b", "d"}, {"c", "e"}}));
  add(result, "agent 1 rises from 26 to 28",
      truth.value_of(0, t1.bundles[0]) == Value{26} &&
          truth.value_of(0, d1.bundles[0]) == Value{28});

  const Instance lie2 = with_valuation(truth, 1, fixtures::greedy_misreport_agent2());
  const Allocation d2 = allocate(MechanismId::GreedyRoundRobin, lie2, second_order);
  add(result, "agent 2's inflated report gives ad | bce",
      d2 == alloc_of(truth, {{"a", "d"}, {"b", "c", "e"}}));
  add(result, "agent 2 rises from 25 to 27",
      truth.value_of(1, t2.bundles[1]) == Value{25} &&
          truth.value_of(1, d2.bundles[1]) == Value{27});

  const MisreportSpace grid = AdditiveGrid{0, 15, 1};
  auto w1 = best_misreport(MechanismId::GreedyRoundRobin, truth, 0, grid, first_order);
  add(result, "grid search order 1,2: agent 1 gains at least 2",
      w1 && w1->truthful_utility == Value{26} &&
          w1->deviated_utility >= w1->truthful_utility + Value{2},
      w1 ? w1->truthful_utility.str() + " -> " + w1->deviated_utility.str() : "none");
  auto w2 = best_misreport(MechanismId::GreedyRoundRobin, truth, 1, grid, second_order);
  add(result, "grid search order 2,1: agent 2 gains at least 2",
      w2 && w2->truthful_utility == Value{25} &&
          w2->deviated_utility >= w2->truthful_utility + Value{2},
      w2 ? w2->truthful_utility.str() + " -> " + w2->deviated_utility.str() : "none");
  return result;
}

ReproResult repro_cycle_table() {
  ReproResult result{"cycle-table", {}};
  const Instance truth = fixtures::cycle_manipulable();
  const GoodSet a = 1, b = 2, c = 4, d = 8;
  MechanismConfig cfg;
  cfg.item_order = {3, 0, 1, 2};  // d, a, b, c

  const MechanismResult truthful = envy_cycle_elimination(truth, cfg);
  const std::vector<TraceRow> expected_truthful = {
      {{d, 0}, {{1, 0}}},
      {{d, a}, {{1, 0}}},
      {{d, a | b}, {{0, 1}}},
      {{c | d, a | b}, {{0, 1}}},
  };
  add(result, "truthful run matches the worked trace row for row",
      rows_of(truthful.trace) == expected_truthful);
  add(result, "truthful value of the agent holding the big good is 15",
      truth.value_of(0, truthful.allocation.bundles[0]) == Value{15});

  const Instance lie = with_valuation(truth, 0, fixtures::cycle_misreport());
  const MechanismResult low = envy_cycle_elimination(lie, cfg);
  const std::vector<TraceRow> expected_low = {
      {{d, 0}, {{1, 0}}},
      {{d, a}, {{0, 1}, {1, 0}}},
      {{a, d}, {}},
      {{a | b, d}, {{1, 0}}},
      {{a | b, c | d}, {{1, 0}}},
  };
  add(result, "understated report, lowest-index sources: trace matches with the swap",
      rows_of(low.trace) == expected_low);
  add(result, "liar's true value rises from 15 to 16 (takes ab)",
      truth.value_of(0, low.allocation.bundles[0]) == Value{16});

  MechanismConfig high = cfg;
  high.source_tie_break = SourceTieBreak::HighestIndex;
  const MechanismResult hi = envy_cycle_elimination(lie, high);
  const std::vector<TraceRow> expected_high = {
      {{d, 0}, {{1, 0}}},
      {{d, a}, {{0, 1}, {1, 0}}},
      {{a, d}, {}},
      {{a, b | d}, {{0, 1}}},
      {{a | c, b | d}, {{1, 0}}},
  };
  add(result, "highest-index sources branch at the third item: trace matches",
      rows_of(hi.trace) == expected_high);
  add(result, "liar's true value rises from 15 to 16 (takes ac)",
      truth.value_of(0, hi.allocation.bundles[0]) == Value{16});
  return result;
}

ReproResult repro_cycle_additive() {
  ReproResult result{"cycle-additive", {}};
  const Instance truth = fixtures::cycle_additive();
  const int big_good = 2;  // c, worth 12

  for (const auto& items : std::vector<std::vector<int>>{{0, 1, 2}, {1, 0, 2}}) {
    for (SourceTieBreak tie : {SourceTieBreak::LowestIndex, SourceTieBreak::HighestIndex,
                               SourceTieBreak::LeastBundleValue}) {
      MechanismConfig cfg;
      cfg.item_order = items;
      cfg.source_tie_break = tie;
      const Allocation truthful = allocate(MechanismId::EnvyCycleElimination, truth, cfg);
      const int victim = bundle_contains(truthful.bundles[0], big_good) ? 1 : 0;

      std::ostringstream label;
      label << "items " << truth.goods[items[0]] << truth.goods[items[1]]
            << truth.goods[items[2]] << ", " << source_tie_break_name(tie)
            << " sources: losing agent lifts 5 to 17";
      const Value truthful_value = truth.value_of(victim, truthful.bundles[victim]);
      auto witness = best_misreport(MechanismId::EnvyCycleElimination, truth, victim,
                                    AdditiveGrid{0, 12, 1}, cfg);
      add(result, label.str(),
          truthful_value == Value{5} && witness && witness->truthful_utility == Value{5} &&
              witness->deviated_utility == Value{17},
          witness ? witness->deviated_utility.str() : "none");
    }
  }
  return result;
}

ReproResult repro_rsd_nsp() {
  ReproResult result{"rsd-nsp", {}};

  Rng rng_a(0x52534401);
  int ef1_violations = 0;
  for (int k = 0; k < 1000; ++k) {
    const int n = rng_a.uniform(2, 4);
    const int m = rng_a.uniform(1, 8);
    const Instance inst = random_identical_additive_instance(rng_a, n, m, 20);
    if (!is_ef1(inst, allocate(MechanismId::RSD, inst)).holds()) ++ef1_violations;
  }
  add(result, "1000 identical-additive runs all come out envy-free up to one good",
      ef1_violations == 0, std::to_string(ef1_violations) + " violations");

  Rng rng_b(0x52534402);
  int nsp_small_failures = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = rng_b.uniform(2, 4);
    const int m = rng_b.uniform(1, n);
    const Instance inst = random_additive_instance(rng_b, n, m, 10);
    const std::vector<MisreportSpace> spaces(n, AdditiveGrid{0, 10, 2});
    if (!verify_nsp(MechanismId::RSD, inst, spaces).holds) ++nsp_small_failures;
  }
  add(result, "200 additive instances with fewer goods than agents are grid-truthful",
      nsp_small_failures == 0, std::to_string(nsp_small_failures) + " failures");

  Rng rng_c(0x52534403);
  int nsp_identical_failures = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = rng_c.uniform(2, 4);
    const int m = rng_c.uniform(1, 5);
    Instance inst = random_identical_additive_instance(rng_c, n, m, 5);
    for (auto& v : inst.valuations) {
      for (auto& value : std::get<AdditiveValuation>(v).item_values) {
        value = value * Value{2};  // keep truth on the even grid
      }
    }
    const std::vector<MisreportSpace> spaces(n, AdditiveGrid{0, 10, 2});
    if (!verify_nsp(MechanismId::RSD, inst, spaces).holds) ++nsp_identical_failures;
  }
  add(result, "100 identical-additive instances are grid-truthful",
      nsp_identical_failures == 0, std::to_string(nsp_identical_failures) + " failures");
  return result;
}

ReproResult repro_sd_suite() {
  ReproResult result{"sd-suite", {}};
  Rng rng(0x53440001);

  int ef1_violations = 0, efx_violations = 0, mms_violations = 0;
  int prop_possible = 0, prop_violations = 0;
  int sp_checked = 0, nsp_only = 0, lies_found = 0;
  const SearchBudget sp_budget{1'000'000};

  for (int k = 0; k < 1000; ++k) {
    const int n = rng.uniform(2, 4);
    const int m = rng.uniform(2, 8);
    const Instance inst = random_single_minded_instance(rng, n, m, 20);
    const Allocation alloc = allocate(MechanismId::SD, inst);

    if (!is_ef1(inst, alloc).holds()) ++ef1_violations;
    if (!is_efx(inst, alloc).holds()) ++efx_violations;
    if (!is_mms(inst, alloc).holds()) ++mms_violations;

    const bool proportional_exists =
        find_allocation(n, m, [&](const Allocation& a) {
          return is_proportional(inst, a).holds();
        }).has_value();
    if (proportional_exists) {
      ++prop_possible;
      if (!is_proportional(inst, alloc).holds()) ++prop_violations;
    }

    std::vector<MisreportSpace> spaces;
    for (int i = 0; i < n; ++i) {
      spaces.push_back(
          SingleMindedSpace{std::get<SingleMindedValuation>(inst.valuations[i]).payoff});
    }
    try {
      if (!verify_sp(MechanismId::SD, {inst}, spaces, {}, sp_budget).holds) ++lies_found;
      ++sp_checked;
    } catch (const CapacityError&) {
      if (!verify_nsp(MechanismId::SD, inst, spaces).holds) ++lies_found;
      ++nsp_only;
    }
  }

  add(result, "1000 runs all satisfy envy-freeness up to one good",
      ef1_violations == 0, std::to_string(ef1_violations) + " violations");
  add(result, "1000 runs all satisfy envy-freeness up to any good",
      efx_violations == 0, std::to_string(efx_violations) + " violations");
  add(result, "1000 runs all satisfy maximin fairness",
      mms_violations == 0, std::to_string(mms_violations) + " violations");
  add(result, "proportional whenever any proportional allocation exists",
      prop_violations == 0,
      std::to_string(prop_possible) + " instances admit one, " +
          std::to_string(prop_violations) + " violations");
  add(result, "no profitable lie over all nonempty desired-bundle reports",
      lies_found == 0,
      std::to_string(sp_checked) + " full co-report products, " + std::to_string(nsp_only) +
          " truthful-co-report only, " + std::to_string(lies_found) + " lies");
  add(result, "full co-report product covered on at least 600 instances", sp_checked >= 600,
      std::to_string(sp_checked) + " covered");
  return result;
}

}  // namespace

const std::vector<std::string>& repro_case_names() {
  static const std::vector<std::string> names = {
      "mms-example", "prop-table",     "efx-table", "greedy-table",
      "cycle-table", "cycle-additive", "rsd-nsp",   "sd-suite",
  };
  return names;
}

ReproResult run_repro_case(const std::string& case_name) {
  if (case_name == "mms-example") return repro_mms_example();
  if (case_name == "prop-table") return repro_prop_counterexample();
  if (case_name == "efx-table") return repro_efx_counterexample();
  if (case_name == "greedy-table") return repro_greedy();
  if (case_name == "cycle-table") return repro_cycle_table();
  if (case_name == "cycle-additive") return repro_cycle_additive();
  if (case_name == "rsd-nsp") return repro_rsd_nsp();
  if (case_name == "sd-suite") return repro_sd_suite();
  throw ParseError("unknown repro case \"" + case_name + "\"");
}

}  // namespace fairdiv
