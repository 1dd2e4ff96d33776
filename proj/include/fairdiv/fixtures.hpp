#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

// Instance builders used by fixtures, generators and tests.
Instance make_additive_instance(std::vector<std::string> goods,
                                std::vector<std::vector<long long>> per_agent_values);
Instance make_single_minded_instance(
    std::vector<std::string> goods,
    std::vector<std::pair<std::vector<std::string>, long long>> desires);
Valuation make_additive_valuation(std::vector<long long> values);
Instance with_valuation(Instance instance, int agent, Valuation valuation);

namespace fixtures {

// Two additive agents over three goods with maximin share 30 each.
Instance mms_example();

// Identical non-additive pair values; proportional splits give each agent a
// pair or the best single good.
Instance prop_example();

// Two additive agents with opposite favourites; one envy-free split.
Instance ef_example();

// Two-agent three-good instance whose proportional set collapses to a single
// allocation under a flat misreport, rewarding the liar.
Instance prop_counterexample();
Valuation prop_counterexample_misreport();  // flat additive report

// Two-agent four-good instance with exactly four EFX allocations; a reshaped
// report shrinks the set to the liar's two best.
Instance efx_counterexample();
Valuation efx_counterexample_misreport_agent1();
Valuation efx_counterexample_misreport_agent2();

// Five goods where swapping the top two reported values steals a better
// bundle under greedy round-robin.
Instance greedy_manipulable();
Valuation greedy_misreport_agent1();
Valuation greedy_misreport_agent2();

// Identical table valuations with complementary pairs; understating the big
// good flips the envy-cycle run in the liar's favour.
Instance cycle_manipulable();
Valuation cycle_misreport();

// Identical additive (5, 5, 12); the agent missing the big good can steal it.
Instance cycle_additive();

// Serial dictatorship demos: nested and disjoint desired bundles.
Instance sd_nested();
Instance sd_disjoint();

// Fixture name (file stem) -> embedded instance, misreport profiles included.
std::vector<std::pair<std::string, Instance>> all();

}  // namespace fixtures
}  // namespace fairdiv
