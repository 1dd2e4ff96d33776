#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

enum class MechanismId { GreedyRoundRobin, EnvyCycleElimination, RSD, SD };

const char* mechanism_name(MechanismId id);  // "greedy-rr", "envy-cycle", "rsd", "sd"
std::optional<MechanismId> mechanism_from_name(std::string_view name);

enum class GoodTieBreak { LowestIndex, HighestIndex };
enum class SourceTieBreak { LowestIndex, HighestIndex, LeastBundleValue };

const char* good_tie_break_name(GoodTieBreak tie);      // "lowest", "highest"
const char* source_tie_break_name(SourceTieBreak tie);  // "lowest", "highest", "least-value"
std::optional<GoodTieBreak> good_tie_break_from_name(std::string_view name);
std::optional<SourceTieBreak> source_tie_break_from_name(std::string_view name);

// Pins every free choice a mechanism makes, so runs replay bit-identically.
// Empty orders mean the identity / instance order.
struct MechanismConfig {
  std::vector<int> agent_order;             // picking order; also seeds envy-cycle
  std::vector<int> item_order;              // envy-cycle processing order
  GoodTieBreak good_tie_break = GoodTieBreak::LowestIndex;
  SourceTieBreak source_tie_break = SourceTieBreak::LowestIndex;
  bool operator==(const MechanismConfig&) const = default;
};

struct TraceStep {
  enum class Kind { Pick, Rotate, Leftover };
  Kind kind = Kind::Pick;
  int agent = -1;                          // receiver for Pick/Leftover
  GoodSet goods = 0;                       // goods moved in this step
  std::vector<int> cycle;                  // Rotate: i takes the bundle of the next agent
  std::vector<GoodSet> bundles;            // snapshot after the step
  std::vector<std::pair<int, int>> envy_edges;  // envy-cycle runs only
  bool operator==(const TraceStep&) const = default;
};

struct Trace {
  std::vector<TraceStep> steps;
  bool operator==(const Trace&) const = default;
};

struct MechanismResult {
  Allocation allocation;
  Trace trace;
};

// Agents take turns cyclically; each turn the agent receives its highest
// reported-value remaining good. Additive valuations only.
MechanismResult greedy_round_robin(const Instance& reported, const MechanismConfig& config = {});

// Processes goods in item order, always giving the next good to an agent
// nobody envies; envy cycles are resolved by rotating bundles along the
// cycle. Works for every monotone valuation variant.
MechanismResult envy_cycle_elimination(const Instance& reported,
                                       const MechanismConfig& config = {});

// Fixed-order repeated serial dictatorship over single goods (additive only).
MechanismResult rsd(const Instance& reported, const MechanismConfig& config = {});

// Serial dictatorship for single-minded agents: ascending |desired| order,
// each agent receives its desired bundle when still available; leftovers go
// to the last agent in that order.
MechanismResult sd(const Instance& reported);

MechanismResult run(MechanismId mechanism, const Instance& reported,
                    const MechanismConfig& config = {});

// Same outcome as run() without building a trace (hot path for searches).
Allocation allocate(MechanismId mechanism, const Instance& reported,
                    const MechanismConfig& config = {});

// Applies the steps starting from empty bundles.
Allocation replay_trace(const Trace& trace, int num_agents);

// Envy graph under reported valuations: edge i -> j iff i values j's bundle
// strictly above its own. Edges ordered by (i, j).
std::vector<std::pair<int, int>> envy_edges(const Instance& reported,
                                            const std::vector<GoodSet>& bundles);

std::vector<int> resolved_agent_order(const MechanismConfig& config, int num_agents);
std::vector<int> resolved_item_order(const MechanismConfig& config, int num_goods);

}  // namespace fairdiv
