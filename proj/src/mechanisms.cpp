#include "fairdiv/mechanisms.hpp"

#include <algorithm>
#include <numeric>

namespace fairdiv {

const char* mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::GreedyRoundRobin: return "greedy-rr";
    case MechanismId::EnvyCycleElimination: return "envy-cycle";
    case MechanismId::RSD: return "rsd";
    case MechanismId::SD: return "sd";
  }
  return "?";
}

std::optional<MechanismId> mechanism_from_name(std::string_view name) {
  for (MechanismId id : {MechanismId::GreedyRoundRobin, MechanismId::EnvyCycleElimination,
                         MechanismId::RSD, MechanismId::SD}) {
    if (name == mechanism_name(id)) return id;
  }
  return std::nullopt;
}

const char* good_tie_break_name(GoodTieBreak tie) {
  return tie == GoodTieBreak::LowestIndex ? "lowest" : "highest";
}

const char* source_tie_break_name(SourceTieBreak tie) {
  switch (tie) {
    case SourceTieBreak::LowestIndex: return "lowest";
    case SourceTieBreak::HighestIndex: return "highest";
    case SourceTieBreak::LeastBundleValue: return "least-value";
  }
  return "?";
}

std::optional<GoodTieBreak> good_tie_break_from_name(std::string_view name) {
  if (name == "lowest") return GoodTieBreak::LowestIndex;
  if (name == "highest") return GoodTieBreak::HighestIndex;
  return std::nullopt;
}

std::optional<SourceTieBreak> source_tie_break_from_name(std::string_view name) {
  if (name == "lowest") return SourceTieBreak::LowestIndex;
  if (name == "highest") return SourceTieBreak::HighestIndex;
  if (name == "least-value") return SourceTieBreak::LeastBundleValue;
  return std::nullopt;
}

namespace {

std::vector<int> resolved_order(const std::vector<int>& order, int count, const char* what) {
  if (order.empty()) {
    std::vector<int> identity(count);
    std::iota(identity.begin(), identity.end(), 0);
    return identity;
  }
  if (static_cast<int>(order.size()) != count) {
    throw StructuralError(std::string(what) + " order must list every index exactly once");
  }
  std::vector<bool> seen(count, false);
  for (int idx : order) {
    if (idx < 0 || idx >= count || seen[idx]) {
      throw StructuralError(std::string(what) + " order is not a permutation");
    }
    seen[idx] = true;
  }
  return order;
}

void require_all_additive(const Instance& inst, const char* mechanism) {
  for (int i = 0; i < inst.num_agents(); ++i) {
    if (!is_additive(inst.valuations[i])) {
      throw RestrictionError(std::string(mechanism) + " accepts only additive valuations; agent " +
                             std::to_string(i + 1) + " reported a " +
                             valuation_kind_name(inst.valuations[i]) + " valuation");
    }
  }
}

void require_all_single_minded(const Instance& inst) {
  for (int i = 0; i < inst.num_agents(); ++i) {
    if (!is_single_minded(inst.valuations[i])) {
      throw RestrictionError(std::string("sd accepts only single-minded valuations; agent ") +
                             std::to_string(i + 1) + " reported a " +
                             valuation_kind_name(inst.valuations[i]) + " valuation");
    }
  }
}

int pick_good(const AdditiveValuation& v, GoodSet remaining, GoodTieBreak tie) {
  int best = -1;
  for (GoodSet rest = remaining; rest != 0; rest &= rest - 1) {
    int g = std::countr_zero(rest);
    if (best == -1 || v.item_values[g] > v.item_values[best] ||
        (tie == GoodTieBreak::HighestIndex && v.item_values[g] == v.item_values[best])) {
      best = g;
    }
  }
  return best;
}

void record_pick(Trace* trace, int agent, GoodSet goods, const std::vector<GoodSet>& bundles,
                 std::vector<std::pair<int, int>> edges = {},
                 TraceStep::Kind kind = TraceStep::Kind::Pick) {
  if (!trace) return;
  TraceStep step;
  step.kind = kind;
  step.agent = agent;
  step.goods = goods;
  step.bundles = bundles;
  step.envy_edges = std::move(edges);
  trace->steps.push_back(std::move(step));
}

Allocation greedy_impl(const Instance& inst, const MechanismConfig& cfg, Trace* trace) {
  require_all_additive(inst, "greedy-rr");
  const auto order = resolved_agent_order(cfg, inst.num_agents());
  std::vector<GoodSet> bundles(inst.num_agents(), 0);
  GoodSet remaining = inst.all_goods();
  int turn = 0;
  while (remaining != 0) {
    int agent = order[turn % order.size()];
    int g = pick_good(std::get<AdditiveValuation>(inst.valuations[agent]), remaining,
                      cfg.good_tie_break);
    bundles[agent] |= good_bit(g);
    remaining &= ~good_bit(g);
    record_pick(trace, agent, good_bit(g), bundles);
    ++turn;
  }
  return Allocation{std::move(bundles)};
}

Allocation rsd_impl(const Instance& inst, const MechanismConfig& cfg, Trace* trace) {
  require_all_additive(inst, "rsd");
  const auto order = resolved_agent_order(cfg, inst.num_agents());
  const int n = inst.num_agents();
  std::vector<GoodSet> bundles(n, 0);
  GoodSet remaining = inst.all_goods();
  int i = 0;
  while (remaining != 0) {
    int agent = order[i];
    int g = pick_good(std::get<AdditiveValuation>(inst.valuations[agent]), remaining,
                      cfg.good_tie_break);
    bundles[agent] |= good_bit(g);
    remaining &= ~good_bit(g);
    record_pick(trace, agent, good_bit(g), bundles);
    i = (i + 1) % n;
  }
  return Allocation{std::move(bundles)};
}

// First cycle reached by depth-first search, trying start vertices in
// ascending order and neighbours in ascending order.
std::vector<int> find_envy_cycle(const std::vector<std::pair<int, int>>& edges, int n) {
  std::vector<std::vector<int>> adjacent(n);
  for (const auto& [from, to] : edges) adjacent[from].push_back(to);

  std::vector<int> state(n, 0);  // 0 fresh, 1 on stack, 2 done
  std::vector<int> stack;
  std::vector<int> cycle;

  auto dfs = [&](auto&& self, int u) -> bool {
    state[u] = 1;
    stack.push_back(u);
    for (int v : adjacent[u]) {
      if (state[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        cycle.assign(it, stack.end());
        return true;
      }
      if (state[v] == 0 && self(self, v)) return true;
    }
    stack.pop_back();
    state[u] = 2;
    return false;
  };

  for (int start = 0; start < n; ++start) {
    if (state[start] == 0 && dfs(dfs, start)) return cycle;
  }
  return {};
}

int select_source(const std::vector<int>& sources, const Instance& inst,
                  const std::vector<GoodSet>& bundles, SourceTieBreak tie) {
  switch (tie) {
    case SourceTieBreak::LowestIndex: return sources.front();
    case SourceTieBreak::HighestIndex: return sources.back();
    case SourceTieBreak::LeastBundleValue: {
      int best = sources.front();
      Value best_value = inst.value_of(best, bundles[best]);
      for (size_t k = 1; k < sources.size(); ++k) {
        Value v = inst.value_of(sources[k], bundles[sources[k]]);
        if (v < best_value) {
          best = sources[k];
          best_value = v;
        }
      }
      return best;
    }
  }
  return sources.front();
}

Allocation envy_cycle_impl(const Instance& inst, const MechanismConfig& cfg, Trace* trace) {
  const int n = inst.num_agents();
  const auto agent_order = resolved_agent_order(cfg, n);
  const auto items = resolved_item_order(cfg, inst.num_goods());
  std::vector<GoodSet> bundles(n, 0);
  bool allocated_any = false;

  for (int g : items) {
    std::vector<int> sources;
    while (true) {
      auto edges = envy_edges(inst, bundles);
      std::vector<bool> has_incoming(n, false);
      for (const auto& [from, to] : edges) has_incoming[to] = true;
      sources.clear();
      for (int i = 0; i < n; ++i) {
        if (!has_incoming[i]) sources.push_back(i);
      }
      if (!sources.empty()) break;

      auto cycle = find_envy_cycle(edges, n);
      std::vector<GoodSet> old = bundles;
      for (size_t k = 0; k < cycle.size(); ++k) {
        bundles[cycle[k]] = old[cycle[(k + 1) % cycle.size()]];
      }
      if (trace) {
        TraceStep step;
        step.kind = TraceStep::Kind::Rotate;
        step.cycle = cycle;
        step.bundles = bundles;
        step.envy_edges = envy_edges(inst, bundles);
        trace->steps.push_back(std::move(step));
      }
    }

    // The very first good seeds the run: with all bundles empty every agent
    // is a source, and the configured agent order decides.
    int receiver = allocated_any ? select_source(sources, inst, bundles, cfg.source_tie_break)
                                 : agent_order[0];
    bundles[receiver] |= good_bit(g);
    allocated_any = true;
    record_pick(trace, receiver, good_bit(g), bundles, envy_edges(inst, bundles));
  }
  return Allocation{std::move(bundles)};
}

Allocation sd_impl(const Instance& inst, Trace* trace) {
  require_all_single_minded(inst);
  const int n = inst.num_agents();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int sa = bundle_size(std::get<SingleMindedValuation>(inst.valuations[a]).desired);
    int sb = bundle_size(std::get<SingleMindedValuation>(inst.valuations[b]).desired);
    return sa != sb ? sa < sb : a < b;
  });

  std::vector<GoodSet> bundles(n, 0);
  GoodSet remaining = inst.all_goods();
  for (int agent : order) {
    GoodSet desired = std::get<SingleMindedValuation>(inst.valuations[agent]).desired;
    if ((remaining & desired) == desired) {
      bundles[agent] = desired;
      remaining &= ~desired;
      record_pick(trace, agent, desired, bundles);
    }
  }
  if (remaining != 0) {
    int last = order.back();
    bundles[last] |= remaining;
    record_pick(trace, last, remaining, bundles, {}, TraceStep::Kind::Leftover);
    remaining = 0;
  }
  return Allocation{std::move(bundles)};
}

Allocation dispatch(MechanismId id, const Instance& inst, const MechanismConfig& cfg,
                    Trace* trace) {
  switch (id) {
    case MechanismId::GreedyRoundRobin: return greedy_impl(inst, cfg, trace);
    case MechanismId::EnvyCycleElimination: return envy_cycle_impl(inst, cfg, trace);
    case MechanismId::RSD: return rsd_impl(inst, cfg, trace);
    case MechanismId::SD: return sd_impl(inst, trace);
  }
  throw StructuralError("unknown mechanism");
}

}  // namespace

std::vector<int> resolved_agent_order(const MechanismConfig& cfg, int num_agents) {
  return resolved_order(cfg.agent_order, num_agents, "agent");
}

std::vector<int> resolved_item_order(const MechanismConfig& cfg, int num_goods) {
  return resolved_order(cfg.item_order, num_goods, "item");
}

std::vector<std::pair<int, int>> envy_edges(const Instance& inst,
                                            const std::vector<GoodSet>& bundles) {
  const int n = inst.num_agents();
  std::vector<Value> own(n);
  for (int i = 0; i < n; ++i) own[i] = inst.value_of(i, bundles[i]);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && own[i] < inst.value_of(i, bundles[j])) edges.emplace_back(i, j);
    }
  }
  return edges;
}

MechanismResult greedy_round_robin(const Instance& inst, const MechanismConfig& cfg) {
  MechanismResult result;
  result.allocation = greedy_impl(inst, cfg, &result.trace);
  return result;
}

MechanismResult envy_cycle_elimination(const Instance& inst, const MechanismConfig& cfg) {
  MechanismResult result;
  result.allocation = envy_cycle_impl(inst, cfg, &result.trace);
  return result;
}

MechanismResult rsd(const Instance& inst, const MechanismConfig& cfg) {
  MechanismResult result;
  result.allocation = rsd_impl(inst, cfg, &result.trace);
  return result;
}

MechanismResult sd(const Instance& inst) {
  MechanismResult result;
  result.allocation = sd_impl(inst, &result.trace);
  return result;
}

MechanismResult run(MechanismId id, const Instance& inst, const MechanismConfig& cfg) {
  MechanismResult result;
  result.allocation = dispatch(id, inst, cfg, &result.trace);
  return result;
}

Allocation allocate(MechanismId id, const Instance& inst, const MechanismConfig& cfg) {
  return dispatch(id, inst, cfg, nullptr);
}

Allocation replay_trace(const Trace& trace, int num_agents) {
  Allocation alloc;
  alloc.bundles.assign(num_agents, 0);
  for (const auto& step : trace.steps) {
    if (step.kind == TraceStep::Kind::Rotate) {
      std::vector<GoodSet> old = alloc.bundles;
      for (size_t k = 0; k < step.cycle.size(); ++k) {
        alloc.bundles[step.cycle[k]] = old[step.cycle[(k + 1) % step.cycle.size()]];
      }
    } else {
      alloc.bundles[step.agent] |= step.goods;
    }
  }
  return alloc;
}

}  // namespace fairdiv
