#include "fairdiv/strategy.hpp"

#include <algorithm>
#include <limits>

namespace fairdiv {

namespace {

constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kUnlimited / a) return kUnlimited;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kUnlimited - b ? kUnlimited : a + b;
}

void check_grid(const AdditiveGrid& grid) {
  if (grid.step <= 0 || grid.lo > grid.hi || grid.lo < 0) {
    throw StructuralError("additive grid needs 0 <= lo <= hi and step > 0");
  }
}

void check_space_matches_mechanism(const MisreportSpace& space, MechanismId mech) {
  if (std::holds_alternative<AdditiveGrid>(space) && mech == MechanismId::SD) {
    throw RestrictionError("sd accepts only single-minded reports; additive grid mismatch");
  }
  if (std::holds_alternative<SingleMindedSpace>(space) &&
      (mech == MechanismId::GreedyRoundRobin || mech == MechanismId::RSD)) {
    throw RestrictionError(std::string(mechanism_name(mech)) +
                           " accepts only additive reports; single-minded space mismatch");
  }
}

// Calls fn(const Valuation&) for every candidate, in canonical order.
template <typename Fn>
void for_each_report(const MisreportSpace& space, int num_goods, Fn&& fn) {
  if (const auto* grid = std::get_if<AdditiveGrid>(&space)) {
    check_grid(*grid);
    AdditiveValuation buffer;
    buffer.item_values.assign(num_goods, Value{grid->lo});
    std::vector<long long> point(num_goods, grid->lo);
    Valuation candidate = buffer;
    while (true) {
      fn(static_cast<const Valuation&>(candidate));
      int g = num_goods - 1;
      auto& values = std::get<AdditiveValuation>(candidate).item_values;
      while (g >= 0 && point[g] + grid->step > grid->hi) {
        point[g] = grid->lo;
        values[g] = Value{grid->lo};
        --g;
      }
      if (g < 0) break;
      point[g] += grid->step;
      values[g] = Value{point[g]};
    }
    return;
  }
  if (const auto* sm = std::get_if<SingleMindedSpace>(&space)) {
    Valuation candidate = SingleMindedValuation{1, sm->payoff};
    for (GoodSet desired = 1; desired <= full_bundle(num_goods); ++desired) {
      std::get<SingleMindedValuation>(candidate).desired = desired;
      fn(static_cast<const Valuation&>(candidate));
    }
    return;
  }
  for (const Valuation& candidate : std::get<ExplicitList>(space).candidates) {
    fn(candidate);
  }
}

}  // namespace

std::uint64_t space_size(const MisreportSpace& space, int num_goods) {
  if (const auto* grid = std::get_if<AdditiveGrid>(&space)) {
    check_grid(*grid);
    std::uint64_t points = static_cast<std::uint64_t>((grid->hi - grid->lo) / grid->step) + 1;
    std::uint64_t count = 1;
    for (int g = 0; g < num_goods; ++g) count = saturating_mul(count, points);
    return count;
  }
  if (std::holds_alternative<SingleMindedSpace>(space)) {
    return full_bundle(num_goods);  // every nonempty subset
  }
  return std::get<ExplicitList>(space).candidates.size();
}

Valuation report_at(const MisreportSpace& space, int num_goods, std::uint64_t index) {
  if (index >= space_size(space, num_goods)) {
    throw StructuralError("report index out of range for the misreport space");
  }
  if (const auto* grid = std::get_if<AdditiveGrid>(&space)) {
    std::uint64_t points = static_cast<std::uint64_t>((grid->hi - grid->lo) / grid->step) + 1;
    AdditiveValuation report;
    report.item_values.assign(num_goods, Value{});
    for (int g = num_goods - 1; g >= 0; --g) {
      report.item_values[g] = Value{grid->lo + static_cast<long long>(index % points) * grid->step};
      index /= points;
    }
    return report;
  }
  if (const auto* sm = std::get_if<SingleMindedSpace>(&space)) {
    return SingleMindedValuation{static_cast<GoodSet>(index + 1), sm->payoff};
  }
  return std::get<ExplicitList>(space).candidates[index];
}

std::optional<ManipulationWitness> best_misreport(MechanismId mech, const Instance& inst,
                                                  int agent, const MisreportSpace& space,
                                                  const MechanismConfig& cfg,
                                                  const SearchBudget& budget) {
  if (agent < 0 || agent >= inst.num_agents()) {
    throw StructuralError("agent index out of range");
  }
  check_space_matches_mechanism(space, mech);
  std::uint64_t runs = saturating_add(space_size(space, inst.num_goods()), 1);
  if (runs > budget.max_runs) {
    throw CapacityError("misreport search needs " + std::to_string(runs) +
                        " mechanism runs, over the budget of " +
                        std::to_string(budget.max_runs));
  }

  Allocation truthful = allocate(mech, inst, cfg);
  const Value truthful_utility = inst.value_of(agent, truthful.bundles[agent]);

  Instance work = inst;
  std::optional<ManipulationWitness> best;
  Value best_utility = truthful_utility;
  for_each_report(space, inst.num_goods(), [&](const Valuation& candidate) {
    work.valuations[agent] = candidate;
    Allocation deviated = allocate(mech, work, cfg);
    Value utility = inst.value_of(agent, deviated.bundles[agent]);
    if (utility > best_utility) {
      best_utility = utility;
      best = ManipulationWitness{agent,    inst.valuations[agent], candidate,
                                 truthful, std::move(deviated),    truthful_utility,
                                 utility};
    }
  });
  return best;
}

namespace {

std::uint64_t nsp_planned_runs(const Instance& inst, const std::vector<MisreportSpace>& spaces) {
  std::uint64_t total = 0;
  for (const auto& space : spaces) {
    total = saturating_add(total, saturating_add(space_size(space, inst.num_goods()), 1));
  }
  return total;
}

}  // namespace

StrategyVerdict verify_nsp(MechanismId mech, const Instance& inst,
                           const std::vector<MisreportSpace>& spaces,
                           const MechanismConfig& cfg, const SearchBudget& budget) {
  if (static_cast<int>(spaces.size()) != inst.num_agents()) {
    throw StructuralError("one misreport space per agent is required");
  }
  std::uint64_t runs = nsp_planned_runs(inst, spaces);
  if (runs > budget.max_runs) {
    throw CapacityError("nsp verification needs " + std::to_string(runs) +
                        " mechanism runs, over the budget of " + std::to_string(budget.max_runs));
  }
  for (int agent = 0; agent < inst.num_agents(); ++agent) {
    auto witness = best_misreport(mech, inst, agent, spaces[agent], cfg,
                                  SearchBudget{kUnlimited});
    if (witness) return {false, std::move(witness)};
  }
  return {true, std::nullopt};
}

StrategyVerdict verify_sp(MechanismId mech, const std::vector<Instance>& family,
                          const std::vector<MisreportSpace>& spaces,
                          const MechanismConfig& cfg, const SearchBudget& budget) {
  // Budget first: one nsp pass per (member, focal agent, co-player combo).
  std::uint64_t planned = 0;
  for (const Instance& member : family) {
    if (static_cast<int>(spaces.size()) != member.num_agents()) {
      throw StructuralError("one misreport space per agent is required");
    }
    const int n = member.num_agents();
    std::uint64_t per_profile = nsp_planned_runs(member, spaces);
    for (int focal = 0; focal < n; ++focal) {
      std::uint64_t combos = 1;
      for (int j = 0; j < n; ++j) {
        if (j != focal) combos = saturating_mul(combos, space_size(spaces[j], member.num_goods()));
      }
      planned = saturating_add(planned, saturating_mul(combos, per_profile));
    }
  }
  if (planned > budget.max_runs) {
    throw CapacityError("sp verification needs " + std::to_string(planned) +
                        " mechanism runs, over the budget of " + std::to_string(budget.max_runs));
  }

  for (const Instance& member : family) {
    const int n = member.num_agents();
    const int m = member.num_goods();
    for (int focal = 0; focal < n; ++focal) {
      std::vector<int> others;
      for (int j = 0; j < n; ++j) {
        if (j != focal) others.push_back(j);
      }
      std::vector<std::uint64_t> sizes;
      for (int j : others) sizes.push_back(space_size(spaces[j], m));
      if (std::find(sizes.begin(), sizes.end(), 0u) != sizes.end()) continue;

      std::vector<std::uint64_t> index(others.size(), 0);
      Instance profile = member;
      while (true) {
        for (size_t k = 0; k < others.size(); ++k) {
          profile.valuations[others[k]] = report_at(spaces[others[k]], m, index[k]);
        }
        auto verdict = verify_nsp(mech, profile, spaces, cfg, SearchBudget{kUnlimited});
        if (!verdict.holds) return verdict;

        int k = static_cast<int>(others.size()) - 1;
        while (k >= 0 && index[k] + 1 == sizes[k]) {
          index[k] = 0;
          --k;
        }
        if (k < 0) break;
        ++index[k];
      }
    }
  }
  return {true, std::nullopt};
}

bool verify_impossibility_witness(const Instance& inst, Criterion criterion,
                                  const ImpossibilityWitness& witness) {
  if (witness.criterion != criterion) {
    throw StructuralError("impossibility witness criterion mismatch");
  }
  const auto truthful_fair = fair_set(inst, criterion);
  if (truthful_fair.empty()) {
    throw StructuralError("truthful fair set is empty; nothing to witness");
  }
  for (const Allocation& offered : truthful_fair) {
    const ImpossibilityWitness::Entry* entry = nullptr;
    for (const auto& e : witness.entries) {
      if (e.allocation == offered) {
        entry = &e;
        break;
      }
    }
    if (entry == nullptr) return false;  // does not cover this fair allocation
    if (entry->agent < 0 || entry->agent >= inst.num_agents()) {
      throw StructuralError("impossibility witness agent out of range");
    }

    Instance misreported = inst;
    misreported.valuations[entry->agent] = entry->misreport;
    const auto shifted_fair = fair_set(misreported, criterion);
    if (shifted_fair.empty()) return false;

    const Value offered_value = inst.value_of(entry->agent, offered.bundles[entry->agent]);
    bool first = true;
    Value worst;
    for (const Allocation& shifted : shifted_fair) {
      Value v = inst.value_of(entry->agent, shifted.bundles[entry->agent]);
      if (first || v < worst) {
        worst = v;
        first = false;
      }
    }
    if (!(worst > offered_value)) return false;
  }
  return true;
}

}  // namespace fairdiv
