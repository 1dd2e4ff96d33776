#include "fairdiv/fairness.hpp"

#include <algorithm>

namespace fairdiv {

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::Proportional: return "prop";
    case Criterion::EnvyFree: return "ef";
    case Criterion::EF1: return "ef1";
    case Criterion::EFX: return "efx";
    case Criterion::MMS: return "mms";
  }
  return "?";
}

std::optional<Criterion> criterion_from_name(std::string_view name) {
  for (Criterion c : kAllCriteria) {
    if (name == criterion_name(c)) return c;
  }
  return std::nullopt;
}

const FairnessVerdict& FairnessReport::verdict(Criterion c) const {
  for (const auto& v : verdicts) {
    if (v.criterion == c) return v;
  }
  throw StructuralError("criterion missing from fairness report");
}

bool FairnessReport::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const FairnessVerdict& v) { return v.holds(); });
}

namespace {

FairnessVerdict holds_verdict(Criterion c) {
  return {c, VerdictStatus::Holds, std::nullopt};
}

FairnessVerdict fails_verdict(Criterion c, FairnessWitness witness) {
  return {c, VerdictStatus::Fails, std::move(witness)};
}

}  // namespace

FairnessVerdict is_proportional(const Instance& inst, const Allocation& alloc) {
  require_complete(inst, alloc);
  const Value n{inst.num_agents()};
  for (int i = 0; i < inst.num_agents(); ++i) {
    Value own = inst.value_of(i, alloc.bundles[i]);
    Value share = inst.value_of(i, inst.all_goods()) / n;
    if (own < share) {
      return fails_verdict(Criterion::Proportional,
                           {i, std::nullopt, std::nullopt, own, share});
    }
  }
  return holds_verdict(Criterion::Proportional);
}

FairnessVerdict is_envy_free(const Instance& inst, const Allocation& alloc) {
  require_complete(inst, alloc);
  for (int i = 0; i < inst.num_agents(); ++i) {
    Value own = inst.value_of(i, alloc.bundles[i]);
    for (int j = 0; j < inst.num_agents(); ++j) {
      if (j == i) continue;
      Value other = inst.value_of(i, alloc.bundles[j]);
      if (own < other) {
        return fails_verdict(Criterion::EnvyFree, {i, j, std::nullopt, own, other});
      }
    }
  }
  return holds_verdict(Criterion::EnvyFree);
}

FairnessVerdict is_ef1(const Instance& inst, const Allocation& alloc) {
  require_complete(inst, alloc);
  for (int i = 0; i < inst.num_agents(); ++i) {
    Value own = inst.value_of(i, alloc.bundles[i]);
    for (int j = 0; j < inst.num_agents(); ++j) {
      if (j == i || alloc.bundles[j] == 0) continue;
      bool some_removal_works = false;
      for (GoodSet rest = alloc.bundles[j]; rest != 0; rest &= rest - 1) {
        int g = std::countr_zero(rest);
        if (own >= inst.value_of(i, alloc.bundles[j] & ~good_bit(g))) {
          some_removal_works = true;
          break;
        }
      }
      if (!some_removal_works) {
        int lowest = std::countr_zero(alloc.bundles[j]);
        return fails_verdict(
            Criterion::EF1,
            {i, j, lowest, own, inst.value_of(i, alloc.bundles[j] & ~good_bit(lowest))});
      }
    }
  }
  return holds_verdict(Criterion::EF1);
}

FairnessVerdict is_efx(const Instance& inst, const Allocation& alloc) {
  require_complete(inst, alloc);
  for (int i = 0; i < inst.num_agents(); ++i) {
    Value own = inst.value_of(i, alloc.bundles[i]);
    for (int j = 0; j < inst.num_agents(); ++j) {
      if (j == i || alloc.bundles[j] == 0) continue;
      // The removal ranges over every good in the bundle, zero-valued ones
      // included.
      for (GoodSet rest = alloc.bundles[j]; rest != 0; rest &= rest - 1) {
        int g = std::countr_zero(rest);
        Value reduced = inst.value_of(i, alloc.bundles[j] & ~good_bit(g));
        if (own < reduced) {
          return fails_verdict(Criterion::EFX, {i, j, g, own, reduced});
        }
      }
    }
  }
  return holds_verdict(Criterion::EFX);
}

std::uint64_t allocation_count(const Instance& inst) {
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  if (m > 12 && n > 1) {
    throw CapacityError("full allocation enumeration supports at most 12 goods, got " +
                        std::to_string(m));
  }
  std::uint64_t count = 1;
  for (int g = 0; g < m; ++g) {
    count *= static_cast<std::uint64_t>(n);
    if (count > kEnumerationCap) {
      throw CapacityError("allocation space " + std::to_string(n) + "^" + std::to_string(m) +
                          " exceeds the enumeration cap; use a smaller instance");
    }
  }
  return count;
}

namespace {

// Depth-first walk over assignment vectors with incremental bundle sums for
// additive valuations; other variants evaluate bundles at the leaves.
struct MmsSearch {
  const Instance& inst;
  const Valuation& valuation;
  const AdditiveValuation* additive;
  int n, m;
  std::vector<GoodSet> masks;
  std::vector<Value> sums;
  std::optional<Value> best;
  std::vector<GoodSet> best_masks;

  MmsSearch(const Instance& instance, int agent)
      : inst(instance),
        valuation(instance.valuation(agent)),
        additive(std::get_if<AdditiveValuation>(&instance.valuation(agent))),
        n(instance.num_agents()),
        m(instance.num_goods()),
        masks(n, 0),
        sums(n) {}

  Value min_bundle_value() const {
    Value lowest;
    bool first = true;
    for (int b = 0; b < n; ++b) {
      Value v = additive ? sums[b] : value_of(valuation, masks[b], m);
      if (first || v < lowest) {
        lowest = v;
        first = false;
      }
    }
    return lowest;
  }

  void run(int good) {
    if (good == m) {
      Value lowest = min_bundle_value();
      if (!best || lowest > *best) {
        best = lowest;
        best_masks = masks;
      }
      return;
    }
    for (int b = 0; b < n; ++b) {
      masks[b] |= good_bit(good);
      if (additive) sums[b] += additive->item_values[good];
      run(good + 1);
      if (additive) sums[b] -= additive->item_values[good];
      masks[b] &= ~good_bit(good);
    }
  }
};

}  // namespace

MmsShare mms_share(const Instance& inst, int agent) {
  // A single-minded agent's desired bundle fits in at most one of n >= 2
  // disjoint bundles, so some bundle is always worth 0 and the maximin value
  // is 0, attained by the first assignment vector. Matches the enumeration
  // result without the n^m walk.
  if (const auto* sm = std::get_if<SingleMindedValuation>(&inst.valuation(agent))) {
    std::vector<GoodSet> masks(inst.num_agents(), 0);
    masks[0] = inst.all_goods();
    Value mu = inst.num_agents() == 1 ? sm->payoff : Value{};
    return {mu, Allocation{std::move(masks)}};
  }
  allocation_count(inst);
  MmsSearch search(inst, agent);
  search.run(0);
  if (!search.best) throw StructuralError("maximin search visited no assignment");
  return {*search.best, Allocation{search.best_masks}};
}

FairnessVerdict is_mms(const Instance& inst, const Allocation& alloc) {
  require_complete(inst, alloc);
  for (int i = 0; i < inst.num_agents(); ++i) {
    Value mu = mms_share(inst, i).mu;
    Value own = inst.value_of(i, alloc.bundles[i]);
    if (own < mu) {
      return fails_verdict(Criterion::MMS, {i, std::nullopt, std::nullopt, own, mu});
    }
  }
  return holds_verdict(Criterion::MMS);
}

FairnessVerdict check_criterion(const Instance& inst, const Allocation& alloc, Criterion c) {
  switch (c) {
    case Criterion::Proportional: return is_proportional(inst, alloc);
    case Criterion::EnvyFree: return is_envy_free(inst, alloc);
    case Criterion::EF1: return is_ef1(inst, alloc);
    case Criterion::EFX: return is_efx(inst, alloc);
    case Criterion::MMS: return is_mms(inst, alloc);
  }
  throw StructuralError("unknown criterion");
}

FairnessReport check_all(const Instance& inst, const Allocation& alloc) {
  require_complete(inst, alloc);
  FairnessReport report;
  for (Criterion c : kAllCriteria) {
    if (c == Criterion::MMS) {
      try {
        report.verdicts.push_back(is_mms(inst, alloc));
      } catch (const CapacityError&) {
        report.verdicts.push_back({Criterion::MMS, VerdictStatus::Skipped, std::nullopt});
      }
    } else {
      report.verdicts.push_back(check_criterion(inst, alloc, c));
    }
  }
  return report;
}

std::vector<Allocation> enumerate_allocations(const Instance& inst) {
  std::vector<Allocation> all;
  all.reserve(allocation_count(inst));
  for_each_allocation(inst.num_agents(), inst.num_goods(),
                      [&](const Allocation& a) { all.push_back(a); });
  return all;
}

std::vector<Allocation> fair_set(const Instance& inst, Criterion criterion) {
  allocation_count(inst);
  std::vector<Allocation> fair;
  if (criterion == Criterion::MMS) {
    std::vector<Value> mus;
    for (int i = 0; i < inst.num_agents(); ++i) mus.push_back(mms_share(inst, i).mu);
    for_each_allocation(inst.num_agents(), inst.num_goods(), [&](const Allocation& a) {
      for (int i = 0; i < inst.num_agents(); ++i) {
        if (inst.value_of(i, a.bundles[i]) < mus[i]) return;
      }
      fair.push_back(a);
    });
    return fair;
  }
  for_each_allocation(inst.num_agents(), inst.num_goods(), [&](const Allocation& a) {
    if (check_criterion(inst, a, criterion).holds()) fair.push_back(a);
  });
  return fair;
}

}  // namespace fairdiv
