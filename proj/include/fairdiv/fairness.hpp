#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

enum class Criterion { Proportional, EnvyFree, EF1, EFX, MMS };

constexpr std::array<Criterion, 5> kAllCriteria = {
    Criterion::Proportional, Criterion::EnvyFree, Criterion::EF1, Criterion::EFX,
    Criterion::MMS};

const char* criterion_name(Criterion c);  // "prop", "ef", "ef1", "efx", "mms"
std::optional<Criterion> criterion_from_name(std::string_view name);

enum class VerdictStatus { Holds, Fails, Skipped };

// Violation evidence. lhs < rhs always re-evaluates to the broken inequality:
//   Proportional: lhs = v_i(A_i), rhs = v_i(M)/n
//   EnvyFree:     lhs = v_i(A_i), rhs = v_i(A_j)
//   EF1/EFX:      lhs = v_i(A_i), rhs = v_i(A_j \ {removed_good})
//   MMS:          lhs = v_i(A_i), rhs = mu_i
struct FairnessWitness {
  int agent = 0;
  std::optional<int> envied;
  std::optional<int> removed_good;
  Value lhs;
  Value rhs;
};

struct FairnessVerdict {
  Criterion criterion;
  VerdictStatus status;
  std::optional<FairnessWitness> witness;  // present iff status == Fails
  bool holds() const { return status == VerdictStatus::Holds; }
};

struct FairnessReport {
  std::vector<FairnessVerdict> verdicts;  // kAllCriteria order
  const FairnessVerdict& verdict(Criterion c) const;
  bool all_hold() const;
};

FairnessVerdict is_proportional(const Instance& instance, const Allocation& allocation);
FairnessVerdict is_envy_free(const Instance& instance, const Allocation& allocation);
FairnessVerdict is_ef1(const Instance& instance, const Allocation& allocation);
FairnessVerdict is_efx(const Instance& instance, const Allocation& allocation);

struct MmsShare {
  Value mu;
  Allocation partition;  // first assignment vector attaining mu
};

// Exact maximin share: max over all ordered n-bundle assignments (empty
// bundles allowed) of the minimum bundle value under the agent's valuation.
MmsShare mms_share(const Instance& instance, int agent);

FairnessVerdict is_mms(const Instance& instance, const Allocation& allocation);

// All five checkers; the MMS verdict is Skipped past the enumeration cap.
FairnessReport check_all(const Instance& instance, const Allocation& allocation);
FairnessVerdict check_criterion(const Instance& instance, const Allocation& allocation,
                                Criterion criterion);

constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

// n^m, throwing CapacityError past the cap.
std::uint64_t allocation_count(const Instance& instance);

namespace detail {

// Odometer over good -> agent assignment vectors, lexicographic. The visitor
// returns false to stop early; the Allocation reference is reused.
template <typename Fn>
void visit_allocations(int num_agents, int num_goods, Fn&& fn) {
  Allocation alloc;
  alloc.bundles.assign(num_agents, 0);
  std::vector<int> assigned(num_goods, 0);
  for (int g = 0; g < num_goods; ++g) alloc.bundles[0] |= good_bit(g);
  while (true) {
    if (!fn(static_cast<const Allocation&>(alloc))) return;
    int g = num_goods - 1;
    while (g >= 0 && assigned[g] == num_agents - 1) {
      alloc.bundles[num_agents - 1] &= ~good_bit(g);
      alloc.bundles[0] |= good_bit(g);
      assigned[g] = 0;
      --g;
    }
    if (g < 0) break;
    alloc.bundles[assigned[g]] &= ~good_bit(g);
    ++assigned[g];
    alloc.bundles[assigned[g]] |= good_bit(g);
  }
}

}  // namespace detail

// Visits every complete allocation once, in lexicographic order of the
// good -> agent assignment vector. The Allocation reference is reused
// between calls; copy it to keep it.
template <typename Fn>
void for_each_allocation(int num_agents, int num_goods, Fn&& fn) {
  detail::visit_allocations(num_agents, num_goods, [&](const Allocation& a) {
    fn(a);
    return true;
  });
}

// First allocation in enumeration order satisfying the predicate.
template <typename Pred>
std::optional<Allocation> find_allocation(int num_agents, int num_goods, Pred&& pred) {
  std::optional<Allocation> found;
  detail::visit_allocations(num_agents, num_goods, [&](const Allocation& a) {
    if (pred(a)) {
      found = a;
      return false;
    }
    return true;
  });
  return found;
}

std::vector<Allocation> enumerate_allocations(const Instance& instance);

// Filters the enumeration by one criterion's checker (enumeration order).
std::vector<Allocation> fair_set(const Instance& instance, Criterion criterion);

}  // namespace fairdiv
