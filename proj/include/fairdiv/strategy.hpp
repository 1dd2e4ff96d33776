#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fairdiv/fairness.hpp"
#include "fairdiv/mechanisms.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv {

// Finite report spaces for the manipulation search. The real report space is
// infinite; a found witness is conclusive, absence is conclusive only
// relative to the space searched.
struct AdditiveGrid {
  long long lo = 0;
  long long hi = 0;
  long long step = 1;  // candidates are {lo, lo+step, ..., hi}^m
};

struct SingleMindedSpace {
  Value payoff;  // every nonempty desired bundle, payoff fixed
};

struct ExplicitList {
  std::vector<Valuation> candidates;
};

using MisreportSpace = std::variant<AdditiveGrid, SingleMindedSpace, ExplicitList>;

std::uint64_t space_size(const MisreportSpace& space, int num_goods);

// Candidate in the space's canonical enumeration order (grids: lexicographic
// by good index; single-minded: ascending bundle mask; lists: given order).
Valuation report_at(const MisreportSpace& space, int num_goods, std::uint64_t index);

struct SearchBudget {
  std::uint64_t max_runs = 10'000'000;
};

// A profitable lie, certified by both mechanism runs. Utilities are always
// evaluated under the agent's true valuation; the mechanism sees reports.
struct ManipulationWitness {
  int agent = 0;
  Valuation true_valuation;
  Valuation misreport;
  Allocation truthful_allocation;
  Allocation deviated_allocation;
  Value truthful_utility;
  Value deviated_utility;
};

// Exhaustively evaluates every report in the space with the other agents
// fixed at the instance's valuations. Returns the witness with the highest
// deviated utility (ties: first candidate in enumeration order), or nothing
// when no report strictly beats truth-telling.
std::optional<ManipulationWitness> best_misreport(MechanismId mechanism, const Instance& instance,
                                                  int agent, const MisreportSpace& space,
                                                  const MechanismConfig& config = {},
                                                  const SearchBudget& budget = {});

struct StrategyVerdict {
  bool holds = false;
  std::optional<ManipulationWitness> witness;
};

// Truth-telling is a best response on this profile when all others report
// truthfully, relative to the given spaces.
StrategyVerdict verify_nsp(MechanismId mechanism, const Instance& instance,
                           const std::vector<MisreportSpace>& spaces,
                           const MechanismConfig& config = {}, const SearchBudget& budget = {});

// Strategy-proofness over the grid: verify_nsp must hold on every profile
// obtained from a family member by replacing each agent's co-players'
// reports with every combination from their spaces.
StrategyVerdict verify_sp(MechanismId mechanism, const std::vector<Instance>& family,
                          const std::vector<MisreportSpace>& spaces,
                          const MechanismConfig& config = {}, const SearchBudget& budget = {});

// For each fair allocation of the truthful profile, one (agent, misreport)
// pair meant to show that every fair allocation under the misreport strictly
// beats what the agent was offered.
struct ImpossibilityWitness {
  Criterion criterion = Criterion::EnvyFree;
  struct Entry {
    Allocation allocation;  // a member of the truthful fair set
    int agent = 0;
    Valuation misreport;
  };
  std::vector<Entry> entries;
};

// True iff the witness covers every allocation A in the truthful fair set
// and, for its (agent i, misreport), the fair set under the misreported
// profile is nonempty with min over it of v_i strictly above v_i(A_i).
// Such a witness defeats every deterministic selection from the fair set.
bool verify_impossibility_witness(const Instance& instance, Criterion criterion,
                                  const ImpossibilityWitness& witness);

}  // namespace fairdiv
