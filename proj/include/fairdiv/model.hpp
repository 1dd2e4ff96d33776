#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/value.hpp"

namespace fairdiv {

// Bundles are bitmasks over good indices (position in Instance::goods).
using GoodSet = std::uint32_t;

constexpr int kMaxGoods = 30;       // additive / single-minded instances
constexpr int kMaxTableGoods = 16;  // full 2^m expansion bound for tables

constexpr GoodSet good_bit(int good) { return GoodSet{1} << good; }
constexpr bool bundle_contains(GoodSet bundle, int good) { return (bundle >> good) & 1u; }
constexpr int bundle_size(GoodSet bundle) { return std::popcount(bundle); }
constexpr GoodSet full_bundle(int num_goods) {
  return num_goods == 0 ? 0 : (GoodSet{1} << num_goods) - 1;
}

// v(S) = sum of per-item values over S.
struct AdditiveValuation {
  std::vector<Value> item_values;
  bool operator==(const AdditiveValuation&) const = default;
};

// Arbitrary monotone valuation over at most kMaxTableGoods goods. The file
// form is a base additive map plus explicit subset overrides; bundle_values
// holds the full expansion (override wins, base-additive sum otherwise).
struct TableValuation {
  std::vector<Value> base_item_values;
  std::vector<std::pair<GoodSet, Value>> overrides;  // sorted by mask
  std::vector<Value> bundle_values;                  // size 1 << m
  bool operator==(const TableValuation&) const = default;
};

// v(S) = payoff when S covers the desired bundle, 0 otherwise.
struct SingleMindedValuation {
  GoodSet desired = 0;
  Value payoff;
  bool operator==(const SingleMindedValuation&) const = default;
};

using Valuation = std::variant<AdditiveValuation, TableValuation, SingleMindedValuation>;

inline bool is_additive(const Valuation& v) {
  return std::holds_alternative<AdditiveValuation>(v);
}
inline bool is_table(const Valuation& v) { return std::holds_alternative<TableValuation>(v); }
inline bool is_single_minded(const Valuation& v) {
  return std::holds_alternative<SingleMindedValuation>(v);
}
const char* valuation_kind_name(const Valuation& v);

// Builds and expands a table valuation. Throws CapacityError past the
// expansion bound and StructuralError on malformed overrides.
TableValuation make_table_valuation(std::vector<Value> base_item_values,
                                    std::vector<std::pair<GoodSet, Value>> overrides,
                                    int num_goods);

// Evaluates one valuation on a bundle. The bundle must reference only the
// first num_goods indices.
Value value_of(const Valuation& valuation, GoodSet bundle, int num_goods);

struct Instance {
  std::vector<std::string> goods;      // labels; index order fixes all tie-breaks
  std::vector<Valuation> valuations;   // one per agent

  int num_agents() const { return static_cast<int>(valuations.size()); }
  int num_goods() const { return static_cast<int>(goods.size()); }
  GoodSet all_goods() const { return full_bundle(num_goods()); }

  const Valuation& valuation(int agent) const;
  Value value_of(int agent, GoodSet bundle) const;

  int good_index(std::string_view label) const;  // -1 when unknown
  // Throws StructuralError naming the label when it is unknown.
  GoodSet bundle_of_labels(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of_bundle(GoodSet bundle) const;

  bool operator==(const Instance&) const = default;
};

struct Allocation {
  std::vector<GoodSet> bundles;  // one per agent, disjoint when complete
  bool operator==(const Allocation&) const = default;
};

struct Violation {
  enum class Kind {
    NoAgents,
    TooManyGoods,
    DuplicateGood,
    BadLabel,
    Malformed,
    NegativeValue,
    NonMonotoneTable,
    EmptyDesiredBundle,
    NonPositivePayoff,
    TableTooLarge,
  };
  Kind kind;
  int agent = -1;          // -1 when not agent-specific
  GoodSet subset_s = 0;    // NonMonotoneTable witness: S below T
  GoodSet subset_t = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  std::string summary() const;
};

// Lists every structural violation; an empty report means the instance is
// well formed (monotone tables, non-negative values, sane shapes).
ValidationReport validate_instance(const Instance& instance);

// True iff the bundles partition the instance's goods exactly.
bool is_complete(const Instance& instance, const Allocation& allocation);
void require_complete(const Instance& instance, const Allocation& allocation);

std::vector<std::string> default_good_labels(int num_goods);

}  // namespace fairdiv
