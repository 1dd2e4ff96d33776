#include "fairdiv/model.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace fairdiv {

const char* valuation_kind_name(const Valuation& v) {
  switch (v.index()) {
    case 0: return "additive";
    case 1: return "table";
    default: return "single_minded";
  }
}

TableValuation make_table_valuation(std::vector<Value> base_item_values,
                                    std::vector<std::pair<GoodSet, Value>> overrides,
                                    int num_goods) {
  if (num_goods > kMaxTableGoods) {
    throw CapacityError("table valuations support at most " +
                        std::to_string(kMaxTableGoods) + " goods, got " +
                        std::to_string(num_goods));
  }
  if (static_cast<int>(base_item_values.size()) != num_goods) {
    throw StructuralError("table base map must cover every good exactly once");
  }
  std::sort(overrides.begin(), overrides.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < overrides.size(); ++i) {
    if (overrides[i].first == 0) throw StructuralError("table override of the empty bundle");
    if (overrides[i].first > full_bundle(num_goods)) {
      throw StructuralError("table override references unknown goods");
    }
    if (i > 0 && overrides[i].first == overrides[i - 1].first) {
      throw StructuralError("duplicate table override for one bundle");
    }
  }

  TableValuation table;
  table.base_item_values = std::move(base_item_values);
  table.overrides = std::move(overrides);
  table.bundle_values.assign(std::size_t{1} << num_goods, Value{});
  for (GoodSet mask = 1; mask <= full_bundle(num_goods); ++mask) {
    Value sum;
    for (int g = 0; g < num_goods; ++g) {
      if (bundle_contains(mask, g)) sum += table.base_item_values[g];
    }
    table.bundle_values[mask] = sum;
  }
  for (const auto& [mask, value] : table.overrides) table.bundle_values[mask] = value;
  return table;
}

Value value_of(const Valuation& valuation, GoodSet bundle, int num_goods) {
  if (bundle > full_bundle(num_goods)) {
    throw StructuralError("bundle references a good outside the instance");
  }
  if (const auto* add = std::get_if<AdditiveValuation>(&valuation)) {
    if (static_cast<int>(add->item_values.size()) != num_goods) {
      throw StructuralError("additive valuation does not cover every good");
    }
    Value sum;
    for (GoodSet rest = bundle; rest != 0; rest &= rest - 1) {
      sum += add->item_values[std::countr_zero(rest)];
    }
    return sum;
  }
  if (const auto* table = std::get_if<TableValuation>(&valuation)) {
    if (table->bundle_values.size() != (std::size_t{1} << num_goods)) {
      throw StructuralError("table valuation is not expanded for this instance");
    }
    return table->bundle_values[bundle];
  }
  const auto& sm = std::get<SingleMindedValuation>(valuation);
  return (bundle & sm.desired) == sm.desired ? sm.payoff : Value{};
}

const Valuation& Instance::valuation(int agent) const {
  if (agent < 0 || agent >= num_agents()) {
    throw StructuralError("agent index " + std::to_string(agent) + " out of range");
  }
  return valuations[agent];
}

Value Instance::value_of(int agent, GoodSet bundle) const {
  return fairdiv::value_of(valuation(agent), bundle, num_goods());
}

int Instance::good_index(std::string_view label) const {
  for (int g = 0; g < num_goods(); ++g) {
    if (goods[g] == label) return g;
  }
  return -1;
}

GoodSet Instance::bundle_of_labels(const std::vector<std::string>& labels) const {
  GoodSet bundle = 0;
  for (const auto& label : labels) {
    int g = good_index(label);
    if (g < 0) throw StructuralError("unknown good label \"" + label + "\"");
    bundle |= good_bit(g);
  }
  return bundle;
}

std::vector<std::string> Instance::labels_of_bundle(GoodSet bundle) const {
  if (bundle > all_goods()) throw StructuralError("bundle references a good outside the instance");
  std::vector<std::string> labels;
  for (int g = 0; g < num_goods(); ++g) {
    if (bundle_contains(bundle, g)) labels.push_back(goods[g]);
  }
  return labels;
}

std::string ValidationReport::summary() const {
  if (valid()) return "valid";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.message;
  }
  return s;
}

namespace {

void validate_valuation(const Instance& inst, int agent, ValidationReport& report) {
  const int m = inst.num_goods();
  const auto push = [&](Violation::Kind kind, std::string message, GoodSet s = 0, GoodSet t = 0) {
    report.violations.push_back({kind, agent, s, t,
                                 "agent " + std::to_string(agent + 1) + ": " + std::move(message)});
  };

  const Valuation& val = inst.valuations[agent];
  if (const auto* add = std::get_if<AdditiveValuation>(&val)) {
    if (static_cast<int>(add->item_values.size()) != m) {
      push(Violation::Kind::Malformed, "additive valuation does not cover every good");
      return;
    }
    for (int g = 0; g < m; ++g) {
      if (add->item_values[g].is_negative()) {
        push(Violation::Kind::NegativeValue,
             "negative value for good \"" + inst.goods[g] + "\"");
      }
    }
    return;
  }

  if (const auto* table = std::get_if<TableValuation>(&val)) {
    if (m > kMaxTableGoods) {
      push(Violation::Kind::TableTooLarge,
           "table valuation over " + std::to_string(m) + " goods exceeds the expansion bound of " +
               std::to_string(kMaxTableGoods));
      return;
    }
    if (table->bundle_values.size() != (std::size_t{1} << m)) {
      push(Violation::Kind::Malformed, "table valuation is not fully expanded");
      return;
    }
    if (!table->bundle_values[0].is_zero()) {
      push(Violation::Kind::Malformed, "table assigns a nonzero value to the empty bundle");
    }
    for (GoodSet mask = 0; mask <= full_bundle(m); ++mask) {
      if (table->bundle_values[mask].is_negative()) {
        push(Violation::Kind::NegativeValue, "negative value for a bundle");
      }
      for (int g = 0; g < m; ++g) {
        if (bundle_contains(mask, g)) continue;
        GoodSet grown = mask | good_bit(g);
        if (table->bundle_values[mask] > table->bundle_values[grown]) {
          push(Violation::Kind::NonMonotoneTable,
               "non-monotone table: v(S) > v(T) for S subset of T (S=" +
                   std::to_string(mask) + ", T=" + std::to_string(grown) + ")",
               mask, grown);
        }
      }
    }
    return;
  }

  const auto& sm = std::get<SingleMindedValuation>(val);
  if (sm.desired == 0) {
    push(Violation::Kind::EmptyDesiredBundle, "single-minded desired bundle is empty");
  }
  if (sm.desired > full_bundle(m)) {
    push(Violation::Kind::Malformed, "desired bundle references unknown goods");
  }
  if (!(sm.payoff > Value{})) {
    push(Violation::Kind::NonPositivePayoff, "single-minded payoff must be positive");
  }
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  if (inst.num_agents() < 1) {
    report.violations.push_back(
        {Violation::Kind::NoAgents, -1, 0, 0, "instance needs at least one agent"});
  }
  if (inst.num_goods() > kMaxGoods) {
    report.violations.push_back({Violation::Kind::TooManyGoods, -1, 0, 0,
                                 "instances support at most " + std::to_string(kMaxGoods) +
                                     " goods, got " + std::to_string(inst.num_goods())});
    return report;
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : inst.goods) {
    if (label.empty() || label.find(',') != std::string::npos) {
      report.violations.push_back({Violation::Kind::BadLabel, -1, 0, 0,
                                   "good label \"" + label + "\" is empty or contains a comma"});
    }
    if (!seen.insert(label).second) {
      report.violations.push_back({Violation::Kind::DuplicateGood, -1, 0, 0,
                                   "duplicate good label \"" + label + "\""});
    }
  }
  for (int agent = 0; agent < inst.num_agents(); ++agent) {
    validate_valuation(inst, agent, report);
  }
  return report;
}

bool is_complete(const Instance& inst, const Allocation& alloc) {
  if (static_cast<int>(alloc.bundles.size()) != inst.num_agents()) {
    throw StructuralError("allocation has " + std::to_string(alloc.bundles.size()) +
                          " bundles for " + std::to_string(inst.num_agents()) + " agents");
  }
  GoodSet covered = 0;
  int total = 0;
  for (GoodSet bundle : alloc.bundles) {
    if (bundle > inst.all_goods()) {
      throw StructuralError("allocation references a good outside the instance");
    }
    covered |= bundle;
    total += bundle_size(bundle);
  }
  return covered == inst.all_goods() && total == inst.num_goods();
}

void require_complete(const Instance& inst, const Allocation& alloc) {
  if (!is_complete(inst, alloc)) {
    throw StructuralError("allocation is not a complete partition of the goods");
  }
}

std::vector<std::string> default_good_labels(int num_goods) {
  std::vector<std::string> labels;
  labels.reserve(num_goods);
  for (int g = 0; g < num_goods; ++g) {
    if (g < 26) {
      labels.push_back(std::string(1, static_cast<char>('a' + g)));
    } else {
      labels.push_back("g" + std::to_string(g + 1));
    }
  }
  return labels;
}

}  // namespace fairdiv
