#include "fairdiv/json_io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace fairdiv {

namespace {

void require_keys(const Json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown key \"" + key + "\"");
  }
  for (const auto& key : required) {
    if (!j.contains(key)) throw ParseError(where + ": missing key \"" + key + "\"");
  }
}

int resolve_label(const Json& label, const Instance& inst, const std::string& where) {
  if (!label.is_string()) throw ParseError(where + ": good labels must be strings");
  int g = inst.good_index(label.get<std::string>());
  if (g < 0) {
    throw ParseError(where + ": unknown good label \"" + label.get<std::string>() + "\"");
  }
  return g;
}

// label -> value object; unlisted goods stay 0.
std::vector<Value> values_by_label(const Json& j, const Instance& inst,
                                   const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must map good labels to values");
  std::vector<Value> values(inst.num_goods());
  for (const auto& [label, raw] : j.items()) {
    int g = inst.good_index(label);
    if (g < 0) throw ParseError(where + ": unknown good label \"" + label + "\"");
    values[g] = value_from_json(raw);
  }
  return values;
}

GoodSet parse_override_key(const std::string& key, const Instance& inst,
                           const std::string& where) {
  GoodSet mask = 0;
  std::stringstream parts(key);
  std::string label;
  while (std::getline(parts, label, ',')) {
    int g = inst.good_index(label);
    if (g < 0) throw ParseError(where + ": unknown good label \"" + label + "\"");
    if (bundle_contains(mask, g)) {
      throw ParseError(where + ": good \"" + label + "\" repeats in override \"" + key + "\"");
    }
    mask |= good_bit(g);
  }
  if (mask == 0) throw ParseError(where + ": empty override bundle \"" + key + "\"");
  return mask;
}

Valuation valuation_from_json(const Json& j, const Instance& inst, int agent) {
  const std::string where = "valuations[" + std::to_string(agent) + "]";
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError(where + " needs a string \"type\"");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "additive") {
    require_keys(j, {"type", "values"}, {"type", "values"}, where);
    return AdditiveValuation{values_by_label(j["values"], inst, where + ".values")};
  }
  if (type == "table") {
    require_keys(j, {"type", "base", "overrides"}, {"type", "base"}, where);
    if (inst.num_goods() > kMaxTableGoods) {
      throw ParseError(where + ": table valuations support at most " +
                       std::to_string(kMaxTableGoods) + " goods");
    }
    std::vector<std::pair<GoodSet, Value>> overrides;
    if (j.contains("overrides")) {
      if (!j["overrides"].is_object()) {
        throw ParseError(where + ".overrides must map bundles to values");
      }
      std::set<GoodSet> seen;
      for (const auto& [key, raw] : j["overrides"].items()) {
        GoodSet mask = parse_override_key(key, inst, where + ".overrides");
        if (!seen.insert(mask).second) {
          throw ParseError(where + ".overrides: bundle \"" + key + "\" listed twice");
        }
        overrides.emplace_back(mask, value_from_json(raw));
      }
    }
    return make_table_valuation(values_by_label(j["base"], inst, where + ".base"),
                                std::move(overrides), inst.num_goods());
  }
  if (type == "single_minded") {
    require_keys(j, {"type", "bundle", "value"}, {"type", "bundle", "value"}, where);
    if (!j["bundle"].is_array()) throw ParseError(where + ".bundle must be an array of labels");
    GoodSet desired = 0;
    for (const auto& label : j["bundle"]) {
      int g = resolve_label(label, inst, where + ".bundle");
      if (bundle_contains(desired, g)) {
        throw ParseError(where + ".bundle lists \"" + inst.goods[g] + "\" twice");
      }
      desired |= good_bit(g);
    }
    return SingleMindedValuation{desired, value_from_json(j["value"])};
  }
  throw ParseError(where + ": unknown valuation type \"" + type + "\"");
}

std::string joined_labels(GoodSet mask, const Instance& inst) {
  std::string key;
  for (int g = 0; g < inst.num_goods(); ++g) {
    if (!bundle_contains(mask, g)) continue;
    if (!key.empty()) key += ',';
    key += inst.goods[g];
  }
  return key;
}

}  // namespace

Value value_from_json(const Json& j) {
  if (j.is_number_unsigned()) {
    auto u = j.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
      throw ParseError("integer value too large for exact arithmetic");
    }
    return Value{static_cast<long long>(u)};
  }
  if (j.is_number_integer()) return Value{j.get<long long>()};
  if (j.is_string()) return Value::parse(j.get<std::string>());
  if (j.is_number_float()) {
    throw ParseError("floating point values are not exact; write the value as a string");
  }
  throw ParseError("values must be integers or exact decimal strings");
}

Json value_to_json(const Value& v) {
  if (v.is_integer()) return Json(v.numerator());
  return Json(v.str());
}

Instance instance_from_json(const Json& j) {
  require_keys(j, {"agents", "goods", "valuations"}, {"agents", "goods", "valuations"},
               "instance");
  if (!j["agents"].is_number_integer() && !j["agents"].is_number_unsigned()) {
    throw ParseError("\"agents\" must be an integer");
  }
  const long long agents = j["agents"].get<long long>();
  if (agents < 1) throw ParseError("\"agents\" must be at least 1");
  if (!j["goods"].is_array()) throw ParseError("\"goods\" must be an array of labels");

  Instance inst;
  for (const auto& label : j["goods"]) {
    if (!label.is_string()) throw ParseError("good labels must be strings");
    inst.goods.push_back(label.get<std::string>());
  }
  if (inst.num_goods() > kMaxGoods) {
    throw ParseError("instances support at most " + std::to_string(kMaxGoods) + " goods");
  }
  if (!j["valuations"].is_array() ||
      static_cast<long long>(j["valuations"].size()) != agents) {
    throw ParseError("\"valuations\" must list exactly one valuation per agent");
  }
  int agent = 0;
  for (const auto& v : j["valuations"]) {
    inst.valuations.push_back(valuation_from_json(v, inst, agent++));
  }
  return inst;
}

Json valuation_to_json(const Valuation& valuation, const Instance& inst) {
  Json j;
  if (const auto* add = std::get_if<AdditiveValuation>(&valuation)) {
    j["type"] = "additive";
    Json values = Json::object();
    for (int g = 0; g < inst.num_goods(); ++g) {
      values[inst.goods[g]] = value_to_json(add->item_values[g]);
    }
    j["values"] = std::move(values);
    return j;
  }
  if (const auto* table = std::get_if<TableValuation>(&valuation)) {
    j["type"] = "table";
    Json base = Json::object();
    for (int g = 0; g < inst.num_goods(); ++g) {
      base[inst.goods[g]] = value_to_json(table->base_item_values[g]);
    }
    j["base"] = std::move(base);
    Json overrides = Json::object();
    for (const auto& [mask, value] : table->overrides) {
      overrides[joined_labels(mask, inst)] = value_to_json(value);
    }
    j["overrides"] = std::move(overrides);
    return j;
  }
  const auto& sm = std::get<SingleMindedValuation>(valuation);
  j["type"] = "single_minded";
  j["bundle"] = bundle_to_json(sm.desired, inst);
  j["value"] = value_to_json(sm.payoff);
  return j;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["agents"] = inst.num_agents();
  j["goods"] = inst.goods;
  Json valuations = Json::array();
  for (const auto& v : inst.valuations) valuations.push_back(valuation_to_json(v, inst));
  j["valuations"] = std::move(valuations);
  return j;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file \"" + path + "\"");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("invalid JSON in \"" + path + "\": " + e.what());
  }
  return instance_from_json(j);
}

Allocation allocation_from_json(const Json& j, const Instance& inst) {
  require_keys(j, {"allocation"}, {"allocation"}, "allocation");
  if (!j["allocation"].is_array() ||
      static_cast<int>(j["allocation"].size()) != inst.num_agents()) {
    throw ParseError("\"allocation\" must list one bundle per agent");
  }
  Allocation alloc;
  int agent = 0;
  for (const auto& bundle : j["allocation"]) {
    const std::string where = "allocation[" + std::to_string(agent) + "]";
    if (!bundle.is_array()) throw ParseError(where + " must be an array of labels");
    GoodSet mask = 0;
    for (const auto& label : bundle) {
      int g = resolve_label(label, inst, where);
      if (bundle_contains(mask, g)) {
        throw ParseError(where + " lists \"" + inst.goods[g] + "\" twice");
      }
      mask |= good_bit(g);
    }
    alloc.bundles.push_back(mask);
    ++agent;
  }
  return alloc;
}

Json bundle_to_json(GoodSet bundle, const Instance& inst) {
  return Json(inst.labels_of_bundle(bundle));
}

Json allocation_to_json(const Allocation& alloc, const Instance& inst) {
  Json bundles = Json::array();
  for (GoodSet bundle : alloc.bundles) bundles.push_back(bundle_to_json(bundle, inst));
  return Json{{"allocation", std::move(bundles)}};
}

Allocation load_allocation_file(const std::string& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open allocation file \"" + path + "\"");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("invalid JSON in \"" + path + "\": " + e.what());
  }
  return allocation_from_json(j, inst);
}

Json verdict_to_json(const FairnessVerdict& verdict, const Instance& inst) {
  Json j;
  j["criterion"] = criterion_name(verdict.criterion);
  switch (verdict.status) {
    case VerdictStatus::Holds: j["status"] = "holds"; break;
    case VerdictStatus::Fails: j["status"] = "fails"; break;
    case VerdictStatus::Skipped: j["status"] = "skipped"; break;
  }
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    Json wj;
    wj["agent"] = w.agent + 1;
    if (w.envied) wj["envied"] = *w.envied + 1;
    if (w.removed_good) wj["removed_good"] = inst.goods[*w.removed_good];
    wj["lhs"] = w.lhs.str();
    wj["rhs"] = w.rhs.str();
    j["witness"] = std::move(wj);
  }
  return j;
}

Json trace_to_json(const Trace& trace, const Instance& inst, bool include_envy) {
  Json steps = Json::array();
  for (const auto& step : trace.steps) {
    Json sj;
    switch (step.kind) {
      case TraceStep::Kind::Pick: sj["kind"] = "pick"; break;
      case TraceStep::Kind::Rotate: sj["kind"] = "rotate"; break;
      case TraceStep::Kind::Leftover: sj["kind"] = "leftover"; break;
    }
    if (step.kind == TraceStep::Kind::Rotate) {
      Json cycle = Json::array();
      for (int agent : step.cycle) cycle.push_back(agent + 1);
      sj["cycle"] = std::move(cycle);
    } else {
      sj["agent"] = step.agent + 1;
      sj["goods"] = bundle_to_json(step.goods, inst);
    }
    Json bundles = Json::array();
    for (GoodSet bundle : step.bundles) bundles.push_back(bundle_to_json(bundle, inst));
    sj["bundles"] = std::move(bundles);
    if (include_envy) {
      Json envy = Json::array();
      for (const auto& [from, to] : step.envy_edges) {
        envy.push_back(Json::array({from + 1, to + 1}));
      }
      sj["envy"] = std::move(envy);
    }
    steps.push_back(std::move(sj));
  }
  return steps;
}

Json manipulation_witness_to_json(const ManipulationWitness& w, const Instance& inst) {
  Json j;
  j["agent"] = w.agent + 1;
  j["true_valuation"] = valuation_to_json(w.true_valuation, inst);
  j["misreport"] = valuation_to_json(w.misreport, inst);
  j["truthful_allocation"] = allocation_to_json(w.truthful_allocation, inst)["allocation"];
  j["deviated_allocation"] = allocation_to_json(w.deviated_allocation, inst)["allocation"];
  j["truthful_utility"] = w.truthful_utility.str();
  j["deviated_utility"] = w.deviated_utility.str();
  return j;
}

}  // namespace fairdiv
