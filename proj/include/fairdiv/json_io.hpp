#pragma once

#include <string>

#include <json.hpp>

#include "fairdiv/fairness.hpp"
#include "fairdiv/mechanisms.hpp"
#include "fairdiv/model.hpp"
#include "fairdiv/strategy.hpp"

namespace fairdiv {

using Json = nlohmann::json;  // std::map-backed: object keys serialize sorted

// Values are written as JSON integers when integral, "p/q" strings otherwise.
// Accepted inputs: integers, exact decimal strings, fraction strings.
Value value_from_json(const Json& j);
Json value_to_json(const Value& v);

// {"agents": n, "goods": [labels], "valuations": [ ... ]} with one of
//   {"type":"additive","values":{label: value}}
//   {"type":"table","base":{label: value},"overrides":{"a,b": value}}
//   {"type":"single_minded","bundle":[labels],"value": value}
// Unknown keys are rejected; unlisted goods default to value 0.
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& instance);
Instance load_instance_file(const std::string& path);

// {"allocation": [[labels] x n]}; completeness is checked separately.
Allocation allocation_from_json(const Json& j, const Instance& instance);
Json allocation_to_json(const Allocation& allocation, const Instance& instance);
Allocation load_allocation_file(const std::string& path, const Instance& instance);

Json bundle_to_json(GoodSet bundle, const Instance& instance);
Json verdict_to_json(const FairnessVerdict& verdict, const Instance& instance);
Json trace_to_json(const Trace& trace, const Instance& instance, bool include_envy);
Json valuation_to_json(const Valuation& valuation, const Instance& instance);
Json manipulation_witness_to_json(const ManipulationWitness& witness, const Instance& instance);

}  // namespace fairdiv
