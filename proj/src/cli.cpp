#include "fairdiv/cli.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fairdiv/json_io.hpp"
#include "fairdiv/repro.hpp"

namespace fairdiv {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitRestriction = 3;
constexpr int kExitCapacity = 4;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

long long parse_int(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw ParseError("");
    return v;
  } catch (...) {
    throw ParseError("expected an integer for " + what + ", got \"" + text + "\"");
  }
}

// "2,1" with 1-based agents -> 0-based permutation.
std::vector<int> parse_agent_order(const std::string& text, int num_agents) {
  std::vector<int> order;
  for (const auto& part : split(text, ',')) {
    long long agent = parse_int(part, "--agent-order");
    if (agent < 1 || agent > num_agents) {
      throw ParseError("agent " + part + " out of range 1.." + std::to_string(num_agents));
    }
    order.push_back(static_cast<int>(agent - 1));
  }
  return order;
}

std::vector<int> parse_item_order(const std::string& text, const Instance& inst) {
  std::vector<int> order;
  for (const auto& label : split(text, ',')) {
    int g = inst.good_index(label);
    if (g < 0) throw ParseError("unknown good label \"" + label + "\" in --item-order");
    order.push_back(g);
  }
  return order;
}

AdditiveGrid parse_grid(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() != 3) throw ParseError("--grid expects lo:hi:step, got \"" + text + "\"");
  AdditiveGrid grid;
  grid.lo = parse_int(parts[0], "--grid lo");
  grid.hi = parse_int(parts[1], "--grid hi");
  grid.step = parse_int(parts[2], "--grid step");
  if (grid.step <= 0 || grid.lo > grid.hi || grid.lo < 0) {
    throw ParseError("--grid needs 0 <= lo <= hi and step > 0");
  }
  return grid;
}

struct ConfigFlags {
  std::string agent_order;
  std::string item_order;
  std::string tie_break = "lowest";
  std::string source_tie_break = "lowest";

  void attach(CLI::App* cmd) {
    cmd->add_option("--agent-order", agent_order, "picking order, 1-based agents (i,j,...)");
    cmd->add_option("--item-order", item_order, "processing order for envy-cycle (a,b,...)");
    cmd->add_option("--tie-break", tie_break, "argmax good ties: lowest|highest")
        ->check(CLI::IsMember({"lowest", "highest"}));
    cmd->add_option("--source-tie-break", source_tie_break,
                    "envy-graph source ties: lowest|highest|least-value")
        ->check(CLI::IsMember({"lowest", "highest", "least-value"}));
  }

  MechanismConfig resolve(const Instance& inst) const {
    MechanismConfig cfg;
    if (!agent_order.empty()) cfg.agent_order = parse_agent_order(agent_order, inst.num_agents());
    if (!item_order.empty()) cfg.item_order = parse_item_order(item_order, inst);
    cfg.good_tie_break = *good_tie_break_from_name(tie_break);
    cfg.source_tie_break = *source_tie_break_from_name(source_tie_break);
    return cfg;
  }
};

Json config_to_json(const MechanismConfig& cfg, const Instance& inst) {
  Json j;
  Json agents = Json::array();
  for (int a : resolved_agent_order(cfg, inst.num_agents())) agents.push_back(a + 1);
  j["agent_order"] = std::move(agents);
  Json items = Json::array();
  for (int g : resolved_item_order(cfg, inst.num_goods())) items.push_back(inst.goods[g]);
  j["item_order"] = std::move(items);
  j["tie_break"] = good_tie_break_name(cfg.good_tie_break);
  j["source_tie_break"] = source_tie_break_name(cfg.source_tie_break);
  return j;
}

Instance load_valid_instance(const std::string& path) {
  Instance inst = load_instance_file(path);
  ValidationReport report = validate_instance(inst);
  if (!report.valid()) {
    throw ParseError("invalid instance \"" + path + "\": " + report.summary());
  }
  return inst;
}

Json document_shell(const std::string& command) {
  Json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = command;
  return doc;
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << "\n"; }

MechanismId mechanism_or_throw(const std::string& name) {
  auto id = mechanism_from_name(name);
  if (!id) throw ParseError("unknown mechanism \"" + name + "\"");
  return *id;
}

int cmd_allocate(const std::string& instance_path, const std::string& mechanism,
                 const ConfigFlags& flags, bool with_trace, std::ostream& out) {
  const Instance inst = load_valid_instance(instance_path);
  const MechanismId id = mechanism_or_throw(mechanism);
  const MechanismConfig cfg = flags.resolve(inst);

  const MechanismResult result = run(id, inst, cfg);

  Json doc = document_shell("allocate");
  doc["config"] = config_to_json(cfg, inst);
  doc["config"]["mechanism"] = mechanism_name(id);
  doc["config"]["trace"] = with_trace;
  doc["instance"] = instance_to_json(inst);
  Json res;
  res["allocation"] = allocation_to_json(result.allocation, inst)["allocation"];
  Json values = Json::array();
  for (int i = 0; i < inst.num_agents(); ++i) {
    values.push_back(inst.value_of(i, result.allocation.bundles[i]).str());
  }
  res["bundle_values"] = std::move(values);
  if (with_trace) {
    res["trace"] = trace_to_json(result.trace, inst,
                                 id == MechanismId::EnvyCycleElimination);
  }
  doc["result"] = std::move(res);
  emit(out, doc);
  return kExitOk;
}

int cmd_check(const std::string& instance_path, const std::string& allocation_path,
              const std::string& criteria, std::ostream& out) {
  const Instance inst = load_valid_instance(instance_path);
  const Allocation alloc = load_allocation_file(allocation_path, inst);
  require_complete(inst, alloc);

  std::vector<Criterion> requested;
  const bool explicit_list = !criteria.empty();
  if (explicit_list) {
    for (const auto& name : split(criteria, ',')) {
      auto c = criterion_from_name(name);
      if (!c) throw ParseError("unknown criterion \"" + name + "\"");
      requested.push_back(*c);
    }
  } else {
    requested.assign(kAllCriteria.begin(), kAllCriteria.end());
  }

  Json doc = document_shell("check");
  Json names = Json::array();
  for (Criterion c : requested) names.push_back(criterion_name(c));
  doc["config"] = Json{{"criteria", std::move(names)}};
  doc["instance"] = instance_to_json(inst);
  doc["allocation"] = allocation_to_json(alloc, inst)["allocation"];

  bool any_fails = false;
  Json verdicts = Json::array();
  for (Criterion c : requested) {
    FairnessVerdict verdict{c, VerdictStatus::Skipped, std::nullopt};
    if (explicit_list || c != Criterion::MMS) {
      verdict = check_criterion(inst, alloc, c);  // explicit mms may throw CapacityError
    } else {
      try {
        verdict = check_criterion(inst, alloc, c);
      } catch (const CapacityError&) {
        // default criteria list: report the skip instead of failing
      }
    }
    if (verdict.status == VerdictStatus::Fails) any_fails = true;
    verdicts.push_back(verdict_to_json(verdict, inst));
  }
  doc["result"] = Json{{"verdicts", std::move(verdicts)}};
  emit(out, doc);
  return any_fails ? kExitViolation : kExitOk;
}

int cmd_mms(const std::string& instance_path, int agent_flag, std::ostream& out) {
  const Instance inst = load_valid_instance(instance_path);
  std::vector<int> agents;
  if (agent_flag > 0) {
    if (agent_flag > inst.num_agents()) {
      throw ParseError("agent " + std::to_string(agent_flag) + " out of range 1.." +
                       std::to_string(inst.num_agents()));
    }
    agents.push_back(agent_flag - 1);
  } else {
    for (int i = 0; i < inst.num_agents(); ++i) agents.push_back(i);
  }

  Json doc = document_shell("mms");
  doc["config"] = Json{{"agent", agent_flag > 0 ? Json(agent_flag) : Json(nullptr)}};
  doc["instance"] = instance_to_json(inst);
  Json shares = Json::array();
  for (int agent : agents) {
    const MmsShare share = mms_share(inst, agent);
    Json sj;
    sj["agent"] = agent + 1;
    sj["mu"] = share.mu.str();
    sj["partition"] = allocation_to_json(share.partition, inst)["allocation"];
    shares.push_back(std::move(sj));
  }
  doc["result"] = Json{{"shares", std::move(shares)}};
  emit(out, doc);
  return kExitOk;
}

int cmd_enumerate(const std::string& instance_path, const std::string& criterion,
                  std::ostream& out) {
  const Instance inst = load_valid_instance(instance_path);
  auto c = criterion_from_name(criterion);
  if (!c) throw ParseError("unknown criterion \"" + criterion + "\"");

  const auto fair = fair_set(inst, *c);
  Json doc = document_shell("enumerate");
  doc["config"] = Json{{"criterion", criterion_name(*c)}};
  doc["instance"] = instance_to_json(inst);
  Json allocations = Json::array();
  for (const auto& a : fair) allocations.push_back(allocation_to_json(a, inst)["allocation"]);
  doc["result"] = Json{{"count", fair.size()}, {"allocations", std::move(allocations)}};
  emit(out, doc);
  return kExitOk;
}

int cmd_manipulate(const std::string& instance_path, const std::string& mechanism, int agent_flag,
                   const std::string& grid_flag, const std::string& space_flag,
                   bool quantify_tie_breaks, std::uint64_t budget, const ConfigFlags& flags,
                   std::ostream& out) {
  const Instance inst = load_valid_instance(instance_path);
  const MechanismId id = mechanism_or_throw(mechanism);
  if (agent_flag < 1 || agent_flag > inst.num_agents()) {
    throw ParseError("--agent must be in 1.." + std::to_string(inst.num_agents()));
  }
  const int agent = agent_flag - 1;

  if (grid_flag.empty() == space_flag.empty()) {
    throw ParseError("exactly one of --grid and --space is required");
  }
  MisreportSpace space = ExplicitList{};
  Json space_echo;
  if (!grid_flag.empty()) {
    AdditiveGrid grid = parse_grid(grid_flag);
    space_echo = Json{{"kind", "grid"}, {"lo", grid.lo}, {"hi", grid.hi}, {"step", grid.step}};
    space = grid;
  } else {
    if (space_flag != "single-minded") {
      throw ParseError("--space supports only \"single-minded\"");
    }
    if (!is_single_minded(inst.valuations[agent])) {
      throw RestrictionError("--space single-minded needs a single-minded agent");
    }
    space_echo = Json{{"kind", "single-minded"}};
    space = SingleMindedSpace{std::get<SingleMindedValuation>(inst.valuations[agent]).payoff};
  }

  const MechanismConfig base_cfg = flags.resolve(inst);
  const SearchBudget search_budget{budget};

  std::vector<MechanismConfig> configs;
  if (quantify_tie_breaks) {
    if (id == MechanismId::GreedyRoundRobin || id == MechanismId::RSD) {
      for (GoodTieBreak tie : {GoodTieBreak::LowestIndex, GoodTieBreak::HighestIndex}) {
        MechanismConfig cfg = base_cfg;
        cfg.good_tie_break = tie;
        configs.push_back(cfg);
      }
    } else if (id == MechanismId::EnvyCycleElimination) {
      for (SourceTieBreak tie : {SourceTieBreak::LowestIndex, SourceTieBreak::HighestIndex,
                                 SourceTieBreak::LeastBundleValue}) {
        MechanismConfig cfg = base_cfg;
        cfg.source_tie_break = tie;
        configs.push_back(cfg);
      }
    } else {
      configs.push_back(base_cfg);  // sd reads no tie-breaks
    }
  } else {
    configs.push_back(base_cfg);
  }

  Json doc = document_shell("manipulate");
  doc["config"] = config_to_json(base_cfg, inst);
  doc["config"]["mechanism"] = mechanism_name(id);
  doc["config"]["agent"] = agent_flag;
  doc["config"]["space"] = std::move(space_echo);
  doc["config"]["budget"] = budget;
  doc["config"]["quantify_tie_breaks"] = quantify_tie_breaks;
  doc["instance"] = instance_to_json(inst);

  bool found = false;
  Json runs = Json::array();
  for (const auto& cfg : configs) {
    auto witness = best_misreport(id, inst, agent, space, cfg, search_budget);
    Json entry;
    entry["config"] = config_to_json(cfg, inst);
    if (witness) {
      found = true;
      entry["witness"] = manipulation_witness_to_json(*witness, inst);
    } else {
      entry["witness"] = nullptr;
      entry["note"] = "no profitable misreport in the searched space";
    }
    runs.push_back(std::move(entry));
  }
  Json res;
  res["manipulable"] = found;
  if (quantify_tie_breaks) {
    res["per_config"] = std::move(runs);
  } else {
    res["witness"] = runs[0]["witness"];
    if (runs[0].contains("note")) res["note"] = runs[0]["note"];
  }
  doc["result"] = std::move(res);
  emit(out, doc);
  return found ? kExitViolation : kExitOk;
}

int cmd_repro(const std::string& case_name, std::ostream& out, std::ostream& err) {
  const ReproResult result = run_repro_case(case_name);
  for (const auto& check : result.checks) {
    err << (check.pass ? "PASS" : "FAIL") << " " << check.name;
    if (!check.detail.empty()) err << " [" << check.detail << "]";
    err << "\n";
  }
  Json doc = document_shell("repro");
  doc["config"] = Json{{"case", result.case_name}};
  Json checks = Json::array();
  for (const auto& check : result.checks) {
    checks.push_back(Json{{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
  }
  doc["result"] = Json{{"checks", std::move(checks)}, {"all_pass", result.all_pass()}};
  emit(out, doc);
  return result.all_pass() ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact fair-division toolkit: fairness checkers, allocation mechanisms, "
               "manipulation search"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  std::string instance_path, allocation_path, mechanism, criteria, criterion;
  std::string grid_flag, space_flag, case_name;
  ConfigFlags alloc_flags, manip_flags;
  bool with_trace = false, quantify = false;
  int agent_flag = 0;
  std::uint64_t budget = 10'000'000;

  auto* allocate_cmd = app.add_subcommand("allocate", "run a mechanism on an instance");
  allocate_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  allocate_cmd->add_option("--mechanism", mechanism, "greedy-rr|envy-cycle|rsd|sd")->required();
  alloc_flags.attach(allocate_cmd);
  allocate_cmd->add_flag("--trace", with_trace, "include the step trace");

  auto* check_cmd = app.add_subcommand("check", "check fairness criteria of an allocation");
  check_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  check_cmd->add_option("--allocation", allocation_path, "allocation JSON file")->required();
  check_cmd->add_option("--criteria", criteria, "comma list of prop,ef,ef1,efx,mms (default all)");

  auto* mms_cmd = app.add_subcommand("mms", "exact maximin shares");
  mms_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  mms_cmd->add_option("--agent", agent_flag, "1-based agent (default: all)")
      ->check(CLI::PositiveNumber);

  auto* enum_cmd = app.add_subcommand("enumerate", "list all allocations meeting a criterion");
  enum_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  enum_cmd->add_option("--criterion", criterion, "prop|ef|ef1|efx|mms")->required();

  auto* manip_cmd = app.add_subcommand("manipulate", "search for a profitable misreport");
  manip_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  manip_cmd->add_option("--mechanism", mechanism, "greedy-rr|envy-cycle|rsd|sd")->required();
  manip_cmd->add_option("--agent", agent_flag, "1-based deviating agent")->required();
  manip_cmd->add_option("--grid", grid_flag, "integer report grid lo:hi:step");
  manip_cmd->add_option("--space", space_flag, "single-minded: all nonempty desired bundles");
  manip_cmd->add_option("--budget", budget, "mechanism-run budget (default 10^7)");
  manip_cmd->add_flag("--quantify-tie-breaks", quantify, "search every tie-break setting");
  manip_flags.attach(manip_cmd);

  auto* repro_cmd = app.add_subcommand("repro", "run a built-in verification case");
  std::string case_help = "one of:";
  for (const auto& name : repro_case_names()) case_help += " " + name;
  repro_cmd->add_option("--case", case_name, case_help)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    int code = app.exit(e, msg, msg);  // renders help or the error text
    (code == 0 ? out : err) << msg.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (allocate_cmd->parsed()) {
      return cmd_allocate(instance_path, mechanism, alloc_flags, with_trace, out);
    }
    if (check_cmd->parsed()) return cmd_check(instance_path, allocation_path, criteria, out);
    if (mms_cmd->parsed()) return cmd_mms(instance_path, agent_flag, out);
    if (enum_cmd->parsed()) return cmd_enumerate(instance_path, criterion, out);
    if (manip_cmd->parsed()) {
      return cmd_manipulate(instance_path, mechanism, agent_flag, grid_flag, space_flag, quantify,
                            budget, manip_flags, out);
    }
    if (repro_cmd->parsed()) return cmd_repro(case_name, out, err);
    err << "no command given\n";
    return kExitInput;
  } catch (const RestrictionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRestriction;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace fairdiv
