#pragma once

#include <string>
#include <vector>

namespace fairdiv {

struct ReproCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // observed values for the log
};

struct ReproResult {
  std::string case_name;
  std::vector<ReproCheck> checks;
  bool all_pass() const;
};

// Built-in verification cases over the embedded fixture instances and seeded
// random families. Throws ParseError for unknown names.
ReproResult run_repro_case(const std::string& case_name);

const std::vector<std::string>& repro_case_names();

}  // namespace fairdiv
