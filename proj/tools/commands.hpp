#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "pinctl/criteria.hpp"
#include "pinctl/perturbation.hpp"
#include "pinctl/selection.hpp"

namespace pinctl::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,         // parse or validation failure
  kExitUndefined = 3,     // a requested quantity is undefined for these inputs
  kExitNumerical = 4,     // solver failure
};

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const StructuralCheck& s);
nlohmann::json to_json(const ExactCheck& e);
nlohmann::json to_json(const CriterionReport& r);
nlohmann::json to_json(const SelectionResult& r);

/// Entry point shared by the executable and the tests. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinctl::cli
