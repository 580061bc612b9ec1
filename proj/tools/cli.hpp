#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace treecover::cli {

enum ExitCode { kOk = 0, kUsage = 1, kInvariant = 2, kConstruction = 3 };

// Runs one sub-command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treecover::cli
