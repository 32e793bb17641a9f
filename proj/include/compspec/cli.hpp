#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compspec::cli {

// Runs one command line. Reports (or an {"error": ...} object) go to `out`
// unless --output names a file. Returns the process exit code:
// 0 success, 1 usage or parse error, 2 domain rejection, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compspec::cli
