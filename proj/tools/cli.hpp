#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dgper::cli {

/// Runs one driver invocation. Returns the process exit code:
/// 0 success, 1 domain error (the owning error name is reported), 2 usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dgper::cli
