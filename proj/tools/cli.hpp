#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shrinker::cli {

/// Runs one command (arguments without the program name). The report goes to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 when a check fails and
/// 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shrinker::cli
