#pragma once

// Command-line driver: sieve, verify <identity>, figure <fig1|fig2>, scan.

#include <ostream>
#include <string>
#include <vector>

namespace ah {

/// Runs the CLI on args (without the program name). Returns the process exit
/// code: 0 pass, 1 fail, 2 usage error, 3 heuristic-only passes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `verify`, in registration order.
std::vector<std::string> registered_identities();

}  // namespace ah
