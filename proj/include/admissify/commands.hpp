#pragma once

#include "admissify/net.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace admissify {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int step_limit = 2;
inline constexpr int unsatisfiable = 3;
inline constexpr int counterexample = 4;
inline constexpr int inconclusive = 5;
}  // namespace exit_code

/// Per-place universe bounds from "N" or "p=N,..." (a bare N sets the default
/// for unlisted places). Throws Error if some place is left without a bound.
std::vector<Tokens> parse_bounds(const std::string& text, const PetriNet& net);

/// `transform` subcommand; `args` excludes the program and subcommand names.
int cmd_transform(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `verify` subcommand.
int cmd_verify(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dispatches on args[0] ("transform" or "verify").
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace admissify
