#pragma once

#include "admissify/constraint.hpp"
#include "admissify/net.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace admissify {

/// Syntax error in a net file or inline constraint; line is 1-based (0 for inline text).
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

struct NamedConstraint {
    std::string name;
    LinearConstraint constraint;
};

struct NetFile {
    PetriNet net;
    std::vector<NamedConstraint> constraints;

    const LinearConstraint* find_constraint(std::string_view name) const;
};

/// Line-oriented format, '#' starts a comment:
///   net <id>
///   place <id> [init=<n>]
///   trans <id> ctrl|unctrl
///   arc <id> -> <id> [weight=<n>]
///   constraint <name>: <c> <p> [+ <c> <p>]* <= <k>
/// A coefficient may be omitted ("p1 + 2 p2 <= 3"). Structural problems are
/// reported as NetError by PetriNet::build.
NetFile parse_net(std::string_view text);
NetFile load_net_file(const std::filesystem::path& path);

/// "<c> <p> + ... <= <k>" against the places of `net`.
LinearConstraint parse_constraint(std::string_view text, const PetriNet& net);

/// Canonical text; parse_net(render_net(f)) describes the same net.
std::string render_net(const NetFile& file);

}  // namespace admissify
