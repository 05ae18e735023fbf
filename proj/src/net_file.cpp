#include "admissify/net_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace admissify {

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

const LinearConstraint* NetFile::find_constraint(std::string_view name) const {
    for (const auto& c : constraints) {
        if (c.name == name) return &c.constraint;
    }
    return nullptr;
}

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    });
}

std::optional<Tokens> parse_count(std::string_view s) {
    Tokens v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) return std::nullopt;
    return v;
}

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

// Splits "2p1+p2<=3" style text into numbers, identifiers, "+" and "<=".
std::vector<std::string> lex_constraint(std::string_view text, std::size_t line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '+') {
            out.emplace_back("+");
            ++i;
        } else if (text.substr(i, 2) == "<=") {
            out.emplace_back("<=");
            i += 2;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            out.emplace_back(text.substr(start, i - start));
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = i;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                                       text[i] == '.' || text[i] == '-')) {
                ++i;
            }
            out.emplace_back(text.substr(start, i - start));
        } else {
            throw ParseError(line, std::string("unexpected character '") + c + "' in constraint");
        }
    }
    return out;
}

LinearConstraint parse_constraint_at(std::string_view text, const PetriNet& net, std::size_t line) {
    const auto tokens = lex_constraint(text, line);
    std::vector<Tokens> weights(net.place_count(), 0);
    std::size_t i = 0;
    auto at = [&](std::size_t k) -> std::string_view { return k < tokens.size() ? tokens[k] : std::string_view{}; };
    bool expect_term = true;
    while (true) {
        if (!expect_term) {
            if (at(i) == "+") {
                ++i;
                expect_term = true;
                continue;
            }
            break;
        }
        Tokens coefficient = 1;
        if (const auto n = parse_count(at(i))) {
            coefficient = *n;
            ++i;
        }
        const std::string_view place = at(i);
        if (!is_identifier(place)) {
            throw ParseError(line, "expected a place name in constraint, got '" + std::string(place) + "'");
        }
        const auto p = net.find_place(std::string(place));
        if (!p) throw ParseError(line, "unknown place '" + std::string(place) + "' in constraint");
        weights[*p] += coefficient;
        ++i;
        expect_term = false;
    }
    if (at(i) != "<=") throw ParseError(line, "expected '<=' in constraint");
    ++i;
    const auto bound = parse_count(at(i));
    if (!bound) throw ParseError(line, "expected a nonnegative integer bound after '<='");
    if (i + 1 != tokens.size()) throw ParseError(line, "unexpected text after constraint bound");
    return LinearConstraint(std::move(weights), *bound);
}

struct PendingConstraint {
    std::size_t line;
    std::string name;
    std::string body;
};

}  // namespace

LinearConstraint parse_constraint(std::string_view text, const PetriNet& net) {
    return parse_constraint_at(text, net, 0);
}

NetFile parse_net(std::string_view text) {
    NetDescription desc;
    std::vector<PendingConstraint> pending;
    bool named = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto words = split_words(line);
        if (words.empty()) continue;

        const std::string_view kw = words[0];
        auto need_id = [&](std::size_t k, const char* what) {
            if (k >= words.size() || !is_identifier(words[k])) {
                throw ParseError(line_no, std::string("expected ") + what + " identifier");
            }
            return std::string(words[k]);
        };

        if (kw == "net") {
            if (named) throw ParseError(line_no, "duplicate 'net' line");
            desc.name = need_id(1, "net");
            if (words.size() != 2) throw ParseError(line_no, "unexpected text after net name");
            named = true;
        } else if (kw == "place") {
            PlaceDecl p{need_id(1, "place"), 0};
            for (std::size_t k = 2; k < words.size(); ++k) {
                if (words[k].starts_with("init=") && k == 2) {
                    const auto v = parse_count(words[k].substr(5));
                    if (!v) throw ParseError(line_no, "init= expects a nonnegative integer");
                    p.initial = *v;
                } else {
                    throw ParseError(line_no, "unexpected '" + std::string(words[k]) + "' in place declaration");
                }
            }
            desc.places.push_back(std::move(p));
        } else if (kw == "trans") {
            TransitionDecl t{need_id(1, "transition"), Controllability::Uncontrollable};
            if (words.size() != 3) throw ParseError(line_no, "expected 'trans <id> ctrl|unctrl'");
            if (words[2] == "ctrl") {
                t.control = Controllability::Controllable;
            } else if (words[2] != "unctrl") {
                throw ParseError(line_no, "transition kind must be 'ctrl' or 'unctrl', got '" +
                                              std::string(words[2]) + "'");
            }
            desc.transitions.push_back(std::move(t));
        } else if (kw == "arc") {
            ArcDecl a{need_id(1, "arc source"), {}, 1};
            if (words.size() < 4 || words[2] != "->") throw ParseError(line_no, "expected 'arc <id> -> <id>'");
            a.to = need_id(3, "arc target");
            if (words.size() == 5 && words[4].starts_with("weight=")) {
                const auto v = parse_count(words[4].substr(7));
                if (!v) throw ParseError(line_no, "weight= expects a nonnegative integer");
                a.weight = *v;
            } else if (words.size() != 4) {
                throw ParseError(line_no, "unexpected text after arc");
            }
            desc.arcs.push_back(std::move(a));
        } else if (kw == "constraint") {
            const std::string_view rest = line.substr(line.find("constraint") + 10);
            const auto colon = rest.find(':');
            if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'constraint <name>: ...'");
            const auto name_words = split_words(rest.substr(0, colon));
            if (name_words.size() != 1 || !is_identifier(name_words[0])) {
                throw ParseError(line_no, "expected a constraint name before ':'");
            }
            const std::string name(name_words[0]);
            for (const auto& c : pending) {
                if (c.name == name) throw ParseError(line_no, "duplicate constraint name '" + name + "'");
            }
            pending.push_back({line_no, name, std::string(rest.substr(colon + 1))});
        } else {
            throw ParseError(line_no, "unknown keyword '" + std::string(kw) + "'");
        }
    }

    NetFile file{PetriNet::build(desc), {}};
    for (const auto& c : pending) {
        file.constraints.push_back({c.name, parse_constraint_at(c.body, file.net, c.line)});
    }
    return file;
}

NetFile load_net_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open net file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_net(buffer.str());
}

std::string render_net(const NetFile& file) {
    const NetDescription& d = file.net.description();
    std::ostringstream out;
    if (!d.name.empty()) out << "net " << d.name << "\n";
    for (const auto& p : d.places) {
        out << "place " << p.id;
        if (p.initial != 0) out << " init=" << p.initial;
        out << "\n";
    }
    for (const auto& t : d.transitions) {
        out << "trans " << t.id << (t.control == Controllability::Controllable ? " ctrl" : " unctrl") << "\n";
    }
    for (const auto& a : d.arcs) out << "arc " << a.from << " -> " << a.to << "\n";
    for (const auto& c : file.constraints) {
        out << "constraint " << c.name << ":";
        bool first = true;
        for (PlaceIndex p = 0; p < c.constraint.dimension(); ++p) {
            if (c.constraint.weight(p) == 0) continue;
            out << (first ? " " : " + ") << c.constraint.weight(p) << " " << file.net.place_name(p);
            first = false;
        }
        if (first) out << " 0 " << file.net.place_name(0);
        out << " <= " << c.constraint.bound() << "\n";
    }
    return out.str();
}

}  // namespace admissify
