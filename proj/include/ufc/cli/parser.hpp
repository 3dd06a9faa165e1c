#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ufc/setalg/nat.hpp"

namespace ufc::cli {

struct Pos {
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Set expression with unresolved names.
struct SetNode {
    enum class Kind { AllN, Multiples, Finite, Primes, Tail, Prog, Not, And, Or, Quotient, Scale, Up, Name };
    Kind kind = Kind::AllN;
    Nat a = 0;
    Nat b = 0;
    std::vector<Nat> elems;
    std::vector<SetNode> kids;
    std::string name;
    Pos pos;
};

struct FilterNode {
    std::vector<SetNode> gens;
    bool lcm_chain = false;
    bool tail_chain = false;
    Pos pos;
};

/// A bare integer (principal), a bound name, or an inline filter.
struct PointNode {
    enum class Kind { Principal, Name, Filter };
    Kind kind = Kind::Principal;
    Nat n = 0;
    std::string name;
    std::optional<FilterNode> filter;
    Pos pos;
};

struct Command {
    enum class Kind { Def, Divides, Widemid, Leftdiv, Prodmember, Relext, Fip, Pattern, Primecheck, Irred, Oracle, Normalize };
    Kind kind = Kind::Def;
    Pos pos;
    /// def: the bound name.
    std::string name;
    /// def of a set, prodmember, oracle, normalize.
    std::optional<SetNode> set;
    /// In command order. def of a point uses points[0].
    std::vector<PointNode> points;
    /// divides and primecheck: n; pattern: the bound.
    Nat number = 0;
    /// relext: the relation; pattern: the file.
    std::string word;
    /// oracle --bound.
    std::optional<Nat> bound;
};

std::string_view command_name(Command::Kind k);

class ParseError : public std::runtime_error {
public:
    ParseError(Pos pos, std::vector<std::string> expected, std::string found);

    Pos pos() const noexcept { return pos_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    Pos pos_;
    std::vector<std::string> expected_;
    std::string found_;
};

/// One command. Text after '#' is ignored. Returns nullopt for blank lines.
std::optional<Command> parse_command(std::string_view text, std::size_t line = 1);

/// A set expression alone, as in pattern files.
SetNode parse_set(std::string_view text, std::size_t line = 1);

}  // namespace ufc::cli
