#include "ufc/cli/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace ufc::cli {

namespace {

constexpr std::array<std::pair<std::string_view, Command::Kind>, 12> kCommands{{
    {"def", Command::Kind::Def},
    {"divides", Command::Kind::Divides},
    {"widemid", Command::Kind::Widemid},
    {"leftdiv", Command::Kind::Leftdiv},
    {"prodmember", Command::Kind::Prodmember},
    {"relext", Command::Kind::Relext},
    {"fip", Command::Kind::Fip},
    {"pattern", Command::Kind::Pattern},
    {"primecheck", Command::Kind::Primecheck},
    {"irred", Command::Kind::Irred},
    {"oracle", Command::Kind::Oracle},
    {"normalize", Command::Kind::Normalize},
}};

constexpr std::array<std::string_view, 8> kReserved{"N", "P", "up", "prog", "inf", "filter", "lcmchain", "tailchain"};

bool reserved(std::string_view w) { return std::find(kReserved.begin(), kReserved.end(), w) != kReserved.end(); }

struct Token {
    enum class Kind { Nat, MultN, Word, Flag, Sym, End };
    Kind kind = Kind::End;
    std::string text;
    Nat value = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
};

std::string describe(const Token& t) {
    if (t.kind == Token::Kind::End) return "end of input";
    return "'" + t.text + "'";
}

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(std::string_view src, std::size_t line) : src_(src.substr(0, std::min(src.find('#'), src.size()))), line_(line) {}

    bool at_end() { return peek().kind == Token::Kind::End; }

    Command command() {
        const Token t = next();
        Command c;
        c.pos = pos(t);
        const auto it = std::find_if(kCommands.begin(), kCommands.end(), [&](const auto& kv) { return kv.first == t.text; });
        if (t.kind != Token::Kind::Word || it == kCommands.end()) {
            std::vector<std::string> names;
            for (const auto& kv : kCommands) names.emplace_back(kv.first);
            fail(t, std::move(names));
        }
        c.kind = it->second;
        switch (c.kind) {
            case Command::Kind::Def: {
                const Token name = next();
                if (name.kind != Token::Kind::Word || reserved(name.text)) fail(name, {"identifier"});
                c.name = name.text;
                expect_sym('=');
                const Token rhs = peek();
                if (rhs.kind == Token::Kind::Word && rhs.text == "filter") {
                    c.points.push_back(point());
                } else if (rhs.kind == Token::Kind::Nat && peek_after(rhs).kind == Token::Kind::End) {
                    c.points.push_back(point());
                } else {
                    c.set = set_union();
                }
                break;
            }
            case Command::Kind::Divides:
                c.number = nat();
                c.points.push_back(point());
                break;
            case Command::Kind::Widemid:
            case Command::Kind::Leftdiv:
                c.points.push_back(point());
                c.points.push_back(point());
                break;
            case Command::Kind::Prodmember:
                c.set = set_union();
                c.points.push_back(point());
                c.points.push_back(point());
                break;
            case Command::Kind::Relext:
                c.word = raw_word("relation (div, leq, ker:<k>, table:<file>)");
                c.points.push_back(point());
                c.points.push_back(point());
                break;
            case Command::Kind::Fip:
            case Command::Kind::Irred: c.points.push_back(point()); break;
            case Command::Kind::Pattern:
                c.word = raw_word("file");
                c.number = nat();
                break;
            case Command::Kind::Primecheck:
                c.number = nat();
                c.points.push_back(point());
                c.points.push_back(point());
                break;
            case Command::Kind::Oracle: {
                c.set = set_union();
                const Token f = peek();
                if (f.kind == Token::Kind::Flag) {
                    if (f.text != "--bound") fail(f, {"--bound", "end of input"});
                    next();
                    c.bound = nat();
                }
                break;
            }
            case Command::Kind::Normalize: c.set = set_union(); break;
        }
        finish();
        return c;
    }

    void finish() {
        const Token end = peek();
        if (end.kind != Token::Kind::End) fail(end, {"end of input"});
    }

    SetNode set_union() {
        SetNode left = set_inter();
        while (peek_sym('|')) {
            const Token op = next();
            SetNode n{SetNode::Kind::Or, 0, 0, {}, {std::move(left), set_inter()}, {}, pos(op)};
            left = std::move(n);
        }
        return left;
    }

private:
    SetNode set_inter() {
        SetNode left = set_unary();
        while (peek_sym('&')) {
            const Token op = next();
            SetNode n{SetNode::Kind::And, 0, 0, {}, {std::move(left), set_unary()}, {}, pos(op)};
            left = std::move(n);
        }
        return left;
    }

    SetNode set_unary() {
        if (peek_sym('!')) {
            const Token op = next();
            return {SetNode::Kind::Not, 0, 0, {}, {set_unary()}, {}, pos(op)};
        }
        const Token t = peek();
        if (t.kind == Token::Kind::Nat) {
            next();
            const Token star = peek();
            if (star.kind != Token::Kind::Sym || star.text != "*") fail(star, {"*"});
            next();
            return {SetNode::Kind::Scale, t.value, 0, {}, {set_unary()}, {}, pos(t)};
        }
        return set_postfix();
    }

    SetNode set_postfix() {
        SetNode e = set_primary();
        while (peek_sym('/')) {
            const Token op = next();
            SetNode n{SetNode::Kind::Quotient, nat(), 0, {}, {std::move(e)}, {}, pos(op)};
            e = std::move(n);
        }
        return e;
    }

    SetNode set_primary() {
        const Token t = next();
        const Pos p = pos(t);
        switch (t.kind) {
            case Token::Kind::MultN: return {SetNode::Kind::Multiples, t.value, 0, {}, {}, {}, p};
            case Token::Kind::Word:
                if (t.text == "N") return {SetNode::Kind::AllN, 0, 0, {}, {}, {}, p};
                if (t.text == "P") return {SetNode::Kind::Primes, 0, 0, {}, {}, {}, p};
                if (t.text == "up") {
                    expect_sym('(');
                    SetNode inner = set_union();
                    expect_sym(')');
                    return {SetNode::Kind::Up, 0, 0, {}, {std::move(inner)}, {}, p};
                }
                if (t.text == "prog") {
                    expect_sym('(');
                    const Nat a = nat();
                    expect_sym(',');
                    const Nat m = nat();
                    expect_sym(')');
                    return {SetNode::Kind::Prog, a, m, {}, {}, {}, p};
                }
                if (!reserved(t.text)) return {SetNode::Kind::Name, 0, 0, {}, {}, t.text, p};
                break;
            case Token::Kind::Sym:
                if (t.text == "(") {
                    SetNode inner = set_union();
                    expect_sym(')');
                    return inner;
                }
                if (t.text == "{") {
                    SetNode s{SetNode::Kind::Finite, 0, 0, {}, {}, {}, p};
                    if (peek_sym('}')) {
                        next();
                        return s;
                    }
                    s.elems.push_back(nat());
                    while (peek_sym(',')) {
                        next();
                        s.elems.push_back(nat());
                    }
                    expect_sym('}');
                    return s;
                }
                if (t.text == "[") {
                    const Nat k = nat();
                    expect_sym(',');
                    const Token inf = next();
                    if (inf.kind != Token::Kind::Word || inf.text != "inf") fail(inf, {"inf"});
                    expect_sym(')');
                    return {SetNode::Kind::Tail, k, 0, {}, {}, {}, p};
                }
                break;
            default: break;
        }
        fail(t, {"N", "<k>N", "P", "{", "[", "(", "!", "<k> *", "up", "prog", "identifier"});
    }

    PointNode point() {
        const Token t = next();
        PointNode pt;
        pt.pos = pos(t);
        if (t.kind == Token::Kind::Nat) {
            pt.kind = PointNode::Kind::Principal;
            pt.n = t.value;
            return pt;
        }
        if (t.kind == Token::Kind::Word && t.text == "filter") {
            pt.kind = PointNode::Kind::Filter;
            pt.filter = filter_body(pt.pos);
            return pt;
        }
        if (t.kind == Token::Kind::Word && !reserved(t.text)) {
            pt.kind = PointNode::Kind::Name;
            pt.name = t.text;
            return pt;
        }
        fail(t, {"<n>", "identifier", "filter"});
    }

    FilterNode filter_body(Pos p) {
        FilterNode f;
        f.pos = p;
        expect_sym('(');
        if (peek_sym(')')) {
            next();
            return f;
        }
        for (;;) {
            const Token t = peek();
            if (t.kind == Token::Kind::Word && t.text == "lcmchain") {
                next();
                f.lcm_chain = true;
            } else if (t.kind == Token::Kind::Word && t.text == "tailchain") {
                next();
                f.tail_chain = true;
            } else {
                f.gens.push_back(set_union());
            }
            const Token sep = next();
            if (sep.kind == Token::Kind::Sym && sep.text == ")") return f;
            if (sep.kind != Token::Kind::Sym || sep.text != ",") fail(sep, {",", ")"});
        }
    }

    Nat nat() {
        const Token t = next();
        if (t.kind != Token::Kind::Nat) fail(t, {"<n>"});
        return t.value;
    }

    std::string raw_word(const std::string& what) {
        skip_space();
        const std::size_t b = i_;
        while (i_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        if (b == i_) fail(lex(b), {what});
        return std::string(src_.substr(b, i_ - b));
    }

    void expect_sym(char c) {
        const Token t = next();
        if (t.kind != Token::Kind::Sym || t.text[0] != c) fail(t, {std::string(1, c)});
    }

    bool peek_sym(char c) {
        const Token t = peek();
        return t.kind == Token::Kind::Sym && t.text[0] == c;
    }

    [[noreturn]] void fail(const Token& t, std::vector<std::string> expected) {
        throw ParseError(pos(t), std::move(expected), describe(t));
    }

    Pos pos(const Token& t) const { return {line_, t.begin + 1}; }

    void skip_space() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    }

    Token peek() {
        skip_space();
        return lex(i_);
    }

    Token peek_after(const Token& t) {
        std::size_t j = t.end;
        while (j < src_.size() && std::isspace(static_cast<unsigned char>(src_[j]))) ++j;
        return lex(j);
    }

    Token next() {
        Token t = peek();
        i_ = t.end;
        return t;
    }

    Token lex(std::size_t at) {
        Token t;
        t.begin = at;
        if (at >= src_.size()) {
            t.end = at;
            return t;
        }
        const char c = src_[at];
        std::size_t j = at;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Nat v = 0;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
                const auto next = checked_add(v * 10, static_cast<Nat>(src_[j] - '0'));
                if (v > UINT64_MAX / 10 || !next) {
                    t.end = j;
                    t.text = std::string(src_.substr(at, j - at));
                    throw ParseError({line_, at + 1}, {"<n> below 2^64"}, "'" + t.text + "...'");
                }
                v = *next;
                ++j;
            }
            t.value = v;
            if (j < src_.size() && src_[j] == 'N' && (j + 1 >= src_.size() || !word_char(src_[j + 1]))) {
                t.kind = Token::Kind::MultN;
                ++j;
            } else {
                t.kind = Token::Kind::Nat;
            }
        } else if (word_start(c)) {
            while (j < src_.size() && word_char(src_[j])) ++j;
            t.kind = Token::Kind::Word;
        } else if (c == '-' && at + 1 < src_.size() && src_[at + 1] == '-') {
            j += 2;
            while (j < src_.size() && (word_char(src_[j]) || src_[j] == '-')) ++j;
            t.kind = Token::Kind::Flag;
        } else if (std::string_view("(){}[],=!&|/*").find(c) != std::string_view::npos) {
            j = at + 1;
            t.kind = Token::Kind::Sym;
        } else {
            t.end = at + 1;
            t.text = std::string(1, c);
            throw ParseError({line_, at + 1}, {"a token"}, "'" + t.text + "'");
        }
        t.end = j;
        t.text = std::string(src_.substr(at, j - at));
        return t;
    }

    std::string_view src_;
    std::size_t line_;
    std::size_t i_ = 0;
};

std::string format_error(Pos pos, const std::vector<std::string>& expected, const std::string& found) {
    std::ostringstream os;
    os << "line " << pos.line << ", column " << pos.column << ": expected ";
    if (expected.size() == 1) {
        os << expected[0];
    } else {
        os << "one of ";
        for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? " " : "") << expected[i];
    }
    os << ", found " << found;
    return os.str();
}

}  // namespace

std::string_view command_name(Command::Kind k) {
    for (const auto& kv : kCommands)
        if (kv.second == k) return kv.first;
    return "?";
}

ParseError::ParseError(Pos pos, std::vector<std::string> expected, std::string found)
    : std::runtime_error(format_error(pos, expected, found)), pos_(pos), expected_(std::move(expected)), found_(std::move(found)) {}

std::optional<Command> parse_command(std::string_view text, std::size_t line) {
    Parser p(text, line);
    if (p.at_end()) return std::nullopt;
    return p.command();
}

SetNode parse_set(std::string_view text, std::size_t line) {
    Parser p(text, line);
    SetNode e = p.set_union();
    p.finish();
    return e;
}

}  // namespace ufc::cli
