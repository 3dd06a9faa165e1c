#include "ufc/setalg/render.hpp"

#include <algorithm>
#include <sstream>

namespace ufc {

namespace {

std::string braces(const std::vector<Nat>& xs) { return "{" + join_nats(xs) + "}"; }

std::string multiple_term(Nat g) { return g == 1 ? "N" : std::to_string(g) + "N"; }

std::string join_terms(const std::vector<std::string>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i != 0) out += " | ";
        out += terms[i];
    }
    return out;
}

// Membership of residue r depends only on gcd(r, m).
bool gcd_determined(const BitVector& bits, Nat m) {
    for (Nat r = 0; r < m; ++r)
        if (bits.test(r) != bits.test(gcd(r, m) % m)) return false;
    return true;
}

// Divisors g of m with residue g (mod m) set, closed upward within the divisor lattice.
std::vector<Nat> minimal_divisors(const BitVector& bits, Nat m, bool* up_closed) {
    const auto divs = divisors(m);
    std::vector<Nat> in;
    for (Nat g : divs)
        if (bits.test(g % m)) in.push_back(g);
    std::vector<Nat> mins;
    for (Nat g : in)
        if (std::none_of(mins.begin(), mins.end(), [&](Nat d) { return g % d == 0; })) mins.push_back(g);
    *up_closed = true;
    for (Nat g : divs) {
        const bool covered = std::any_of(mins.begin(), mins.end(), [&](Nat d) { return g % d == 0; });
        if (covered != bits.test(g % m)) *up_closed = false;
    }
    return mins;
}

std::string union_of_multiples(const std::vector<Nat>& gs) {
    std::vector<std::string> terms;
    for (Nat g : gs) terms.push_back(multiple_term(g));
    return join_terms(terms);
}

std::string wrap(const std::string& s) {
    return s.find(' ') == std::string::npos ? s : "(" + s + ")";
}

// Divisibility form of a gcd-determined pattern, if one exists with at most
// one difference.
std::optional<std::string> divisibility_form(const BitVector& bits, Nat m) {
    if (!gcd_determined(bits, m)) return std::nullopt;
    bool closed = false;
    const auto mins = minimal_divisors(bits, m, &closed);
    if (closed) return union_of_multiples(mins);

    BitVector comp = ~bits;
    bool comp_closed = false;
    const auto comp_mins = minimal_divisors(comp, m, &comp_closed);
    if (comp_closed) return "!" + wrap(union_of_multiples(comp_mins));

    // bits = up(mins) \ up(extra) where extra are the minimal unset divisors above mins.
    BitVector upper(m);
    for (Nat r = 0; r < m; ++r)
        if (std::any_of(mins.begin(), mins.end(), [&](Nat d) { return gcd(r, m) % d == 0; })) upper.set(r);
    BitVector hole = upper;
    hole.and_not(bits);
    bool hole_closed = false;
    const auto hole_mins = minimal_divisors(hole, m, &hole_closed);
    BitVector check = upper;
    for (Nat r = 0; r < m; ++r)
        if (std::any_of(hole_mins.begin(), hole_mins.end(), [&](Nat d) { return gcd(r, m) % d == 0; })) check.reset(r);
    if (!(check == bits)) return std::nullopt;
    return wrap(union_of_multiples(mins)) + " & !" + wrap(union_of_multiples(hole_mins));
}

std::string progression_term(Nat r, Nat m) { return "prog(" + std::to_string(r == 0 ? m : r) + "," + std::to_string(m) + ")"; }

std::string pattern_text(const PeriodicSet& s) {
    const Nat m = s.modulus();
    const BitVector& bits = s.residues();
    if (bits.none()) return "";
    if (m == 1) return "N";
    if (auto form = divisibility_form(bits, m)) return *form;
    const std::size_t count = bits.count();
    const bool invert = count * 2 > m;
    std::vector<std::string> terms;
    for (Nat r = 0; r < m; ++r)
        if (bits.test(r) != invert) terms.push_back(progression_term(r, m));
    const std::string body = join_terms(terms);
    return invert ? "!" + wrap(body) : body;
}

}  // namespace

std::string render(const PeriodicSet& s) {
    if (s.empty()) return "!N";
    if (s.is_finite()) return braces(s.added());
    const auto& removed = s.removed();
    if (s.modulus() == 1 && s.added().empty() && !removed.empty() && removed.back() == removed.size()) {
        return "[" + std::to_string(removed.size() + 1) + ",inf)";
    }
    std::string out = pattern_text(s);
    if (!removed.empty()) out = wrap(out) + " & !" + braces(removed);
    if (!s.added().empty()) {
        if (out.find(" | ") != std::string::npos && removed.empty()) out = "(" + out + ")";
        out += " | " + braces(s.added());
    }
    return out;
}

std::string render(const SplitSet& s) {
    if (const auto& p = s.as_periodic()) return render(*p);
    std::vector<std::string> parts;
    const PeriodicSet& on = s.on_primes();
    const PeriodicSet& off = s.off_primes();
    if (on.is_all())
        parts.push_back("P");
    else if (!on.empty())
        parts.push_back("(P & " + wrap(render(on)) + ")");
    if (off.is_finite() && !off.empty())
        parts.push_back(braces(off.added()));
    else if (!off.empty())
        parts.push_back("(!P & " + wrap(render(off)) + ")");
    return join_terms(parts);
}

std::string render(const SetBounds& b) {
    if (b.is_exact()) return render(b.lower);
    return "[" + render(b.lower) + " .. " + render(b.upper) + "]";
}

}  // namespace ufc
