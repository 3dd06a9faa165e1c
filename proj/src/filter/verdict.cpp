#include "ufc/filter/verdict.hpp"

#include <algorithm>

namespace ufc {

bool Proof::lhs_contains(Nat n) const {
    if (!lhs.contains(n)) return false;
    if (!chain_depth) return true;
    return std::all_of(chains.begin(), chains.end(), [&](const Chain& c) { return c.element_contains(*chain_depth, n); });
}

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Entailed: return "entailed";
        case Outcome::Refuted: return "refuted";
        case Outcome::Unknown: return "unknown";
    }
    return "unknown";
}

Verdict negate(Verdict v) {
    if (v.outcome == Outcome::Entailed)
        v.outcome = Outcome::Refuted;
    else if (v.outcome == Outcome::Refuted)
        v.outcome = Outcome::Entailed;
    return v;
}

Outcome conjunction(Outcome a, Outcome b) {
    if (a == Outcome::Refuted || b == Outcome::Refuted) return Outcome::Refuted;
    if (a == Outcome::Entailed && b == Outcome::Entailed) return Outcome::Entailed;
    return Outcome::Unknown;
}

Outcome disjunction(Outcome a, Outcome b) {
    if (a == Outcome::Entailed || b == Outcome::Entailed) return Outcome::Entailed;
    if (a == Outcome::Refuted && b == Outcome::Refuted) return Outcome::Refuted;
    return Outcome::Unknown;
}

}  // namespace ufc
