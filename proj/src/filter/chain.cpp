#include "ufc/filter/chain.hpp"

namespace ufc {

Nat lcm_prefix_saturated(Nat k) {
    Nat l = 1;
    for (Nat i = 2; i <= k; ++i) {
        const auto next = checked_lcm(l, i);
        if (!next) return UINT64_MAX;
        l = *next;
    }
    return l;
}

Chain Chain::lcm() {
    Chain c;
    c.kind_ = Kind::Lcm;
    c.name_ = "lcmchain";
    return c;
}

Chain Chain::tail() {
    Chain c;
    c.kind_ = Kind::Tail;
    c.name_ = "tailchain";
    return c;
}

Chain Chain::custom(std::string name, Rule rule, Nat prefix) {
    if (!rule) throw PreconditionError("custom chain needs a rule");
    Chain c;
    c.kind_ = Kind::Custom;
    c.name_ = std::move(name);
    c.rule_ = std::move(rule);
    for (Nat k = 1; k < prefix; ++k) {
        const SetExpr cur = c.rule_(k);
        const SetExpr next = c.rule_(k + 1);
        const SetBounds a = evaluate(cur);
        const SetBounds b = evaluate(next);
        if (a.is_exact() && b.is_exact()) {
            if (!b.lower.subset_of(a.lower))
                throw PreconditionError("custom chain " + c.name_ + " is not descending at depth " + std::to_string(k));
            continue;
        }
        for (Nat n = 1; n <= 2000; ++n)
            if (next.member(n) && !cur.member(n))
                throw PreconditionError("custom chain " + c.name_ + " is not descending at depth " +
                                        std::to_string(k) + " (element " + std::to_string(n) + ")");
    }
    return c;
}

SetExpr Chain::element(Nat k) const {
    if (k == 0) throw PreconditionError("chain depth starts at 1");
    switch (kind_) {
        case Kind::Lcm: {
            const Nat l = lcm_prefix_saturated(k);
            if (l == UINT64_MAX) throw CapacityError("lcm(1.." + std::to_string(k) + ") exceeds 64 bits");
            return SetExpr::multiples(l);
        }
        case Kind::Tail: return SetExpr::tail(k);
        case Kind::Custom: return rule_(k);
    }
    return SetExpr::all();
}

bool Chain::element_contains(Nat k, Nat n) const {
    switch (kind_) {
        case Kind::Lcm: {
            const Nat l = lcm_prefix_saturated(k);
            return l != UINT64_MAX && n % l == 0;
        }
        case Kind::Tail: return n >= k;
        case Kind::Custom: return element(k).member(n);
    }
    return false;
}

SetBounds Chain::element_bounds(Nat k) const {
    try {
        return evaluate(element(k));
    } catch (const CapacityError&) {
        return SetBounds::unknown();
    }
}

}  // namespace ufc
