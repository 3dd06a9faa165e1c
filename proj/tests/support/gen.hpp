#pragma once

// Generators shared by property tests: random rules from brute.hpp rendered
// as expressions, so the library sees only syntax and the oracle only rules.

#include <algorithm>
#include <map>
#include <random>

#include "brute.hpp"
#include "ufc/filter/filter_base.hpp"
#include "ufc/setalg/set_expr.hpp"

namespace gen {

inline ufc::SetExpr expr_of(const brute::RandomPeriodic& r) {
    using ufc::SetExpr;
    std::optional<SetExpr> pattern;
    for (brute::Nat i = 0; i < r.modulus; ++i) {
        if (!r.residues[i]) continue;
        const SetExpr cls = SetExpr::progression(i == 0 ? r.modulus : i, r.modulus);
        pattern = pattern ? (*pattern | cls) : cls;
    }
    SetExpr e = pattern ? *pattern : !SetExpr::all();
    std::map<brute::Nat, int> count;
    for (auto f : r.flips) ++count[f];
    std::vector<brute::Nat> added, removed;
    for (auto [f, c] : count) {
        if (c % 2 == 0) continue;
        (r.residues[f % r.modulus] ? removed : added).push_back(f);
    }
    if (!removed.empty()) e = e & !SetExpr::finite(removed);
    if (!added.empty()) e = e | SetExpr::finite(added);
    return e;
}

/// A random generator: a periodic rule, sometimes mixed with the primes.
struct Sample {
    brute::Member truth;
    ufc::SetExpr expr;
};

inline Sample random_sample(std::mt19937_64& rng, brute::Nat max_modulus = 12, bool allow_primes = true) {
    const auto r = brute::random_periodic(rng, max_modulus, 60);
    Sample s{r, expr_of(r)};
    if (!allow_primes) return s;
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0: return {[r](brute::Nat n) { return r(n) || brute::prime(n); }, s.expr | ufc::SetExpr::primes()};
        case 1: return {[r](brute::Nat n) { return r(n) && !brute::prime(n); }, s.expr & !ufc::SetExpr::primes()};
        default: return s;
    }
}

/// A random base with one to three generators, sometimes carrying the lcm
/// or tail chain. Families that fail FIP are redrawn.
inline ufc::BaseRef random_base(std::mt19937_64& rng, bool chains = true, brute::Nat max_modulus = 12) {
    for (;;) {
        std::vector<ufc::SetExpr> gens;
        const int count = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < count; ++i) gens.push_back(random_sample(rng, max_modulus).expr);
        std::vector<ufc::Chain> cs;
        if (chains) {
            const int c = std::uniform_int_distribution<int>(0, 5)(rng);
            if (c == 0) cs.push_back(ufc::Chain::lcm());
            if (c == 1) cs.push_back(ufc::Chain::tail());
        }
        try {
            return ufc::FilterBase::make(std::move(gens), std::move(cs));
        } catch (const ufc::FipViolation&) {
        }
    }
}

/// A principal point in [1, max_principal] one time in four, else a random base.
inline ufc::BaseRef random_point(std::mt19937_64& rng, brute::Nat max_principal = 60) {
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0)
        return ufc::FilterBase::principal(std::uniform_int_distribution<brute::Nat>(1, max_principal)(rng));
    return random_base(rng);
}

}  // namespace gen
