#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <vector>

#include "ufc/filter/chain.hpp"
#include "ufc/setalg/split_set.hpp"

namespace ufc {

enum class Outcome { Entailed, Refuted, Unknown };

std::string_view outcome_name(Outcome o);

/// Certificate behind a decided verdict: lhs is a subset of rhs, or the two
/// are disjoint. lhs is a finite intersection of base sets, further cut by
/// the chain elements at chain_depth when that is set.
struct Proof {
    enum class Relation { Subset, Disjoint };
    Relation relation = Relation::Subset;
    SplitSet lhs;
    SplitSet rhs;
    std::optional<Nat> chain_depth;
    std::vector<Chain> chains;

    /// n in lhs and in every chain element at chain_depth.
    bool lhs_contains(Nat n) const;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    /// Decided: an element of the witnessing intersection (inside the set
    /// for Entailed, outside it for Refuted).
    std::optional<Nat> witness;
    /// Unknown: the bound up to which evidence was examined.
    std::optional<Nat> evidence_bound;
    /// Chain depth at which the decision stabilized.
    std::optional<Nat> depth;
    std::shared_ptr<const Proof> proof;
    std::string note;

    static Verdict entailed() { return {Outcome::Entailed, {}, {}, {}, {}, {}}; }
    static Verdict refuted() { return {Outcome::Refuted, {}, {}, {}, {}, {}}; }
    static Verdict unknown(std::optional<Nat> bound = {}) { return {Outcome::Unknown, {}, bound, {}, {}, {}}; }
    static Verdict of(bool holds) { return holds ? entailed() : refuted(); }

    bool decided() const noexcept { return outcome != Outcome::Unknown; }
    bool is_entailed() const noexcept { return outcome == Outcome::Entailed; }
    bool is_refuted() const noexcept { return outcome == Outcome::Refuted; }
};

/// Swaps Entailed and Refuted.
Verdict negate(Verdict v);

/// Entailed iff both are; Refuted iff either is.
Outcome conjunction(Outcome a, Outcome b);
/// Entailed iff either is; Refuted iff both are.
Outcome disjunction(Outcome a, Outcome b);

struct Config {
    /// Universe bound for oracle checks and bounded searches.
    Nat oracle_bound = 100000;
    /// Deepest chain element examined for custom chains.
    Nat depth_limit = 64;
};

}  // namespace ufc
