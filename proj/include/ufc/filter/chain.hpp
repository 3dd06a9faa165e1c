#pragma once

#include <functional>
#include <string>

#include "ufc/setalg/set_expr.hpp"

namespace ufc {

/// A descending sequence of sets C_1 >= C_2 >= ... whose members all belong
/// to the filter.
///
/// Lcm: C_k = lcm(1..k) N. Its filter is the set of A containing some
/// lcm(1..k) N, which is unchanged by scaling or quotienting every element,
/// so one Lcm chain covers all of those variants.
/// Tail: C_k = [k, inf).
/// Custom: C_k given by a rule; descent is verified on a bounded prefix.
class Chain {
public:
    enum class Kind { Lcm, Tail, Custom };
    using Rule = std::function<SetExpr(Nat)>;

    static Chain lcm();
    static Chain tail();
    /// Throws PreconditionError if the rule is not descending on [1, prefix].
    static Chain custom(std::string name, Rule rule, Nat prefix = 16);

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

    /// C_k as an expression (k >= 1).
    SetExpr element(Nat k) const;
    /// C_k as bounds; capacity overflow widens to [empty, N].
    SetBounds element_bounds(Nat k) const;
    /// n in C_k, without materializing C_k.
    bool element_contains(Nat k, Nat n) const;

private:
    Kind kind_ = Kind::Lcm;
    std::string name_;
    Rule rule_;
};

/// lcm(1..k) with 64-bit saturation.
Nat lcm_prefix_saturated(Nat k);

}  // namespace ufc
