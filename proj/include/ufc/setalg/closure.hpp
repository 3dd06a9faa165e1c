#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ufc/setalg/set_expr.hpp"

namespace ufc {

/// Result of an up-closure: exact, or a bracket with the reason it is not.
struct UpClosure {
    SetBounds bounds;
    bool exact = false;
    std::string reason;
};

/// {m : a | m for some a in s}
UpClosure up_closure(const SplitSet& s);
Normalized up_closure(const SetExpr& a);

/// m in s and m | m' imply m' in s.
bool is_up_closed(const PeriodicSet& s);

/// {n : n | a for some a in s}; always exact.
SplitSet down_closure(const SplitSet& s);

/// {n : nN is a subset of a}
PeriodicSet bset(const PeriodicSet& a);
SplitSet bset(const SplitSet& a);

/// One cell of the classification of n by the value of a/n.
struct QuotientClass {
    SplitSet condition;
    SplitSet value;
};

/// Largest modulus for which quotient classes are enumerated.
inline constexpr Nat kMaxClassModulus = 4096;

/// Partition of N into cells on which a/n is constant. Cells are listed in
/// order of their least element. Throws CapacityError for moduli above
/// kMaxClassModulus.
std::vector<QuotientClass> quotient_classes(const SplitSet& a);

struct ClosureReport {
    bool ok = true;
    /// "downward" or "lcm" when !ok.
    std::string failed_property;
    Nat left = 0;   // the member whose divisor, or the first of the pair
    Nat right = 0;  // second member of the pair (lcm only)
    Nat missing = 0;
    std::string message;
};

/// Checks A on [1,k] for closure under divisors and under lcm within [1,k].
ClosureReport closure_predicates(const std::function<bool(Nat)>& member, Nat k);
ClosureReport closure_predicates(const SetExpr& a, Nat k);

}  // namespace ufc
