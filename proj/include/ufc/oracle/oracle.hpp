#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ufc/filter/verdict.hpp"
#include "ufc/relext/relation.hpp"
#include "ufc/setalg/set_expr.hpp"
#include "ufc/simd/bit_vector.hpp"

namespace ufc::oracle {

/// Membership of one set on [1, bound]. Bit n stands for n; bit 0 is clear.
struct BoundedUniverse {
    Nat bound = 0;
    BitVector bits;

    bool contains(Nat n) const { return n >= 1 && n <= bound && bits.test(static_cast<std::size_t>(n)); }
    std::size_t count() const { return bits.count(); }
    /// Members in increasing order, at most `cap` of them.
    std::vector<Nat> members(std::size_t cap = SIZE_MAX) const;
};

/// Largest table the oracle allocates while evaluating subexpressions.
inline constexpr Nat kMaxTableBits = Nat{1} << 30;

/// Direct enumeration of e on [1, bound]. Quotients read their argument on
/// [1, n bound]; images tabulate their argument on [1, max(bound, search)],
/// which is also the search range for infinite fibres. Throws PreconditionError for bound 0 and
/// CapacityError when a subexpression table would exceed kMaxTableBits.
BoundedUniverse eval_bounded(const SetExpr& e, Nat bound, Nat search = kDefaultImageSearch);

/// Table of an arbitrary membership rule.
BoundedUniverse tabulate(const std::function<bool(Nat)>& member, Nat bound);

/// rho[A] on [1, bound] with A known on [1, a.bound]. Requires a.bound >=
/// bound; elements of A above a.bound are not seen.
BoundedUniverse relation_image(const Relation& rho, const BoundedUniverse& a, Nat bound);

struct CheckReport {
    std::string op;
    bool pass = true;
    /// Least n at which the symbolic side and the enumeration disagree.
    std::optional<Nat> mismatch;
    std::string detail;
};

/// symbolic.lower is a subset of e and e of symbolic.upper on [1, bound].
CheckReport cross_check(const std::string& op, const SetExpr& e, const SetBounds& symbolic, Nat bound);
/// Pointwise equality of a canonical form with the enumeration of e.
CheckReport cross_check(const std::string& op, const SetExpr& e, const PeriodicSet& symbolic, Nat bound);
/// Pointwise equality of two tables.
CheckReport cross_check(const std::string& op, const BoundedUniverse& expected, const BoundedUniverse& actual);

/// Soundness of a decided verdict on [1, bound]. The proof relation must hold
/// on the prefix; when `query` is given, an Entailed witness must lie in it
/// and a Refuted one outside it. Unknown always passes.
CheckReport cross_check(const std::string& op, const Verdict& v, const std::optional<SetExpr>& query, Nat bound);

/// Soundness of a decided verdict against a known truth value.
CheckReport cross_check(const std::string& op, const Verdict& v, bool truth);

}  // namespace ufc::oracle
