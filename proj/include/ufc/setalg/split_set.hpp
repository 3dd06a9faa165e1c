#pragma once

#include <optional>

#include "ufc/setalg/periodic_set.hpp"

namespace ufc {

/// A decidable set described separately on the primes and off the primes:
///
///     S = (P n on_primes) u (N\P n off_primes)
///
/// with both parts eventually periodic. This is the Boolean algebra generated
/// by the eventually periodic sets together with P; it is closed under
/// quotient (A/n is eventually periodic for every n >= 2).
///
/// Canonical form makes equality structural: `off_primes` carries no
/// corrections at primes, and `on_primes` keeps only its pattern on units of
/// its least admissible modulus, with corrections only at primes. Emptiness and
/// finiteness are then read off the parts: every unit residue class holds
/// infinitely many primes and every residue class holds infinitely many
/// composites.
class SplitSet {
public:
    SplitSet();
    /* implicit */ SplitSet(const PeriodicSet& s);  // NOLINT(google-explicit-constructor)

    static SplitSet primes();
    static SplitSet from_parts(const PeriodicSet& on_primes, const PeriodicSet& off_primes);

    const PeriodicSet& on_primes() const noexcept { return on_; }
    const PeriodicSet& off_primes() const noexcept { return off_; }

    /// The same set as a PeriodicSet, if it is eventually periodic.
    const std::optional<PeriodicSet>& as_periodic() const noexcept { return periodic_; }
    bool is_periodic() const noexcept { return periodic_.has_value(); }

    /// Largest eventually periodic subset / smallest superset built from the parts.
    PeriodicSet periodic_lower() const;
    PeriodicSet periodic_upper() const;

    bool contains(Nat n) const;
    bool empty() const noexcept { return on_.empty() && off_.empty(); }
    bool is_finite() const noexcept { return on_.is_finite() && off_.is_finite(); }
    bool is_all() const noexcept { return periodic_ && periodic_->is_all(); }
    std::optional<Nat> min_element() const;
    /// Elements of a finite set, ascending.
    std::vector<Nat> finite_elements() const;
    /// Largest point at which either part carries a correction (0 if none).
    Nat max_correction() const noexcept { return std::max(on_.max_correction(), off_.max_correction()); }

    SplitSet complement() const;
    SplitSet intersect(const SplitSet& other) const;
    SplitSet unite(const SplitSet& other) const;
    SplitSet minus(const SplitSet& other) const;
    SplitSet quotient(Nat n) const;
    /// {n a : a in S}; requires an eventually periodic set.
    std::optional<SplitSet> scale(Nat n) const;

    bool subset_of(const SplitSet& other) const { return minus(other).empty(); }
    bool disjoint_from(const SplitSet& other) const { return intersect(other).empty(); }

    bool operator==(const SplitSet& other) const { return on_ == other.on_ && off_ == other.off_; }
    std::size_t hash() const noexcept { return on_.hash() * 31 + off_.hash(); }

private:
    /// s with on_primes taken from `on_hint`, which agrees with s on the primes.
    static SplitSet periodic_with(const PeriodicSet& s, const PeriodicSet& on_hint);
    void finish();

    PeriodicSet on_;
    PeriodicSet off_;
    std::optional<PeriodicSet> periodic_;
};

/// A bracket lower <= S <= upper around a set that may have no exact form.
struct SetBounds {
    SplitSet lower;
    SplitSet upper;

    static SetBounds exact(const SplitSet& s) { return {s, s}; }
    static SetBounds unknown() { return {SplitSet(), SplitSet(PeriodicSet::all())}; }
    bool is_exact() const { return lower == upper; }
    /// The exact eventually periodic value, if there is one.
    std::optional<PeriodicSet> periodic() const {
        if (!is_exact()) return std::nullopt;
        return lower.as_periodic();
    }
    SetBounds complement() const { return {upper.complement(), lower.complement()}; }
};

/// Canonical forms of the two parts; exposed for tests.
PeriodicSet canonical_on_primes(const PeriodicSet& x);
PeriodicSet canonical_off_primes(const PeriodicSet& y);

}  // namespace ufc
