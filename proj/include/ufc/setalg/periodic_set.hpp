#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ufc/setalg/nat.hpp"
#include "ufc/simd/bit_vector.hpp"

namespace ufc {

/// An eventually periodic subset of N in canonical form.
///
/// Denotes ({k >= 1 : k mod modulus in residues} \ removed) u added, where
/// `added` is disjoint from the periodic part, `removed` lies inside it, and
/// `modulus` is the least period of the periodic part. Equal sets have equal
/// representations, so operator== decides set equality.
class PeriodicSet {
public:
    /// The empty set.
    PeriodicSet();

    static PeriodicSet all();
    static PeriodicSet none() { return PeriodicSet(); }
    static PeriodicSet multiples(Nat n);
    /// {a, a+m, a+2m, ...}
    static PeriodicSet progression(Nat a, Nat m);
    /// {k >= 1 : k = r (mod m)}
    static PeriodicSet residue_class(Nat r, Nat m);
    static PeriodicSet finite(std::vector<Nat> elements);
    static PeriodicSet singleton(Nat n) { return finite({n}); }
    /// [k, inf)
    static PeriodicSet tail(Nat k);
    /// [lo, hi]
    static PeriodicSet interval(Nat lo, Nat hi);

    /// Canonicalizing constructor. The periodic part is given by `residues`
    /// (size == modulus); for each point in `candidates` true membership is
    /// read from `exact` and recorded as a correction when it differs from the
    /// pattern. Points outside `candidates` follow the pattern.
    static PeriodicSet build(Nat modulus, BitVector residues, std::vector<Nat> candidates,
                             const std::function<bool(Nat)>& exact);

    Nat modulus() const noexcept { return modulus_; }
    const BitVector& residues() const noexcept { return residues_; }
    bool has_residue(Nat r) const noexcept { return residues_.test(static_cast<std::size_t>(r)); }
    const std::vector<Nat>& added() const noexcept { return added_; }
    const std::vector<Nat>& removed() const noexcept { return removed_; }
    /// Largest correction point, 0 when there are none.
    Nat max_correction() const noexcept;
    std::vector<Nat> corrections() const;

    bool contains(Nat n) const;
    bool pattern_contains(Nat n) const noexcept { return has_residue(n % modulus_); }

    bool empty() const noexcept { return residues_.none() && added_.empty(); }
    bool is_finite() const noexcept { return residues_.none(); }
    bool is_all() const noexcept;
    std::optional<Nat> min_element() const;
    /// Elements of a finite set, ascending. Throws PreconditionError if infinite.
    std::vector<Nat> finite_elements() const;
    std::vector<Nat> elements_up_to(Nat bound) const;
    /// Membership table on [0, bound]; bit 0 is always clear.
    BitVector to_bits(Nat bound) const;

    /// Only the periodic part: same modulus and residues, no corrections.
    PeriodicSet periodic_part() const;

    PeriodicSet complement() const;
    PeriodicSet intersect(const PeriodicSet& other) const;
    PeriodicSet unite(const PeriodicSet& other) const;
    PeriodicSet minus(const PeriodicSet& other) const;

    /// {m : m n in A}
    PeriodicSet quotient(Nat n) const;
    /// {n a : a in A}
    PeriodicSet scale(Nat n) const;

    bool subset_of(const PeriodicSet& other) const;
    bool disjoint_from(const PeriodicSet& other) const;

    bool operator==(const PeriodicSet& other) const;
    std::size_t hash() const noexcept;

    /// The residue pattern repeated out to `target` (a multiple of modulus()).
    BitVector tiled_residues(Nat target) const;

private:
    enum class Op { And, Or, AndNot };
    static PeriodicSet combine(const PeriodicSet& a, const PeriodicSet& b, Op op);

    Nat modulus_ = 1;
    BitVector residues_;
    std::vector<Nat> added_;
    std::vector<Nat> removed_;
};

struct PeriodicSetHash {
    std::size_t operator()(const PeriodicSet& s) const noexcept { return s.hash(); }
};

}  // namespace ufc
