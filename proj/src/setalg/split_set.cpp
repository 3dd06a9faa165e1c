#include "ufc/setalg/split_set.hpp"

#include <algorithm>

namespace ufc {

namespace {

BitVector unit_mask(Nat m) {
    BitVector unit(static_cast<std::size_t>(m), true);
    for (Nat p : prime_factors(m))
        for (Nat r = 0; r < m; r += p) unit.reset(r);
    return unit;
}

// Whether the unit pattern `u` (mod m) is a function of the residue mod c.
bool unit_fibers_agree(const BitVector& u, const BitVector& unit, Nat m, Nat c) {
    std::vector<signed char> val(static_cast<std::size_t>(c), -1);
    for (Nat t = 0; t < m; ++t) {
        if (!unit.test(t)) continue;
        auto& v = val[t % c];
        const signed char bit = u.test(t) ? 1 : 0;
        if (v < 0)
            v = bit;
        else if (v != bit)
            return false;
    }
    return true;
}

std::vector<Nat> merged(std::vector<Nat> a, const std::vector<Nat>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

}  // namespace

PeriodicSet canonical_on_primes(const PeriodicSet& x) {
    const Nat m = x.modulus();
    const BitVector unit = unit_mask(m);
    const BitVector u = x.residues() & unit;
    // No units or every unit: the pattern is constant.
    const bool none = u.none();
    const bool constant = none || u == unit;
    Nat d = constant ? 1 : m;
    if (!constant)
        for (Nat p : prime_factors(m))
            while (d % p == 0 && unit_fibers_agree(u, unit, m, d / p)) d /= p;

    BitVector bits(static_cast<std::size_t>(d));
    if (constant) {
        if (!none) bits.set(0);
    } else {
        for (Nat t = 0; t < m; ++t)
            if (unit.test(t) && u.test(t)) bits.set(t % d);
    }

    std::vector<Nat> cands = prime_factors(m);
    for (Nat c : x.corrections())
        if (is_prime(c)) cands.push_back(c);
    return PeriodicSet::build(d, std::move(bits), std::move(cands), [&](Nat n) { return x.contains(n); });
}

PeriodicSet canonical_off_primes(const PeriodicSet& y) {
    std::vector<Nat> cands;
    for (Nat c : y.corrections())
        if (!is_prime(c)) cands.push_back(c);
    return PeriodicSet::build(y.modulus(), y.residues(), std::move(cands), [&](Nat n) { return y.contains(n); });
}

SplitSet::SplitSet() : periodic_(PeriodicSet()) {}

SplitSet::SplitSet(const PeriodicSet& s) : on_(canonical_on_primes(s)), off_(canonical_off_primes(s)), periodic_(s) {}

SplitSet SplitSet::periodic_with(const PeriodicSet& s, const PeriodicSet& on_hint) {
    SplitSet out;
    out.on_ = canonical_on_primes(on_hint);
    out.off_ = canonical_off_primes(s);
    out.periodic_ = s;
    return out;
}

SplitSet SplitSet::primes() { return from_parts(PeriodicSet::all(), PeriodicSet::none()); }

SplitSet SplitSet::from_parts(const PeriodicSet& on_primes, const PeriodicSet& off_primes) {
    SplitSet s;
    s.on_ = canonical_on_primes(on_primes);
    s.off_ = canonical_off_primes(off_primes);
    s.finish();
    return s;
}

void SplitSet::finish() {
    periodic_.reset();
    // Periodic iff off_ and on_ agree on the units mod off_'s modulus.
    const Nat m = off_.modulus();
    const Nat d = on_.modulus();
    if (m % d != 0) return;
    const BitVector unit = unit_mask(m);
    for (Nat t = 0; t < m; ++t)
        if (unit.test(t) && off_.has_residue(t) != on_.has_residue(t % d)) return;
    const PeriodicSet z = canonical_on_primes(off_);
    if (z.modulus() != on_.modulus() || !(z.residues() == on_.residues())) return;
    std::vector<Nat> cands = merged(off_.corrections(), on_.corrections());
    cands = merged(std::move(cands), z.corrections());
    cands = merged(std::move(cands), prime_factors(off_.modulus()));
    cands = merged(std::move(cands), prime_factors(on_.modulus()));
    periodic_ = PeriodicSet::build(off_.modulus(), off_.residues(), std::move(cands),
                                   [&](Nat n) { return contains(n); });
}

PeriodicSet SplitSet::periodic_lower() const { return periodic_ ? *periodic_ : on_.intersect(off_); }

PeriodicSet SplitSet::periodic_upper() const { return periodic_ ? *periodic_ : on_.unite(off_); }

bool SplitSet::contains(Nat n) const {
    if (n == 0) return false;
    if (periodic_) return periodic_->contains(n);
    return is_prime(n) ? on_.contains(n) : off_.contains(n);
}

std::optional<Nat> SplitSet::min_element() const {
    if (periodic_) return periodic_->min_element();
    if (empty()) return std::nullopt;
    for (Nat n = 1;; ++n)
        if (contains(n)) return n;
}

std::vector<Nat> SplitSet::finite_elements() const {
    if (!is_finite()) throw PreconditionError("set is infinite");
    return merged(on_.added(), off_.added());
}

SplitSet SplitSet::complement() const {
    if (periodic_) return periodic_with(periodic_->complement(), on_.complement());
    return from_parts(on_.complement(), off_.complement());
}

SplitSet SplitSet::intersect(const SplitSet& other) const {
    if (periodic_ && other.periodic_) return periodic_with(periodic_->intersect(*other.periodic_), on_.intersect(other.on_));
    return from_parts(on_.intersect(other.on_), off_.intersect(other.off_));
}

SplitSet SplitSet::unite(const SplitSet& other) const {
    if (periodic_ && other.periodic_) return periodic_with(periodic_->unite(*other.periodic_), on_.unite(other.on_));
    return from_parts(on_.unite(other.on_), off_.unite(other.off_));
}

SplitSet SplitSet::minus(const SplitSet& other) const {
    if (periodic_ && other.periodic_) return periodic_with(periodic_->minus(*other.periodic_), on_.minus(other.on_));
    return from_parts(on_.minus(other.on_), off_.minus(other.off_));
}

SplitSet SplitSet::quotient(Nat n) const {
    if (n == 0) throw PreconditionError("quotient requires n >= 1");
    if (n == 1) return *this;
    if (periodic_) return SplitSet(periodic_->quotient(n));
    // For k >= 2 the product k n is composite, so only the off-prime part matters.
    const PeriodicSet q = off_.quotient(n);
    const bool one = contains(n);
    auto cands = q.corrections();
    cands.push_back(1);
    return SplitSet(PeriodicSet::build(q.modulus(), q.residues(), std::move(cands),
                                       [&](Nat k) { return k == 1 ? one : q.contains(k); }));
}

std::optional<SplitSet> SplitSet::scale(Nat n) const {
    if (n == 1) return *this;
    if (!periodic_) return std::nullopt;
    return SplitSet(periodic_->scale(n));
}

}  // namespace ufc
