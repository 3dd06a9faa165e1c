#include "ufc/setalg/periodic_set.hpp"

#include <algorithm>

namespace ufc {

namespace {

using Word = BitVector::Word;
constexpr std::size_t kW = BitVector::kWordBits;

Word low_mask(std::size_t bits) { return bits >= kW ? ~Word{0} : ((Word{1} << bits) - 1); }

// True iff bits[i] == bits[i + c] for all i + c < m.
bool has_period(const BitVector& bits, std::size_t m, std::size_t c) {
    for (std::size_t i = 0; i + c < m; i += kW) {
        const std::size_t len = std::min(kW, m - c - i);
        const Word mask = low_mask(len);
        if ((bits.window(i) & mask) != (bits.window(i + c) & mask)) return false;
    }
    return true;
}

BitVector prefix(const BitVector& bits, std::size_t len) {
    BitVector out(len);
    auto words = out.words();
    for (std::size_t w = 0; w < words.size(); ++w) words[w] = bits.window(w * kW);
    out.clear_tail();
    return out;
}

void sort_unique(std::vector<Nat>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

PeriodicSet::PeriodicSet() : residues_(1) {}

PeriodicSet PeriodicSet::all() {
    PeriodicSet s;
    s.residues_.set(0);
    return s;
}

PeriodicSet PeriodicSet::multiples(Nat n) {
    if (n == 0) throw PreconditionError("multiples requires n >= 1");
    if (n > kMaxModulus) throw CapacityError("modulus " + std::to_string(n) + " exceeds limit");
    BitVector bits(n);
    bits.set(0);
    return build(n, std::move(bits), {}, {});
}

PeriodicSet PeriodicSet::residue_class(Nat r, Nat m) {
    if (m == 0) throw PreconditionError("residue_class requires m >= 1");
    if (m > kMaxModulus) throw CapacityError("modulus " + std::to_string(m) + " exceeds limit");
    BitVector bits(m);
    bits.set(r % m);
    return build(m, std::move(bits), {}, {});
}

PeriodicSet PeriodicSet::progression(Nat a, Nat m) {
    if (a == 0 || m == 0) throw PreconditionError("progression requires a >= 1 and m >= 1");
    if (m > kMaxModulus) throw CapacityError("modulus " + std::to_string(m) + " exceeds limit");
    BitVector bits(m);
    bits.set(a % m);
    std::vector<Nat> cands;
    for (Nat k = a % m == 0 ? m : a % m; k < a; k += m) cands.push_back(k);
    return build(m, std::move(bits), std::move(cands), [](Nat) { return false; });
}

PeriodicSet PeriodicSet::finite(std::vector<Nat> elements) {
    for (Nat x : elements)
        if (x == 0) throw PreconditionError("0 is not a natural number here");
    sort_unique(elements);
    PeriodicSet s;
    s.added_ = std::move(elements);
    return s;
}

PeriodicSet PeriodicSet::tail(Nat k) {
    if (k == 0) throw PreconditionError("tail requires k >= 1");
    PeriodicSet s = all();
    for (Nat i = 1; i < k; ++i) s.removed_.push_back(i);
    return s;
}

PeriodicSet PeriodicSet::interval(Nat lo, Nat hi) {
    if (lo == 0) lo = 1;
    std::vector<Nat> xs;
    for (Nat i = lo; i <= hi; ++i) xs.push_back(i);
    return finite(std::move(xs));
}

PeriodicSet PeriodicSet::build(Nat modulus, BitVector residues, std::vector<Nat> candidates,
                               const std::function<bool(Nat)>& exact) {
    if (modulus == 0 || residues.size() != modulus)
        throw PreconditionError("residue table size must equal the modulus");
    if (modulus > kMaxModulus) throw CapacityError("modulus " + std::to_string(modulus) + " exceeds limit");

    std::size_t m = static_cast<std::size_t>(modulus);
    if (residues.none() || residues.count() == m) {
        m = 1;
    } else {
        for (Nat p : prime_factors(modulus)) {
            while (m % p == 0 && has_period(residues, m, m / p)) m /= static_cast<std::size_t>(p);
        }
    }

    PeriodicSet s;
    s.modulus_ = m;
    s.residues_ = prefix(residues, m);

    sort_unique(candidates);
    for (Nat c : candidates) {
        if (c == 0) continue;
        const bool want = exact(c);
        const bool have = s.pattern_contains(c);
        if (want && !have) s.added_.push_back(c);
        if (!want && have) s.removed_.push_back(c);
    }
    return s;
}

Nat PeriodicSet::max_correction() const noexcept {
    Nat m = 0;
    if (!added_.empty()) m = added_.back();
    if (!removed_.empty()) m = std::max(m, removed_.back());
    return m;
}

std::vector<Nat> PeriodicSet::corrections() const {
    std::vector<Nat> out;
    out.reserve(added_.size() + removed_.size());
    std::merge(added_.begin(), added_.end(), removed_.begin(), removed_.end(), std::back_inserter(out));
    return out;
}

bool PeriodicSet::contains(Nat n) const {
    if (n == 0) return false;
    if (pattern_contains(n)) return !std::binary_search(removed_.begin(), removed_.end(), n);
    return std::binary_search(added_.begin(), added_.end(), n);
}

bool PeriodicSet::is_all() const noexcept { return modulus_ == 1 && residues_.test(0) && removed_.empty(); }

std::optional<Nat> PeriodicSet::min_element() const {
    std::optional<Nat> best;
    if (!added_.empty()) best = added_.front();
    if (residues_.any()) {
        const Nat limit = max_correction() + modulus_;
        for (Nat k = 1; k <= limit; ++k) {
            if (best && k >= *best) break;
            if (pattern_contains(k) && !std::binary_search(removed_.begin(), removed_.end(), k)) {
                best = k;
                break;
            }
        }
    }
    return best;
}

std::vector<Nat> PeriodicSet::finite_elements() const {
    if (!is_finite()) throw PreconditionError("set is infinite");
    return added_;
}

std::vector<Nat> PeriodicSet::elements_up_to(Nat bound) const {
    std::vector<Nat> out;
    for (Nat k = 1; k <= bound; ++k)
        if (contains(k)) out.push_back(k);
    return out;
}

BitVector PeriodicSet::to_bits(Nat bound) const {
    BitVector out(static_cast<std::size_t>(bound) + 1);
    Nat r = 1 % modulus_;
    for (Nat k = 1; k <= bound; ++k) {
        if (residues_.test(r)) out.set(k);
        if (++r == modulus_) r = 0;
    }
    for (Nat x : removed_)
        if (x <= bound) out.reset(x);
    for (Nat x : added_)
        if (x <= bound) out.set(x);
    return out;
}

PeriodicSet PeriodicSet::periodic_part() const {
    PeriodicSet s;
    s.modulus_ = modulus_;
    s.residues_ = residues_;
    return s;
}

PeriodicSet PeriodicSet::complement() const {
    PeriodicSet s;
    s.modulus_ = modulus_;
    s.residues_ = ~residues_;
    s.added_ = removed_;
    s.removed_ = added_;
    return s;
}

BitVector PeriodicSet::tiled_residues(Nat target) const {
    if (target % modulus_ != 0) throw PreconditionError("tiling target must be a multiple of the modulus");
    if (target == modulus_) return residues_;
    const std::size_t m = modulus_;
    // ext[i] = residues[i mod m] for i < m + kW, so any 64-bit window starting below m is valid.
    BitVector ext(m + kW + m);
    for (std::size_t i = 0; i < ext.size(); ++i)
        if (residues_.test(i % m)) ext.set(i);
    BitVector out(static_cast<std::size_t>(target));
    auto words = out.words();
    std::size_t pos = 0;
    for (auto& w : words) {
        w = ext.window(pos);
        pos = (pos + kW) % m;
    }
    out.clear_tail();
    return out;
}

PeriodicSet PeriodicSet::combine(const PeriodicSet& a, const PeriodicSet& b, Op op) {
    const Nat l = lcm_within(a.modulus_, b.modulus_);
    BitVector bits = a.tiled_residues(l);
    const BitVector other = b.tiled_residues(l);
    switch (op) {
        case Op::And: bits &= other; break;
        case Op::Or: bits |= other; break;
        case Op::AndNot: bits.and_not(other); break;
    }
    std::vector<Nat> cands = a.corrections();
    const auto bc = b.corrections();
    cands.insert(cands.end(), bc.begin(), bc.end());
    return build(l, std::move(bits), std::move(cands), [&](Nat n) {
        const bool x = a.contains(n);
        const bool y = b.contains(n);
        switch (op) {
            case Op::And: return x && y;
            case Op::Or: return x || y;
            case Op::AndNot: return x && !y;
        }
        return false;
    });
}

PeriodicSet PeriodicSet::intersect(const PeriodicSet& other) const { return combine(*this, other, Op::And); }
PeriodicSet PeriodicSet::unite(const PeriodicSet& other) const { return combine(*this, other, Op::Or); }
PeriodicSet PeriodicSet::minus(const PeriodicSet& other) const { return combine(*this, other, Op::AndNot); }

PeriodicSet PeriodicSet::quotient(Nat n) const {
    if (n == 0) throw PreconditionError("quotient requires n >= 1");
    if (n == 1) return *this;
    const Nat m = modulus_;
    const Nat mq = m / gcd(m, n);
    const Nat step = n % m;
    BitVector bits(mq);
    Nat r = 0;
    for (Nat i = 0; i < mq; ++i) {
        if (residues_.test(r)) bits.set(i);
        r += step;
        if (r >= m) r -= m;
    }
    std::vector<Nat> cands;
    for (Nat c : corrections())
        if (c % n == 0) cands.push_back(c / n);
    return build(mq, std::move(bits), std::move(cands), [&](Nat k) { return contains(k * n); });
}

PeriodicSet PeriodicSet::scale(Nat n) const {
    if (n == 0) throw PreconditionError("scale requires n >= 1");
    if (n == 1) return *this;
    const Nat mm = mul_or_throw(modulus_, n, "scale");
    if (mm > kMaxModulus) throw CapacityError("modulus " + std::to_string(mm) + " exceeds limit");
    BitVector bits(mm);
    for (Nat t = 0; t < modulus_; ++t)
        if (residues_.test(t)) bits.set(t * n);
    std::vector<Nat> cands;
    for (Nat c : corrections()) cands.push_back(mul_or_throw(c, n, "scale"));
    return build(mm, std::move(bits), std::move(cands),
                 [&](Nat x) { return x % n == 0 && contains(x / n); });
}

bool PeriodicSet::subset_of(const PeriodicSet& other) const { return minus(other).empty(); }

bool PeriodicSet::disjoint_from(const PeriodicSet& other) const { return intersect(other).empty(); }

bool PeriodicSet::operator==(const PeriodicSet& other) const {
    return modulus_ == other.modulus_ && residues_ == other.residues_ && added_ == other.added_ &&
           removed_ == other.removed_;
}

std::size_t PeriodicSet::hash() const noexcept {
    std::size_t h = residues_.hash() ^ (modulus_ * 0x9e3779b97f4a7c15ULL);
    for (Nat x : added_) h = (h ^ x) * 0x100000001b3ULL;
    h ^= 0x51ed27;
    for (Nat x : removed_) h = (h ^ x) * 0x100000001b3ULL;
    return h;
}

}  // namespace ufc
