#include "ufc/setalg/closure.hpp"

#include <algorithm>
#include <unordered_map>

namespace ufc {

namespace {

constexpr Nat kMinimalScan = Nat{1} << 16;
constexpr Nat kCandidateModulus = Nat{1} << 16;
constexpr Nat kPartialModulus = Nat{1} << 16;

// For each divisor g of the modulus: whether every residue divisible by g is
// in the pattern, i.e. the subgroup generated by g lies inside the residues.
class SubgroupTable {
public:
    explicit SubgroupTable(const PeriodicSet& s) : m_(s.modulus()), divs_(divisors(m_)), ok_(divs_.size()) {
        for (std::size_t i = 0; i < divs_.size(); ++i) {
            bool all = true;
            for (Nat r = 0; r < m_ && all; r += divs_[i]) all = s.has_residue(r);
            ok_[i] = all;
        }
    }
    /// Whether every multiple of n lands in a residue of the pattern.
    bool multiples_of(Nat n) const {
        const Nat g = gcd(n % m_, m_);
        const auto it = std::lower_bound(divs_.begin(), divs_.end(), g);
        return ok_[static_cast<std::size_t>(it - divs_.begin())] != 0;
    }

private:
    Nat m_;
    std::vector<Nat> divs_;
    std::vector<char> ok_;
};

// Elements of s on [1,k] with no proper divisor in s, ascending.
std::vector<Nat> minimal_elements(const std::function<bool(Nat)>& member, Nat k) {
    std::vector<char> covered(static_cast<std::size_t>(k) + 1, 0);
    std::vector<Nat> out;
    for (Nat x = 1; x <= k; ++x) {
        if (covered[x] || !member(x)) continue;
        out.push_back(x);
        for (Nat y = x; y <= k; y += x) covered[y] = 1;
    }
    return out;
}

// Union of fN over f in `gens`, skipping generators that would push the
// modulus past the limit. Returns the union and whether all were used.
std::pair<PeriodicSet, bool> union_of_multiples(const std::vector<Nat>& gens, Nat limit = kMaxModulus) {
    PeriodicSet acc;
    bool complete = true;
    for (Nat f : gens) {
        const auto l = checked_lcm(acc.modulus(), f);
        if (!l || *l > limit) {
            complete = false;
            continue;
        }
        acc = acc.unite(PeriodicSet::multiples(f));
    }
    return {acc, complete};
}

// {x : g | x for some g = gcd(a, m) with a in u}, periodic mod m.
PeriodicSet gcd_upper(const PeriodicSet& u) {
    const Nat m = u.modulus();
    std::vector<Nat> gs;
    for (Nat r = 0; r < m; ++r)
        if (u.has_residue(r)) gs.push_back(gcd(r, m));
    for (Nat a : u.added()) gs.push_back(gcd(a, m));
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    BitVector bits(m);
    for (Nat g : gs)
        for (Nat r = 0; r < m; r += g) bits.set(r);
    return PeriodicSet::build(m, std::move(bits), {}, {});
}

}  // namespace

bool is_up_closed(const PeriodicSet& s) {
    const SubgroupTable table(s);
    const Nat m = s.modulus();
    for (Nat r = 0; r < m; ++r)
        if (s.has_residue(r) && !table.multiples_of(r)) return false;
    const Nat top = s.max_correction();
    for (Nat c = 1; c <= top; ++c) {
        if (!s.contains(c)) continue;
        if (!table.multiples_of(c)) return false;
        for (Nat k = 2 * c; k <= top; k += c)
            if (!s.contains(k)) return false;
    }
    return true;
}

UpClosure up_closure(const SplitSet& s) {
    const SplitSet all(PeriodicSet::all());
    if (s.empty()) return {SetBounds::exact(s), true, {}};
    if (s.contains(1)) return {SetBounds::exact(all), true, {}};
    if (s.is_finite()) {
        const auto elems = s.finite_elements();
        std::vector<Nat> mins;
        for (Nat x : elems)
            if (std::none_of(mins.begin(), mins.end(), [&](Nat d) { return x % d == 0; })) mins.push_back(x);
        std::optional<Nat> l = 1;
        for (Nat x : mins) {
            if (l) l = checked_lcm(*l, x);
            if (l && *l > kMaxModulus) l.reset();
        }
        if (l) return {SetBounds::exact(SplitSet(union_of_multiples(mins).first)), true, {}};
        const PeriodicSet u = union_of_multiples(mins, kPartialModulus).first;
        return {{SplitSet(u).unite(s), all}, false, "up-closure modulus exceeds capacity"};
    }
    if (s.on_primes().is_all()) {
        return {SetBounds::exact(SplitSet(PeriodicSet::tail(2))), true, {}};
    }

    if (const auto& per = s.as_periodic(); per && is_up_closed(*per)) return {SetBounds::exact(s), true, {}};

    const PeriodicSet upper_src = s.periodic_upper();
    const Nat scan = std::min<Nat>(std::max(s.max_correction(), upper_src.max_correction()) +
                                       std::max(upper_src.modulus(), s.on_primes().modulus()),
                                   kMinimalScan);
    const auto mins = minimal_elements([&](Nat x) { return s.contains(x); }, scan);
    const SplitSet candidate = s.unite(SplitSet(union_of_multiples(mins, kCandidateModulus).first));
    if (const auto& c = candidate.as_periodic(); c && is_up_closed(*c)) return {SetBounds::exact(candidate), true, {}};

    SplitSet upper(gcd_upper(upper_src));
    return {{candidate, upper.unite(candidate)}, false, "up-closure is not eventually periodic within capacity"};
}

Normalized up_closure(const SetExpr& a) {
    const SetExpr e = SetExpr::up(a);
    return normalize(e);
}

SplitSet down_closure(const SplitSet& s) {
    // Class r mod m meets some multiple of n iff gcd(n, m) | r; off the
    // primes every class still has infinitely many members.
    const PeriodicSet& y = s.off_primes();
    const Nat m = y.modulus();
    const std::vector<Nat> mdivs = divisors(m);
    std::vector<char> hit(mdivs.size(), 0);  // hit[i]: mdivs[i] divides gcd(r, m) for some residue r
    for (Nat r = 0; r < m; ++r) {
        if (!y.has_residue(r)) continue;
        const Nat h = gcd(r, m);
        for (std::size_t i = 0; i < mdivs.size(); ++i)
            if (h % mdivs[i] == 0) hit[i] = 1;
    }
    BitVector bits(m);
    for (Nat t = 0; t < m; ++t) {
        const auto it = std::lower_bound(mdivs.begin(), mdivs.end(), gcd(t, m));
        if (hit[static_cast<std::size_t>(it - mdivs.begin())]) bits.set(t);
    }
    std::vector<Nat> divs;
    for (Nat a : y.added()) {
        auto d = divisors(a);
        divs.insert(divs.end(), d.begin(), d.end());
    }
    PeriodicSet off_down = PeriodicSet::build(m, std::move(bits), {}, {}).unite(PeriodicSet::finite(std::move(divs)));
    const SplitSet prime_part = s.intersect(SplitSet::primes());
    SplitSet out(off_down);
    if (!prime_part.empty()) out = out.unite(prime_part).unite(SplitSet(PeriodicSet::singleton(1)));
    return out;
}

PeriodicSet bset(const PeriodicSet& a) {
    const SubgroupTable table(a);
    const Nat m = a.modulus();
    BitVector bits(m);
    for (Nat r = 0; r < m; ++r)
        if (table.multiples_of(r)) bits.set(r);
    const Nat top = a.max_correction();
    std::vector<Nat> cands;
    for (Nat n = 1; n <= top; ++n) cands.push_back(n);
    return PeriodicSet::build(m, std::move(bits), std::move(cands), [&](Nat n) {
        if (!table.multiples_of(n)) return false;
        for (Nat k = n; k <= top; k += n)
            if (!a.contains(k)) return false;
        return true;
    });
}

SplitSet bset(const SplitSet& a) {
    if (const auto& per = a.as_periodic()) return SplitSet(bset(*per));
    // For n >= 2 every proper multiple is composite; n = 1 would need a = N.
    const PeriodicSet& y = a.off_primes();
    const SubgroupTable table(y);
    const Nat m = y.modulus();
    BitVector bits(m);
    for (Nat r = 0; r < m; ++r)
        if (table.multiples_of(r)) bits.set(r);
    const Nat top = y.max_correction();
    std::vector<Nat> cands;
    for (Nat n = 1; n <= top; ++n) cands.push_back(n);
    const PeriodicSet proper = PeriodicSet::build(m, std::move(bits), std::move(cands), [&](Nat n) {
        if (!table.multiples_of(n)) return false;
        for (Nat k = 2 * n; k <= top; k += n)
            if (!y.contains(k)) return false;
        return true;
    });
    return a.intersect(SplitSet(proper)).minus(SplitSet(PeriodicSet::singleton(1)));
}

namespace {

std::vector<QuotientClass> periodic_classes(const PeriodicSet& a) {
    const Nat m = a.modulus();
    if (m > kMaxClassModulus) throw CapacityError("quotient classes: modulus " + std::to_string(m) + " exceeds limit");
    const PeriodicSet per = a.periodic_part();

    std::vector<Nat> divs;
    for (Nat c : a.corrections()) {
        auto d = divisors(c);
        divs.insert(divs.end(), d.begin(), d.end());
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());

    struct Group {
        PeriodicSet value;
        BitVector residues;
        std::vector<Nat> extra;
    };
    std::vector<Group> groups;
    std::unordered_map<PeriodicSet, std::size_t, PeriodicSetHash> index;
    auto group_for = [&](PeriodicSet v) -> Group& {
        auto it = index.find(v);
        if (it != index.end()) return groups[it->second];
        index.emplace(v, groups.size());
        groups.push_back({std::move(v), BitVector(m), {}});
        return groups.back();
    };
    for (Nat r = 0; r < m; ++r) group_for(per.quotient(r == 0 ? m : r)).residues.set(r);
    for (Nat d : divs) group_for(a.quotient(d)).extra.push_back(d);

    std::vector<QuotientClass> out;
    for (auto& g : groups) {
        const auto& extra = g.extra;
        PeriodicSet cond = PeriodicSet::build(m, g.residues, divs, [&](Nat n) {
            return std::binary_search(extra.begin(), extra.end(), n);
        });
        out.push_back({SplitSet(cond), SplitSet(g.value)});
    }
    return out;
}

std::vector<QuotientClass> merge_and_order(std::vector<QuotientClass> cells) {
    std::vector<QuotientClass> merged;
    for (auto& c : cells) {
        if (c.condition.empty()) continue;
        auto it = std::find_if(merged.begin(), merged.end(), [&](const QuotientClass& q) { return q.value == c.value; });
        if (it == merged.end())
            merged.push_back(std::move(c));
        else
            it->condition = it->condition.unite(c.condition);
    }
    std::vector<std::pair<Nat, std::size_t>> order;
    for (std::size_t i = 0; i < merged.size(); ++i) order.emplace_back(*merged[i].condition.min_element(), i);
    std::sort(order.begin(), order.end());
    std::vector<QuotientClass> out;
    for (auto [_, i] : order) out.push_back(std::move(merged[i]));
    return out;
}

}  // namespace

std::vector<QuotientClass> quotient_classes(const SplitSet& a) {
    if (const auto& per = a.as_periodic()) return merge_and_order(periodic_classes(*per));
    // a/1 = a; for n >= 2, a/n = (off/n \ {1}) u ({1} if n in a).
    const SplitSet one(PeriodicSet::singleton(1));
    std::vector<QuotientClass> cells{{one, a}};
    for (const auto& c : periodic_classes(a.off_primes())) {
        const SplitSet rest = c.condition.minus(one);
        const SplitSet base = c.value.minus(one);
        cells.push_back({rest.intersect(a), base.unite(one)});
        cells.push_back({rest.minus(a), base});
    }
    return merge_and_order(std::move(cells));
}

ClosureReport closure_predicates(const std::function<bool(Nat)>& member, Nat k) {
    if (k == 0) throw PreconditionError("closure_predicates requires k >= 1");
    std::vector<Nat> in;
    std::vector<char> has(static_cast<std::size_t>(k) + 1, 0);
    for (Nat n = 1; n <= k; ++n) {
        if (member(n)) {
            in.push_back(n);
            has[n] = 1;
        }
    }
    ClosureReport rep;
    for (Nat a : in) {
        for (Nat d : divisors(a)) {
            if (!has[d]) {
                rep.ok = false;
                rep.failed_property = "downward";
                rep.left = a;
                rep.missing = d;
                rep.message = std::to_string(d) + " divides " + std::to_string(a) + " but is not a member";
                return rep;
            }
        }
    }
    for (std::size_t i = 0; i < in.size(); ++i) {
        for (std::size_t j = i + 1; j < in.size(); ++j) {
            const auto l = checked_lcm(in[i], in[j]);
            if (!l || *l > k) continue;
            if (!has[*l]) {
                rep.ok = false;
                rep.failed_property = "lcm";
                rep.left = in[i];
                rep.right = in[j];
                rep.missing = *l;
                rep.message = "lcm(" + std::to_string(in[i]) + "," + std::to_string(in[j]) + ") = " +
                              std::to_string(*l) + " is not a member";
                return rep;
            }
        }
    }
    return rep;
}

ClosureReport closure_predicates(const SetExpr& a, Nat k) {
    return closure_predicates([&](Nat n) { return a.member(n); }, k);
}

}  // namespace ufc
