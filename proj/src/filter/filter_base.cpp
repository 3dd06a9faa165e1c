#include "ufc/filter/filter_base.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ufc {

namespace {

const SplitSet kAll{PeriodicSet::all()};

// Generator intersections stay below this modulus.
constexpr Nat kCoreModulus = Nat{1} << 20;
constexpr Nat kWitnessTries = 4096;
constexpr Nat kFoldModulus = Nat{1} << 16;

Nat modulus_of(const SplitSet& s) {
    return checked_lcm(s.on_primes().modulus(), s.off_primes().modulus()).value_or(UINT64_MAX);
}

struct Core {
    SplitSet lo;
    SplitSet hi{PeriodicSet::all()};
};

// lo is a subset of the true intersection and hi a superset. A capacity
// failure drops the offending factor from hi and empties lo.
Core intersect_all(const std::vector<const SetBounds*>& bounds) {
    Core c;
    c.lo = kAll;
    bool lo_valid = true;
    for (const SetBounds* b : bounds) {
        const auto m = checked_lcm(modulus_of(c.hi), modulus_of(b->upper));
        if (!m || *m > kCoreModulus) {
            lo_valid = false;
            continue;
        }
        try {
            c.hi = c.hi.intersect(b->upper);
        } catch (const CapacityError&) {
            lo_valid = false;
        }
        if (!lo_valid) continue;
        try {
            c.lo = c.lo.intersect(b->lower);
        } catch (const CapacityError&) {
            lo_valid = false;
        }
    }
    if (!lo_valid) c.lo = SplitSet();
    return c;
}

std::optional<SplitSet> lcm_element(Nat k) {
    const Nat l = lcm_prefix_saturated(k);
    if (l > kMaxModulus) return std::nullopt;
    return SplitSet(PeriodicSet::multiples(l));
}

// Provable emptiness of the intersection of the selected upper bounds and chains.
bool definitely_empty(const std::vector<SetBounds>& bounds, const std::vector<std::size_t>& pick,
                      const std::vector<Chain>& chains, const Config& cfg, Nat* depth) {
    std::vector<const SetBounds*> sel;
    for (std::size_t i : pick) sel.push_back(&bounds[i]);
    const Core c = intersect_all(sel);
    if (chains.empty()) return c.hi.empty();
    const ChainKill k = chain_kill(chains, c.hi, cfg);
    if (k.state != ChainKill::State::Killed) return false;
    if (depth) *depth = k.depth;
    return true;
}

struct Analysis {
    std::vector<SetBounds> bounds;
    Core core;
    FipResult fip;
};

// Chain elements of small modulus are folded into lhs.
std::shared_ptr<const Proof> chain_proof(Proof::Relation rel, const SplitSet& core, const SplitSet& rhs,
                                         const std::vector<Chain>& chains, Nat depth) {
    auto p = std::make_shared<Proof>(Proof{rel, core, rhs, std::nullopt, {}});
    if (chains.empty()) return p;
    depth = std::max<Nat>(depth, 1);
    try {
        const Nat l = std::any_of(chains.begin(), chains.end(), [](const Chain& c) { return c.kind() == Chain::Kind::Lcm; })
                          ? lcm_prefix_saturated(depth)
                          : 1;
        if (l <= kFoldModulus)
            if (const auto c = chain_element(chains, depth)) {
                p->lhs = core.intersect(*c);
                return p;
            }
    } catch (const CapacityError&) {
    }
    p->chain_depth = depth;
    p->chains = chains;
    return p;
}

// Least element of core n C_k. With an Lcm chain only the first multiples of
// lcm(1..k) are tried.
std::optional<Nat> min_in_prefix(const SplitSet& core, const std::vector<Chain>& chains, Nat k) {
    k = std::max<Nat>(k, 1);
    const bool lcm = std::any_of(chains.begin(), chains.end(), [](const Chain& c) { return c.kind() == Chain::Kind::Lcm; });
    try {
        if (!lcm) {
            const auto c = chain_element(chains, k);
            if (!c) return std::nullopt;
            return core.intersect(*c).min_element();
        }
        std::vector<SetBounds> others;
        for (const auto& c : chains)
            if (c.kind() != Chain::Kind::Lcm) others.push_back(c.element_bounds(k));
        const Nat l = lcm_prefix_saturated(k);
        if (l == std::numeric_limits<Nat>::max()) return std::nullopt;
        for (Nat j = 1; j <= kWitnessTries; ++j) {
            const auto x = checked_mul(l, j);
            if (!x) return std::nullopt;
            if (!core.contains(*x)) continue;
            if (std::all_of(others.begin(), others.end(), [&](const SetBounds& b) { return b.lower.contains(*x); }))
                return *x;
        }
    } catch (const CapacityError&) {
    }
    return std::nullopt;
}

Analysis analyze(const std::vector<SetExpr>& gens, const std::vector<Chain>& chains, const Config& cfg) {
    Analysis an;
    an.bounds.reserve(gens.size());
    for (const auto& g : gens) an.bounds.push_back(evaluate(g));
    std::vector<const SetBounds*> all;
    for (const auto& b : an.bounds) all.push_back(&b);
    an.core = intersect_all(all);
    FipResult& r = an.fip;

    Nat kill_depth = 0;
    std::vector<std::size_t> pick(gens.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    if (definitely_empty(an.bounds, pick, chains, cfg, &kill_depth)) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            std::vector<std::size_t> rest;
            for (std::size_t j : pick)
                if (j != i) rest.push_back(j);
            Nat d = 0;
            if (definitely_empty(an.bounds, rest, chains, cfg, &d)) {
                pick = std::move(rest);
                kill_depth = d;
            }
        }
        r.ok = false;
        r.empty_subfamily = pick;
        if (!chains.empty()) r.chain_depth = kill_depth;
        std::ostringstream os;
        os << "empty intersection:";
        for (std::size_t i : pick) os << ' ' << gens[i].to_string();
        if (!chains.empty()) os << " with chain elements at depth " << kill_depth;
        r.message = os.str();
        return an;
    }

    const SplitSet& lo = an.core.lo;
    if (chains.empty()) {
        if (!lo.empty()) {
            r.ok = true;
            r.witness = lo.min_element();
            return an;
        }
        for (Nat n = 1; n <= cfg.oracle_bound; ++n) {
            bool in_all = true;
            for (const auto& g : gens)
                if (!g.member(n, cfg.oracle_bound)) {
                    in_all = false;
                    break;
                }
            if (in_all) {
                r.ok = true;
                r.witness = n;
                return an;
            }
        }
        r.message = "no common element found in [1, " + std::to_string(cfg.oracle_bound) + "]";
        return an;
    }

    if (lo.empty()) {
        r.message = "intersection of the generators has no exact form";
        return an;
    }
    const ChainKill k = chain_kill(chains, lo, cfg);
    if (k.state == ChainKill::State::Killed) {
        r.message = "intersection with the chains is not decided";
        return an;
    }
    r.ok = true;
    r.witness = min_in_prefix(lo, chains, 1);
    if (k.state == ChainKill::State::Unknown)
        r.message = "custom chains examined to depth " + std::to_string(cfg.depth_limit);
    return an;
}

}  // namespace

std::optional<SplitSet> chain_element(const std::vector<Chain>& chains, Nat k) {
    SplitSet c = kAll;
    for (const auto& ch : chains) {
        if (ch.kind() == Chain::Kind::Lcm) {
            const auto e = lcm_element(k);
            if (!e) return std::nullopt;
            c = c.intersect(*e);
            continue;
        }
        const SetBounds b = ch.element_bounds(k);
        if (!b.is_exact()) return std::nullopt;
        c = c.intersect(b.lower);
    }
    return c;
}

ChainKill chain_kill(const std::vector<Chain>& chains, const SplitSet& d, const Config& cfg) {
    using S = ChainKill::State;
    if (d.empty()) return {S::Killed, 0};
    if (chains.empty()) return {S::Never, 0};

    std::optional<Nat> best;
    bool custom = false;
    for (const auto& ch : chains) {
        std::optional<Nat> depth;
        switch (ch.kind()) {
            case Chain::Kind::Lcm: {
                // For k past max(modulus, corrections) every multiple of
                // lcm(1..k) is composite and sits in residue class 0 of the
                // off-prime part, beyond every correction.
                const PeriodicSet& y = d.off_primes();
                if (!y.has_residue(0)) depth = std::max({y.modulus(), d.max_correction(), Nat{3}}) + 1;
                break;
            }
            case Chain::Kind::Tail:
                if (d.is_finite()) depth = d.finite_elements().back() + 1;
                break;
            case Chain::Kind::Custom: custom = true; break;
        }
        if (depth && (!best || *depth < *best)) best = depth;
    }
    if (best) return {S::Killed, *best};
    if (!custom) return {S::Never, 0};

    for (Nat k = 1; k <= cfg.depth_limit; ++k) {
        SplitSet c = d;
        try {
            for (const auto& ch : chains) {
                if (ch.kind() == Chain::Kind::Lcm) {
                    if (const auto e = lcm_element(k)) c = c.intersect(*e);
                } else {
                    c = c.intersect(ch.element_bounds(k).upper);
                }
            }
        } catch (const CapacityError&) {
            continue;
        }
        if (c.empty()) return {S::Killed, k};
    }
    return {S::Unknown, 0};
}

FipResult fip_check(const std::vector<SetExpr>& gens, const std::vector<Chain>& chains, const Config& cfg) {
    return analyze(gens, chains, cfg).fip;
}

Verdict Point::decide(const SetExpr& a, const Config& cfg) const {
    if (const auto n = principal_point()) {
        Verdict v = Verdict::of(a.member(*n, cfg.oracle_bound));
        v.witness = *n;
        return v;
    }
    return decide(evaluate(a), cfg);
}

std::shared_ptr<const FilterBase> FilterBase::make(std::vector<SetExpr> gens, std::vector<Chain> chains,
                                                   const Config& cfg) {
    Analysis an = analyze(gens, chains, cfg);
    if (!an.fip.ok) {
        const std::string msg = an.fip.empty_subfamily.empty()
                                    ? "finite intersection property not established: " + an.fip.message
                                    : "finite intersection property fails: " + an.fip.message;
        throw FipViolation(msg, an.fip);
    }
    auto b = std::shared_ptr<FilterBase>(new FilterBase());
    for (std::size_t i = 0; i < gens.size(); ++i) b->gens_.push_back({gens[i], an.bounds[i]});
    b->chains_ = std::move(chains);
    b->core_lo_ = an.core.lo;
    b->core_hi_ = an.core.hi;
    b->witness_ = an.fip.witness;
    if (b->chains_.empty() && b->core_exact() && b->core_lo_.is_finite()) {
        const auto el = b->core_lo_.finite_elements();
        if (el.size() == 1) b->principal_ = el.front();
    }
    return b;
}

std::shared_ptr<const FilterBase> FilterBase::principal(Nat n) {
    if (n == 0) throw PreconditionError("principal point requires n >= 1");
    auto b = std::shared_ptr<FilterBase>(new FilterBase());
    const SetExpr g = SetExpr::finite({n});
    const SplitSet s(PeriodicSet::singleton(n));
    b->gens_.push_back({g, SetBounds::exact(s)});
    b->core_lo_ = s;
    b->core_hi_ = s;
    b->witness_ = n;
    b->principal_ = n;
    return b;
}

std::shared_ptr<const FilterBase> FilterBase::image(const MapDescriptor& f, std::shared_ptr<const FilterBase> source) {
    if (!source) throw PreconditionError("image base needs a source");
    auto b = std::shared_ptr<FilterBase>(new FilterBase());
    b->kind_ = Kind::Image;
    b->map_ = f;
    if (source->witness_) b->witness_ = f.apply(*source->witness_);
    if (source->principal_) b->principal_ = f.apply(*source->principal_);
    b->core_hi_ = kAll;
    b->source_ = std::move(source);
    return b;
}

std::vector<SetExpr> FilterBase::generator_exprs() const {
    std::vector<SetExpr> out;
    if (kind_ == Kind::Image) {
        for (const auto& g : source_->generator_exprs()) out.push_back(SetExpr::image(*map_, g));
        return out;
    }
    for (const auto& g : gens_) out.push_back(g.expr);
    return out;
}

bool FilterBase::has_chain(Chain::Kind k) const {
    return std::any_of(chains_.begin(), chains_.end(), [&](const Chain& c) { return c.kind() == k; });
}

const MapDescriptor& FilterBase::map() const {
    if (!map_) throw PreconditionError("not an image base");
    return *map_;
}

const std::shared_ptr<const FilterBase>& FilterBase::source() const {
    if (!source_) throw PreconditionError("not an image base");
    return source_;
}

Verdict FilterBase::decide(const SetExpr& a, const Config& cfg) const { return Point::decide(a, cfg); }

Verdict FilterBase::decide(const SetBounds& a, const Config& cfg) const {
    if (principal_) {
        const Nat n = *principal_;
        Verdict v = a.lower.contains(n) ? Verdict::entailed()
                    : !a.upper.contains(n) ? Verdict::refuted()
                                           : Verdict::unknown(cfg.oracle_bound);
        if (v.decided()) v.witness = n;
        return v;
    }
    if (kind_ == Kind::Image) {
        SetBounds pre;
        try {
            pre = {map_->preimage(a.lower).lower, map_->preimage(a.upper).upper};
        } catch (const CapacityError&) {
            return Verdict::unknown(cfg.oracle_bound);
        }
        Verdict v = source_->decide(pre, cfg);
        if (v.witness) v.witness = map_->apply(*v.witness);
        v.note = "decided through the preimage under " + map_->render();
        return v;
    }
    return decide_plain(a, cfg);
}

Verdict FilterBase::decide_plain(const SetBounds& a, const Config& cfg) const {
    try {
        const ChainKill ke = chain_kill(chains_, core_hi_.minus(a.lower), cfg);
        if (ke.state == ChainKill::State::Killed) {
            Verdict v = Verdict::entailed();
            if (!chains_.empty()) v.depth = ke.depth;
            v.witness = min_in_prefix(core_lo_, chains_, ke.depth);
            v.proof = chain_proof(Proof::Relation::Subset, core_hi_, a.lower, chains_, ke.depth);
            return v;
        }
        const ChainKill kr = chain_kill(chains_, core_hi_.intersect(a.upper), cfg);
        if (kr.state == ChainKill::State::Killed) {
            Verdict v = Verdict::refuted();
            if (!chains_.empty()) v.depth = kr.depth;
            v.witness = min_in_prefix(core_lo_, chains_, kr.depth);
            v.proof = chain_proof(Proof::Relation::Disjoint, core_hi_, a.upper, chains_, kr.depth);
            return v;
        }
    } catch (const CapacityError&) {
    }
    Verdict v = Verdict::unknown(cfg.oracle_bound);
    if (has_chain(Chain::Kind::Custom)) v.depth = cfg.depth_limit;
    return v;
}

std::string FilterBase::describe() const {
    if (kind_ == Kind::Image) return "image(" + map_->render() + ", " + source_->describe() + ")";
    if (principal_ && gens_.size() == 1 && gens_[0].expr.kind() == ExprKind::Finite) return std::to_string(*principal_);
    std::ostringstream os;
    os << "filter(";
    bool first = true;
    for (const auto& g : gens_) {
        os << (first ? "" : ", ") << g.expr.to_string();
        first = false;
    }
    for (const auto& c : chains_) {
        os << (first ? "" : ", ") << c.name();
        first = false;
    }
    os << ")";
    return os.str();
}

Verdict entails(const Point& p, const SetExpr& a, const Config& cfg) { return p.decide(a, cfg); }

Verdict entails(const Point& p, const SplitSet& a, const Config& cfg) { return p.decide(SetBounds::exact(a), cfg); }

std::vector<PeriodicSet> subalgebra_atoms(const std::vector<PeriodicSet>& gens) {
    std::vector<PeriodicSet> atoms{PeriodicSet::all()};
    for (const auto& g : gens) {
        std::vector<PeriodicSet> next;
        for (const auto& a : atoms) {
            PeriodicSet in = a.intersect(g);
            PeriodicSet out = a.minus(g);
            if (!in.empty()) next.push_back(std::move(in));
            if (!out.empty()) next.push_back(std::move(out));
        }
        atoms = std::move(next);
    }
    return atoms;
}

}  // namespace ufc
