#include "ufc/relext/relation.hpp"

#include <algorithm>

#include "ufc/setalg/closure.hpp"
#include "ufc/setalg/render.hpp"

namespace ufc {

namespace {

const SplitSet kAll{PeriodicSet::all()};

// Chain elements examined for bounded refutation stay below this modulus.
constexpr Nat kRefutationModulus = Nat{1} << 16;

bool is_mod_classes(const MapDescriptor& h) {
    if (h.kind() != MapDescriptor::Kind::Class) return false;
    const Nat k = h.class_count();
    for (Nat r = 0; r < k; ++r)
        if (h.class_values()[r] != (r == 0 ? k : r)) return false;
    return true;
}

// Union of the fibres of a class map that meet a.
SplitSet class_saturation(const MapDescriptor& h, const SplitSet& a) {
    const Nat k = h.class_count();
    std::vector<Nat> live;
    for (Nat r = 0; r < k; ++r)
        if (!a.disjoint_from(SplitSet(PeriodicSet::residue_class(r, k)))) live.push_back(h.class_values()[r]);
    PeriodicSet out;
    for (Nat r = 0; r < k; ++r)
        if (std::find(live.begin(), live.end(), h.class_values()[r]) != live.end())
            out = out.unite(PeriodicSet::residue_class(r, k));
    return out;
}

std::optional<SetBounds> core_bounds(const Point& p) {
    if (const auto n = p.principal_point()) return SetBounds::exact(SplitSet(PeriodicSet::singleton(*n)));
    const auto* fb = dynamic_cast<const FilterBase*>(&p);
    if (!fb) return std::nullopt;
    if (fb->is_plain()) {
        if (!fb->chains().empty()) return std::nullopt;
        return SetBounds{fb->core_lower(), fb->core_upper()};
    }
    const auto src = core_bounds(*fb->source());
    if (!src) return std::nullopt;
    try {
        return SetBounds{fb->map().image(src->lower).lower, fb->map().image(src->upper).upper};
    } catch (const CapacityError&) {
        return SetBounds::unknown();
    }
}

// Whether every set of the filter of p belongs to the filter of q.
bool filter_included(const FilterBase& p, const Point& q, const Config& cfg) {
    if (&p == &q) return true;
    if (!q.decide(SetBounds::exact(p.core_lower()), cfg).is_entailed()) return false;
    if (p.chains().empty()) return true;
    const auto* qb = dynamic_cast<const FilterBase*>(&q);
    if (!qb || !qb->is_plain()) return false;
    for (const auto& c : p.chains()) {
        switch (c.kind()) {
            case Chain::Kind::Lcm:
                if (!qb->has_chain(Chain::Kind::Lcm)) return false;
                break;
            case Chain::Kind::Tail:
                if (!qb->has_chain(Chain::Kind::Lcm) && !qb->has_chain(Chain::Kind::Tail)) return false;
                break;
            case Chain::Kind::Custom: {
                const auto& qc = qb->chains();
                if (std::none_of(qc.begin(), qc.end(), [&](const Chain& d) { return d.name() == c.name(); }))
                    return false;
                break;
            }
        }
    }
    return true;
}

// Whether q entails every tail [t, inf).
Verdict all_tails(const Point& q, const Config& cfg) {
    if (const auto n = q.principal_point()) {
        Verdict v = Verdict::refuted();
        v.witness = *n;
        v.note = "the tail above " + std::to_string(*n) + " misses the principal point";
        return v;
    }
    const auto* qb = dynamic_cast<const FilterBase*>(&q);
    if (!qb || !qb->is_plain()) return Verdict::unknown(cfg.oracle_bound);
    if (qb->has_chain(Chain::Kind::Lcm) || qb->has_chain(Chain::Kind::Tail)) {
        Verdict v = Verdict::entailed();
        v.witness = qb->fip_witness();
        v.note = "every tail is entailed by the chains of q";
        return v;
    }
    if (qb->core_upper().is_finite()) {
        Verdict v = Verdict::refuted();
        v.witness = qb->fip_witness();
        v.note = "q entails a finite set";
        return v;
    }
    return Verdict::unknown(cfg.oracle_bound);
}

}  // namespace

Relation Relation::div() {
    Relation r;
    r.tag_ = Tag::Div;
    return r;
}

Relation Relation::leq() {
    Relation r;
    r.tag_ = Tag::Leq;
    return r;
}

Relation Relation::kernel(const MapDescriptor& h) {
    Relation r;
    r.tag_ = Tag::Kernel;
    r.map_ = h;
    return r;
}

Relation Relation::table(Pairs pairs, Nat universe, std::string label) {
    if (universe == 0) throw PreconditionError("table universe must be at least 1");
    for (const auto& [m, n] : pairs)
        if (m == 0 || n == 0 || m > universe || n > universe)
            throw PreconditionError("pair (" + std::to_string(m) + ", " + std::to_string(n) +
                                    ") lies outside the universe [1, " + std::to_string(universe) + "]");
    Relation r;
    r.tag_ = Tag::Table;
    r.pairs_ = std::make_shared<const Pairs>(std::move(pairs));
    r.universe_ = universe;
    r.label_ = std::move(label);
    return r;
}

Relation Relation::inverse() const {
    Relation r = *this;
    if (tag_ != Tag::Kernel) r.inverted_ = !inverted_;
    return r;
}

const MapDescriptor& Relation::kernel_map() const {
    if (!map_) throw PreconditionError("not a kernel relation");
    return *map_;
}

std::optional<Nat> Relation::universe() const {
    if (tag_ != Tag::Table) return std::nullopt;
    return universe_;
}

std::string Relation::name() const {
    std::string base;
    switch (tag_) {
        case Tag::Div: base = "div"; break;
        case Tag::Leq: base = "leq"; break;
        case Tag::Kernel:
            base = is_mod_classes(*map_) ? "ker:" + std::to_string(map_->class_count()) : "ker(" + map_->render() + ")";
            break;
        case Tag::Table: base = label_; break;
    }
    return inverted_ ? "inv(" + base + ")" : base;
}

std::optional<bool> Relation::related(Nat m, Nat n) const {
    if (m == 0 || n == 0) return false;
    if (inverted_) std::swap(m, n);
    switch (tag_) {
        case Tag::Div: return n % m == 0;
        case Tag::Leq: return m <= n;
        case Tag::Kernel: return map_->apply(m) == map_->apply(n);
        case Tag::Table:
            if (m > universe_ || n > universe_) return std::nullopt;
            return pairs_->count({m, n}) > 0;
    }
    return false;
}

bool Relation::reflexive() const {
    if (tag_ != Tag::Table) return true;
    for (Nat n = 1; n <= universe_; ++n)
        if (!pairs_->count({n, n})) return false;
    return true;
}

bool Relation::transitive() const {
    if (tag_ != Tag::Table) return true;
    for (const auto& [a, b] : *pairs_)
        for (auto it = pairs_->lower_bound({b, 0}); it != pairs_->end() && it->first == b; ++it)
            if (!pairs_->count({a, it->second})) return false;
    return true;
}

SetBounds Relation::image(const SplitSet& a) const {
    if (a.empty()) return SetBounds::exact(SplitSet());
    switch (tag_) {
        case Tag::Div:
            if (inverted_) return SetBounds::exact(down_closure(a));
            return up_closure(a).bounds;
        case Tag::Leq:
            if (inverted_)
                return SetBounds::exact(a.is_finite() ? SplitSet(PeriodicSet::interval(1, a.finite_elements().back()))
                                                      : kAll);
            return SetBounds::exact(SplitSet(PeriodicSet::tail(*a.min_element())));
        case Tag::Kernel: {
            const MapDescriptor& h = *map_;
            if (h.kind() == MapDescriptor::Kind::Class) return SetBounds::exact(class_saturation(h, a));
            if (h.kind() == MapDescriptor::Kind::Affine) return SetBounds::exact(a);
            const SetBounds img = h.image(a);
            return {a.unite(h.preimage(img.lower).lower), h.preimage(img.upper).upper};
        }
        case Tag::Table: {
            std::vector<Nat> out;
            for (auto [m, n] : *pairs_) {
                if (inverted_) std::swap(m, n);
                if (a.contains(m)) out.push_back(n);
            }
            return SetBounds::exact(SplitSet(PeriodicSet::finite(std::move(out))));
        }
    }
    return SetBounds::unknown();
}

SetBounds Relation::image(const SetBounds& a) const {
    try {
        if (a.is_exact()) return image(a.lower);
        return {image(a.lower).lower, image(a.upper).upper};
    } catch (const CapacityError&) {
        return SetBounds::unknown();
    }
}

Verdict ext_related(const Relation& rho, const Point& p, const Point& q, const Config& cfg) {
    const auto core = core_bounds(p);
    if (const auto u = rho.universe()) {
        const bool confined = core && core->is_exact() && core->lower.is_finite() &&
                              (core->lower.empty() || core->lower.finite_elements().back() <= *u);
        const auto qn = q.principal_point();
        if (!confined || (qn && *qn > *u)) {
            Verdict v = Verdict::unknown(*u);
            v.note = "outside the table universe";
            return v;
        }
    }
    if (core) {
        Verdict v = q.decide(rho.image(*core), cfg);
        if (v.decided() && v.note.empty()) v.note = "image of the core of p under " + rho.name();
        return v;
    }

    const auto* fb = dynamic_cast<const FilterBase*>(&p);
    if (!fb || !fb->is_plain()) return Verdict::unknown(cfg.oracle_bound);

    const bool cofinal = fb->has_chain(Chain::Kind::Lcm) || fb->has_chain(Chain::Kind::Tail);
    if (rho.tag() == Relation::Tag::Leq && !rho.inverted() && cofinal) return all_tails(q, cfg);

    if (rho.reflexive() && filter_included(*fb, q, cfg)) {
        Verdict v = Verdict::entailed();
        v.witness = fb->fip_witness();
        v.note = "the filter of p is contained in the filter of q";
        return v;
    }

    for (Nat k = 1; k <= cfg.depth_limit; ++k) {
        std::optional<SplitSet> ck;
        try {
            ck = chain_element(fb->chains(), k);
            if (!ck || ck->periodic_upper().modulus() > kRefutationModulus) break;
            const SetBounds img = rho.image(fb->core_upper().intersect(*ck));
            Verdict v = q.decide(SetBounds{SplitSet(), img.upper}, cfg);
            if (v.is_refuted()) {
                v.depth = k;
                v.note = "image of the core at chain depth " + std::to_string(k) + " is refuted";
                return v;
            }
        } catch (const CapacityError&) {
            break;
        }
    }
    return Verdict::unknown(cfg.oracle_bound);
}

MinWitness min_witness(const Relation& rho, const SetExpr& b, Nat x, const Config& cfg) {
    if (x == 0) throw PreconditionError("min_witness requires x >= 1");
    const SetBounds bb = evaluate(b);
    if (bb.is_exact()) {
        if (bb.lower.empty()) throw PreconditionError("min_witness requires a nonempty set");
        const bool beyond = rho.universe() && x > *rho.universe();
        const SetBounds succ = beyond ? SetBounds::exact(SplitSet()) : rho.successors(x);
        if (succ.is_exact()) {
            if (const auto hit = bb.lower.intersect(succ.lower).min_element()) return {*hit, true};
            return {*bb.lower.min_element(), false};
        }
    } else if (bb.upper.empty()) {
        throw PreconditionError("min_witness requires a nonempty set");
    }
    std::optional<Nat> first;
    for (Nat y = 1; y <= cfg.oracle_bound; ++y) {
        if (!b.member(y, cfg.oracle_bound)) continue;
        if (!first) first = y;
        if (rho.related(x, y).value_or(false)) return {y, true};
    }
    if (!first) throw PreconditionError("no element of the set in [1, " + std::to_string(cfg.oracle_bound) + "]");
    return {*first, false};
}

KernelCoherence kernel_coherence(const MapDescriptor& h, const BaseRef& p, const BaseRef& q, const Config& cfg) {
    if (!p || !q) throw PreconditionError("kernel_coherence needs two bases");
    KernelCoherence r;
    const Verdict rel = ext_related(Relation::kernel(h), *p, *q, cfg);
    r.relation_side = rel.outcome;

    if (h.kind() == MapDescriptor::Kind::Class) {
        std::vector<Nat> values = h.class_values();
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        const Nat k = h.class_count();
        for (Nat v : values) {
            PeriodicSet fib;
            for (Nat c = 0; c < k; ++c)
                if (h.class_values()[c] == v) fib = fib.unite(PeriodicSet::residue_class(c, k));
            const SplitSet f(fib);
            const Outcome pv = p->decide(SetBounds::exact(f), cfg).outcome;
            const Outcome qv = q->decide(SetBounds::exact(f), cfg).outcome;
            if (pv == Outcome::Entailed && qv == Outcome::Entailed) {
                r.image_side = Outcome::Entailed;
                break;
            }
            if ((pv == Outcome::Entailed && qv == Outcome::Refuted) ||
                (pv == Outcome::Refuted && qv == Outcome::Entailed)) {
                r.image_side = Outcome::Refuted;
                r.counterexample = SetExpr::literal(f);
                break;
            }
        }
    } else {
        const auto hp = pushforward(h, p, cfg)->principal_point();
        const auto hq = pushforward(h, q, cfg)->principal_point();
        if (!hp || !hq) throw PreconditionError("map " + h.render() + " has infinite index and the images are not principal");
        r.image_side = *hp == *hq ? Outcome::Entailed : Outcome::Refuted;
        if (*hp != *hq) r.counterexample = SetExpr::finite({*hp});
    }

    if (r.relation_side != Outcome::Unknown && r.relation_side == r.image_side) {
        r.verdict = rel;
        return r;
    }
    r.verdict = Verdict::unknown(cfg.oracle_bound);
    if (r.relation_side != Outcome::Unknown && r.image_side != Outcome::Unknown) r.verdict.note = "sides disagree";
    return r;
}

}  // namespace ufc
