#include <algorithm>

#include "ufc/filter/filter_base.hpp"

namespace ufc {

namespace {

BaseRef finite_image(const MapDescriptor& f, const SplitSet& core, const Config& cfg) {
    std::vector<Nat> vals;
    for (Nat x : core.finite_elements()) vals.push_back(f.apply(x));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.size() == 1) return FilterBase::principal(vals.front());
    return FilterBase::make({SetExpr::finite(std::move(vals))}, {}, cfg);
}

// Injective and increasing, so images commute with intersections and tails.
std::optional<BaseRef> affine_image(const MapDescriptor& f, const FilterBase& p, const Config& cfg) {
    const bool linear = f.affine_offset() == 0;
    std::vector<Chain> chains;
    for (const auto& c : p.chains()) {
        if (c.kind() == Chain::Kind::Custom) return std::nullopt;
        if (c.kind() == Chain::Kind::Lcm && !linear) return std::nullopt;
        chains.push_back(c);
    }
    std::vector<SetExpr> gens;
    auto push = [&](const SetExpr& g) {
        const SetExpr img = linear ? SetExpr::scale(f.affine_factor(), g) : SetExpr::image(f, g);
        if (!evaluate(img).is_exact()) return false;
        gens.push_back(img);
        return true;
    };
    if (p.generators().empty() && !push(SetExpr::all())) return std::nullopt;
    for (const auto& g : p.generators())
        if (!push(g.expr)) return std::nullopt;
    try {
        return FilterBase::make(std::move(gens), std::move(chains), cfg);
    } catch (const FipViolation&) {
        return std::nullopt;
    }
}

// The image filter of a finite-index class map is generated by the values of
// the classes that meet every core and chain intersection.
std::optional<BaseRef> class_image(const MapDescriptor& f, const FilterBase& p, const Config& cfg) {
    if (p.has_chain(Chain::Kind::Custom)) return std::nullopt;
    const Nat k = f.class_count();
    std::vector<Nat> vals;
    for (Nat r = 0; r < k; ++r) {
        const SplitSet cls(PeriodicSet::residue_class(r, k));
        const ChainKill dead = chain_kill(p.chains(), p.core_upper().intersect(cls), cfg);
        if (dead.state == ChainKill::State::Killed) continue;
        const ChainKill live = chain_kill(p.chains(), p.core_lower().intersect(cls), cfg);
        if (live.state != ChainKill::State::Never) return std::nullopt;
        vals.push_back(f.class_values()[r]);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.empty()) return std::nullopt;
    if (vals.size() == 1) return FilterBase::principal(vals.front());
    return FilterBase::make({SetExpr::finite(std::move(vals))}, {}, cfg);
}

}  // namespace

BaseRef pushforward(const MapDescriptor& f, const BaseRef& p, const Config& cfg) {
    if (!p) throw PreconditionError("pushforward of a null base");
    if (f.is_identity()) return p;
    if (const auto n = p->principal_point()) return FilterBase::principal(f.apply(*n));
    if (!p->is_plain()) return FilterBase::image(f, p);

    try {
        if (p->chains().empty() && p->core_exact() && p->core_lower().is_finite())
            return finite_image(f, p->core_lower(), cfg);
        std::optional<BaseRef> r;
        if (f.kind() == MapDescriptor::Kind::Affine && p->core_exact())
            r = affine_image(f, *p, cfg);
        else if (f.kind() == MapDescriptor::Kind::Class)
            r = class_image(f, *p, cfg);
        if (r) return *r;
    } catch (const CapacityError&) {
    }
    return FilterBase::image(f, p);
}

}  // namespace ufc
