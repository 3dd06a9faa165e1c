#include "ufc/divisibility/divisibility.hpp"

#include <stdexcept>

#include "ufc/relext/relation.hpp"
#include "ufc/setalg/render.hpp"

namespace ufc {

namespace {

constexpr Nat kCandidateChainModulus = Nat{1} << 10;

const FilterBase* as_base(const Point& p) { return dynamic_cast<const FilterBase*>(&p); }

}  // namespace

Verdict divides_nat(Nat n, const Point& p, const Config& cfg) {
    if (n == 0) throw PreconditionError("divides_nat requires n >= 1");
    return p.decide(SetExpr::multiples(n), cfg);
}

Verdict widemid(const Point& p, const Point& q, const Config& cfg) {
    Verdict main = ext_related(Relation::div(), p, q, cfg);
    const FilterBase* fb = as_base(p);
    if (!fb) return main;
    for (const auto& g : fb->generator_exprs()) {
        const Verdict vg = q.decide(SetExpr::up(g), cfg);
        if (!vg.is_refuted()) continue;
        if (main.is_entailed())
            throw std::logic_error("widemid: up(" + g.to_string() + ") is refuted by q but the extension holds");
        if (!main.decided()) {
            main = vg;
            main.note = "q refutes up(" + g.to_string() + ")";
        }
    }
    return main;
}

Verdict cfilter_entails(const Point& p, const SplitSet& a, const Config& cfg) {
    std::vector<QuotientClass> classes;
    try {
        classes = quotient_classes(a);
    } catch (const CapacityError&) {
        return Verdict::unknown(cfg.oracle_bound);
    }
    Outcome acc = Outcome::Entailed;
    Verdict last;
    for (const auto& c : classes) {
        const Verdict v = p.decide(SetBounds::exact(c.value), cfg);
        if (v.is_refuted()) {
            Verdict out = v;
            out.witness = c.condition.min_element();
            out.note = "A/n = " + render(c.value) + " is refuted for n in " + render(c.condition);
            return out;
        }
        acc = conjunction(acc, v.outcome);
        last = v;
    }
    if (acc != Outcome::Entailed) return Verdict::unknown(cfg.oracle_bound);
    last.note = "every quotient of A is entailed";
    return last;
}

Verdict dfilter_entails(const Point& p, const SplitSet& a, const Config& cfg) {
    return p.decide(SetBounds::exact(bset(a)), cfg);
}

Verdict leftdiv(const Point& p, const Point& q, const Config& cfg) {
    if (const auto k = p.principal_point()) {
        Verdict v = divides_nat(*k, q, cfg);
        v.note = "C(p) is generated by " + std::to_string(*k) + "N";
        return v;
    }
    std::vector<SetExpr> cands;
    if (const FilterBase* fb = as_base(p)) {
        cands = fb->generator_exprs();
        for (Nat k = 2;; ++k) {
            std::optional<SplitSet> ck;
            try {
                ck = chain_element(fb->chains(), k);
            } catch (const CapacityError&) {
            }
            if (fb->chains().empty() || !ck || ck->periodic_upper().modulus() > kCandidateChainModulus) break;
            cands.push_back(SetExpr::literal(*ck));
        }
    }
    for (Nat n = 2; n <= 32; ++n) cands.push_back(SetExpr::multiples(n));
    cands.push_back(SetExpr::primes());

    for (const auto& a : cands) {
        const SetBounds b = evaluate(a);
        if (!b.is_exact()) continue;
        if (!cfilter_entails(p, b.lower, cfg).is_entailed()) continue;
        Verdict v = q.decide(b, cfg);
        if (v.is_refuted()) {
            v.note = a.to_string() + " is in C(p) and refuted by q";
            return v;
        }
    }
    return Verdict::unknown(cfg.oracle_bound);
}

BaseRef quotient_base(Nat n, const BaseRef& p, const Config& cfg) {
    if (n == 0) throw PreconditionError("quotient_base requires n >= 1");
    if (!p->is_plain()) throw PreconditionError("quotient_base needs a plain base");
    std::vector<SetExpr> gens;
    for (const auto& g : p->generators()) gens.push_back(SetExpr::quotient(g.expr, n));
    std::vector<Chain> chains;
    for (const auto& c : p->chains()) {
        if (c.kind() != Chain::Kind::Custom) {
            chains.push_back(c);
            continue;
        }
        chains.push_back(Chain::custom(c.name() + "/" + std::to_string(n),
                                       [c, n](Nat k) { return SetExpr::quotient(c.element(k), n); }));
    }
    return FilterBase::make(std::move(gens), std::move(chains), cfg);
}

QuotientReconstruction reconstruct_from_quotient(Nat n, const BaseRef& p, const Config& cfg) {
    QuotientReconstruction r;
    try {
        r.base = quotient_base(n, p, cfg);
    } catch (const FipViolation& e) {
        if (!e.result().empty_subfamily.empty() || e.result().chain_depth) r.outcome = Outcome::Refuted;
        return r;
    }
    r.fip = true;
    const BaseRef back = left_mult(n, r.base, cfg);
    r.generators_entailed = true;
    for (const auto& g : p->generators())
        if (!back->decide(g.expr, cfg).is_entailed()) {
            r.generators_entailed = false;
            break;
        }
    r.outcome = r.generators_entailed ? Outcome::Entailed : Outcome::Unknown;
    return r;
}

}  // namespace ufc
