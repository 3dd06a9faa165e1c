#include "ufc/product/product.hpp"

#include "ufc/setalg/closure.hpp"
#include "ufc/setalg/render.hpp"

namespace ufc {

namespace {

std::optional<Nat> principal_product(const Point& p, const Point& q) {
    const auto m = p.principal_point();
    const auto n = q.principal_point();
    if (!m || !n) return std::nullopt;
    return checked_mul(*m, *n);
}

Verdict scaled_witness(Verdict v, Nat m) {
    if (v.witness) v.witness = checked_mul(*v.witness, m);
    return v;
}

// An outer witness n satisfies A/n in q (or its negation); the element of A
// (or of its complement) is n times the inner witness.
Verdict lift_outer_witness(Verdict v, const SetBounds& a, const Point& q, const Config& cfg) {
    if (!v.witness) return v;
    const Nat n = *v.witness;
    v.witness.reset();
    const SplitSet& side = v.is_entailed() ? a.lower : a.upper;
    const Verdict inner = q.decide(SetBounds::exact(side.quotient(n)), cfg);
    if (inner.outcome == v.outcome && inner.witness) v.witness = checked_mul(*inner.witness, n);
    return v;
}

// Union of the conditions of the classes whose value q decides as `want`.
SplitSet decided_classes(const std::vector<QuotientClass>& cls, const Point& q, Outcome want, const Config& cfg) {
    SplitSet t;
    for (const auto& c : cls)
        if (q.decide(SetBounds::exact(c.value), cfg).outcome == want) t = t.unite(c.condition);
    return t;
}

}  // namespace

Verdict product_member(const SetBounds& a, const Point& p, const Point& q, const Config& cfg) {
    if (const auto mn = principal_product(p, q)) {
        Verdict v = a.lower.contains(*mn) ? Verdict::entailed()
                    : !a.upper.contains(*mn) ? Verdict::refuted()
                                             : Verdict::unknown(cfg.oracle_bound);
        if (v.decided()) v.witness = *mn;
        return v;
    }
    try {
        if (const auto m = p.principal_point()) {
            const SetBounds quot{a.lower.quotient(*m), a.upper.quotient(*m)};
            return scaled_witness(q.decide(quot, cfg), *m);
        }
        const auto lo = quotient_classes(a.lower);
        const auto hi = a.is_exact() ? lo : quotient_classes(a.upper);
        const SplitSet pessimistic = decided_classes(lo, q, Outcome::Entailed, cfg);
        Verdict v = p.decide(SetBounds::exact(pessimistic), cfg);
        if (v.is_entailed()) {
            v.note = "outer set " + render(pessimistic);
            return lift_outer_witness(std::move(v), a, q, cfg);
        }
        const SplitSet optimistic = decided_classes(hi, q, Outcome::Refuted, cfg).complement();
        v = p.decide(SetBounds::exact(optimistic), cfg);
        if (v.is_refuted()) {
            v.note = "outer set " + render(optimistic);
            return lift_outer_witness(std::move(v), a, q, cfg);
        }
    } catch (const CapacityError&) {
    }
    return Verdict::unknown(cfg.oracle_bound);
}

Verdict product_member(const SetExpr& a, const Point& p, const Point& q, const Config& cfg) {
    if (const auto mn = principal_product(p, q)) {
        Verdict v = Verdict::of(a.member(*mn, cfg.oracle_bound));
        v.witness = *mn;
        return v;
    }
    if (const auto m = p.principal_point()) return scaled_witness(q.decide(SetExpr::quotient(a, *m), cfg), *m);
    return product_member(evaluate(a), p, q, cfg);
}

ProductPoint::ProductPoint(PointRef left, PointRef right) : left_(std::move(left)), right_(std::move(right)) {
    if (!left_ || !right_) throw PreconditionError("product of a null point");
}

Verdict ProductPoint::decide(const SetBounds& a, const Config& cfg) const {
    return product_member(a, *left_, *right_, cfg);
}

Verdict ProductPoint::decide(const SetExpr& a, const Config& cfg) const {
    return product_member(a, *left_, *right_, cfg);
}

std::optional<Nat> ProductPoint::principal_point() const { return principal_product(*left_, *right_); }

std::string ProductPoint::describe() const { return "(" + left_->describe() + " * " + right_->describe() + ")"; }

PointRef product(PointRef p, PointRef q) { return std::make_shared<ProductPoint>(std::move(p), std::move(q)); }

BaseRef left_mult(Nat n, const BaseRef& q, const Config& cfg) {
    if (n == 0) throw PreconditionError("left_mult requires n >= 1");
    return pushforward(MapDescriptor::scaling(n), q, cfg);
}

std::vector<SetExpr> default_probes(const FilterBase& q) {
    std::vector<SetExpr> probes = q.generator_exprs();
    for (Nat n = 1; n <= 32; ++n) probes.push_back(SetExpr::multiples(n));
    probes.push_back(SetExpr::primes());
    return probes;
}

Verdict verify_factorization(const BaseRef& q, const PointRef& r, const PointRef& p, const PointRef& s,
                             const Config& cfg, std::optional<std::vector<SetExpr>> probes) {
    if (!q) throw PreconditionError("verify_factorization needs q");
    const ProductPoint rhs(r, product(p, s));
    const bool defaults = !probes;
    const std::vector<SetExpr> family = defaults ? default_probes(*q) : std::move(*probes);
    bool all_decided = true;
    for (const auto& a : family) {
        const Verdict lhs = q->decide(a, cfg);
        const Verdict right = rhs.decide(a, cfg);
        if (lhs.decided() && right.decided() && lhs.outcome != right.outcome) {
            Verdict v = Verdict::refuted();
            v.witness = right.witness ? right.witness : lhs.witness;
            v.note = "probe " + a.to_string() + ": q is " + std::string(outcome_name(lhs.outcome)) + ", " +
                     rhs.describe() + " is " + std::string(outcome_name(right.outcome));
            return v;
        }
        if (!lhs.decided() || !right.decided()) all_decided = false;
    }
    const bool generating = defaults && q->is_plain() && q->chains().empty();
    if (!all_decided || !generating) {
        Verdict v = Verdict::unknown(cfg.oracle_bound);
        v.note = all_decided ? "probes do not generate q" : "some probes are undecided";
        return v;
    }
    Verdict v = Verdict::entailed();
    v.witness = rhs.principal_point() ? rhs.principal_point() : q->fip_witness();
    v.note = "all " + std::to_string(family.size()) + " probes agree";
    return v;
}

}  // namespace ufc
