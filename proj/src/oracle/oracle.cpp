#include "ufc/oracle/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ufc::oracle {

namespace {

using Bits = BitVector;

std::size_t idx(Nat n) { return static_cast<std::size_t>(n); }

Bits table_for(Nat bound) {
    if (bound + 1 > kMaxTableBits) throw CapacityError("oracle table on [1," + std::to_string(bound) + "] exceeds capacity");
    return Bits(idx(bound) + 1);
}

Bits sieve(Nat bound) {
    Bits b = table_for(bound);
    if (bound < 2) return b;
    for (Nat n = 2; n <= bound; ++n) b.set(idx(n));
    for (Nat p = 2; p * p <= bound; ++p)
        if (b.test(idx(p)))
            for (Nat q = p * p; q <= bound; q += p) b.reset(idx(q));
    return b;
}

Bits eval(const SetExpr& e, Nat bound, Nat search);

// The argument is tabulated on [1, max(bound, search)]; fibre points above
// that are tested one at a time.
Bits eval_image(const SetExpr& e, Nat bound, Nat search) {
    const MapDescriptor& f = e.map();
    const SetExpr& child = e.child(0);
    const Nat dense = std::max(bound, search);
    const Bits arg = eval(child, dense, search);
    const auto in_arg = [&](Nat y) { return y <= dense ? arg.test(idx(y)) : child.member(y, search); };
    Bits out = table_for(bound);
    std::vector<bool> open(idx(bound) + 1, false);
    for (Nat v = 1; v <= bound; ++v) {
        const auto fib = f.fiber(v);
        if (!fib)
            open[idx(v)] = true;
        else if (std::any_of(fib->begin(), fib->end(), in_arg))
            out.set(idx(v));
    }
    for (auto y = arg.find_next(1); y; y = arg.find_next(*y + 1)) {
        const Nat v = f.apply(static_cast<Nat>(*y));
        if (v >= 1 && v <= bound && open[idx(v)]) out.set(idx(v));
    }
    return out;
}

Bits eval(const SetExpr& e, Nat bound, Nat search) {
    switch (e.kind()) {
        case ExprKind::AllN: {
            Bits b = table_for(bound);
            b.flip();
            b.reset(0);
            return b;
        }
        case ExprKind::Multiples: {
            Bits b = table_for(bound);
            for (Nat n = e.param(); n <= bound; n += e.param()) b.set(idx(n));
            return b;
        }
        case ExprKind::Progression: {
            Bits b = table_for(bound);
            for (Nat n = e.param(); n <= bound; n += e.param2()) b.set(idx(n));
            return b;
        }
        case ExprKind::Finite: {
            Bits b = table_for(bound);
            for (Nat n : e.elements())
                if (n <= bound) b.set(idx(n));
            return b;
        }
        case ExprKind::Primes: return sieve(bound);
        case ExprKind::Tail: {
            Bits b = table_for(bound);
            for (Nat n = e.param(); n <= bound; ++n) b.set(idx(n));
            return b;
        }
        case ExprKind::Literal: {
            Bits b = table_for(bound);
            const SplitSet& s = e.literal_value();
            for (Nat n = 1; n <= bound; ++n)
                if (s.contains(n)) b.set(idx(n));
            return b;
        }
        case ExprKind::Complement: {
            Bits b = eval(e.child(0), bound, search);
            b.flip();
            b.reset(0);
            return b;
        }
        case ExprKind::Union: return eval(e.child(0), bound, search) | eval(e.child(1), bound, search);
        case ExprKind::Intersect: return eval(e.child(0), bound, search) & eval(e.child(1), bound, search);
        case ExprKind::Quotient: {
            const Nat n = e.param();
            const auto wide = checked_mul(n, bound);
            if (!wide) throw CapacityError("oracle quotient range overflows");
            const Bits arg = eval(e.child(0), *wide, search);
            Bits b = table_for(bound);
            for (Nat m = 1; m <= bound; ++m)
                if (arg.test(idx(m * n))) b.set(idx(m));
            return b;
        }
        case ExprKind::Scale: {
            const Nat n = e.param();
            Bits b = table_for(bound);
            if (bound / n == 0) return b;
            const Bits arg = eval(e.child(0), bound / n, search);
            for (Nat j = 1; j <= bound / n; ++j)
                if (arg.test(idx(j))) b.set(idx(j * n));
            return b;
        }
        case ExprKind::UpClosure: {
            const Bits arg = eval(e.child(0), bound, search);
            Bits b = table_for(bound);
            for (Nat d = 1; d <= bound; ++d) {
                if (!arg.test(idx(d)) || b.test(idx(d))) continue;
                for (Nat m = d; m <= bound; m += d) b.set(idx(m));
            }
            return b;
        }
        case ExprKind::Image: return eval_image(e, bound, search);
    }
    return table_for(bound);
}

CheckReport pass(const std::string& op) { return {op, true, std::nullopt, {}}; }

CheckReport fail(const std::string& op, std::optional<Nat> at, std::string detail) {
    return {op, false, at, std::move(detail)};
}

bool proof_holds(const Proof& p, Nat bound, Nat& at) {
    for (Nat n = 1; n <= bound; ++n) {
        if (!p.lhs_contains(n)) continue;
        const bool r = p.rhs.contains(n);
        if ((p.relation == Proof::Relation::Subset) != r) {
            at = n;
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Nat> BoundedUniverse::members(std::size_t cap) const {
    std::vector<Nat> out;
    for (auto i = bits.find_next(1); i && out.size() < cap; i = bits.find_next(*i + 1)) out.push_back(static_cast<Nat>(*i));
    return out;
}

BoundedUniverse eval_bounded(const SetExpr& e, Nat bound, Nat search) {
    if (bound == 0) throw PreconditionError("oracle bound must be at least 1");
    return {bound, eval(e, bound, std::max(bound, search))};
}

BoundedUniverse tabulate(const std::function<bool(Nat)>& member, Nat bound) {
    if (bound == 0) throw PreconditionError("oracle bound must be at least 1");
    Bits b = table_for(bound);
    for (Nat n = 1; n <= bound; ++n)
        if (member(n)) b.set(idx(n));
    return {bound, std::move(b)};
}

BoundedUniverse relation_image(const Relation& rho, const BoundedUniverse& a, Nat bound) {
    if (bound == 0) throw PreconditionError("oracle bound must be at least 1");
    if (a.bound < bound) throw PreconditionError("relation image needs its argument on at least [1, bound]");
    Bits out = table_for(bound);
    const auto first = a.bits.find_next(1);
    if (!first) return {bound, std::move(out)};
    const bool inv = rho.inverted();
    switch (rho.tag()) {
        case Relation::Tag::Div:
            if (!inv) {
                for (Nat d = 1; d <= bound; ++d)
                    if (a.contains(d))
                        for (Nat m = d; m <= bound; m += d) out.set(idx(m));
            } else {
                for (Nat x = 1; x <= a.bound; ++x)
                    if (a.contains(x))
                        for (Nat d : divisors(x))
                            if (d <= bound) out.set(idx(d));
            }
            break;
        case Relation::Tag::Leq: {
            if (!inv) {
                for (Nat n = static_cast<Nat>(*first); n <= bound; ++n) out.set(idx(n));
            } else {
                Nat top = 0;
                for (auto i = first; i; i = a.bits.find_next(*i + 1)) top = static_cast<Nat>(*i);
                for (Nat n = 1; n <= std::min(top, bound); ++n) out.set(idx(n));
            }
            break;
        }
        case Relation::Tag::Kernel: {
            const MapDescriptor& h = rho.kernel_map();
            std::set<Nat> values;
            for (auto i = first; i; i = a.bits.find_next(*i + 1)) values.insert(h.apply(static_cast<Nat>(*i)));
            for (Nat n = 1; n <= bound; ++n)
                if (values.count(h.apply(n))) out.set(idx(n));
            break;
        }
        case Relation::Tag::Table: {
            const Nat u = *rho.universe();
            for (Nat x = 1; x <= std::min(u, a.bound); ++x) {
                if (!a.contains(x)) continue;
                for (Nat n = 1; n <= std::min(u, bound); ++n)
                    if (rho.related(x, n).value_or(false)) out.set(idx(n));
            }
            break;
        }
    }
    return {bound, std::move(out)};
}

CheckReport cross_check(const std::string& op, const SetExpr& e, const SetBounds& symbolic, Nat bound) {
    const BoundedUniverse t = eval_bounded(e, bound);
    for (Nat n = 1; n <= bound; ++n) {
        const bool in = t.contains(n);
        if (symbolic.lower.contains(n) && !in)
            return fail(op, n, std::to_string(n) + " is in the symbolic lower bound but not in " + e.to_string());
        if (!symbolic.upper.contains(n) && in)
            return fail(op, n, std::to_string(n) + " is in " + e.to_string() + " but not in the symbolic upper bound");
    }
    return pass(op);
}

CheckReport cross_check(const std::string& op, const SetExpr& e, const PeriodicSet& symbolic, Nat bound) {
    const SplitSet s(symbolic);
    return cross_check(op, e, SetBounds::exact(s), bound);
}

CheckReport cross_check(const std::string& op, const BoundedUniverse& expected, const BoundedUniverse& actual) {
    if (expected.bound != actual.bound) return fail(op, std::nullopt, "tables have different bounds");
    if (expected.bits == actual.bits) return pass(op);
    const BitVector diff = expected.bits ^ actual.bits;
    const Nat at = static_cast<Nat>(*diff.find_first());
    std::ostringstream os;
    os << at << (expected.contains(at) ? " expected but missing" : " present but not expected");
    return fail(op, at, os.str());
}

CheckReport cross_check(const std::string& op, const Verdict& v, const std::optional<SetExpr>& query, Nat bound) {
    if (!v.decided()) return pass(op);
    if (v.proof) {
        Nat at = 0;
        if (!proof_holds(*v.proof, bound, at))
            return fail(op, at, "proof relation fails at " + std::to_string(at));
    }
    if (query && v.witness && *v.witness <= bound) {
        const bool in = eval_bounded(*query, *v.witness).contains(*v.witness);
        if (in != v.is_entailed())
            return fail(op, *v.witness,
                        "witness " + std::to_string(*v.witness) + (in ? " lies in " : " lies outside ") + query->to_string());
    }
    return pass(op);
}

CheckReport cross_check(const std::string& op, const Verdict& v, bool truth) {
    if (!v.decided() || v.is_entailed() == truth) return pass(op);
    return fail(op, std::nullopt, std::string("verdict ") + std::string(outcome_name(v.outcome)) + " contradicts " +
                                      (truth ? "true" : "false"));
}

}  // namespace ufc::oracle
