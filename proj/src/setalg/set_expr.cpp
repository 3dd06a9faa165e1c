#include "ufc/setalg/set_expr.hpp"

#include <algorithm>
#include <sstream>

#include "ufc/setalg/closure.hpp"
#include "ufc/setalg/render.hpp"

namespace ufc {

struct SetExpr::Node {
    ExprKind kind = ExprKind::AllN;
    Nat a = 0;
    Nat b = 0;
    std::vector<Nat> elems;
    std::vector<SetExpr> kids;
    std::optional<MapDescriptor> map;
    std::optional<SplitSet> lit;
};

std::shared_ptr<SetExpr::Node> SetExpr::make_node(ExprKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

SetExpr::SetExpr() : node_(make_node(ExprKind::AllN)) {}

SetExpr SetExpr::all() { return SetExpr(); }

SetExpr SetExpr::multiples(Nat n) {
    if (n == 0) throw PreconditionError("multiples requires n >= 1");
    auto p = make_node(ExprKind::Multiples);
    p->a = n;
    return SetExpr(p);
}

SetExpr SetExpr::progression(Nat a, Nat m) {
    if (a == 0 || m == 0) throw PreconditionError("progression requires a >= 1 and m >= 1");
    auto p = make_node(ExprKind::Progression);
    p->a = a;
    p->b = m;
    return SetExpr(p);
}

SetExpr SetExpr::finite(std::vector<Nat> elements) {
    for (Nat x : elements)
        if (x == 0) throw PreconditionError("0 is not a natural number here");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    auto p = make_node(ExprKind::Finite);
    p->elems = std::move(elements);
    return SetExpr(p);
}

SetExpr SetExpr::primes() { return SetExpr(make_node(ExprKind::Primes)); }

SetExpr SetExpr::tail(Nat k) {
    if (k == 0) throw PreconditionError("tail requires k >= 1");
    auto p = make_node(ExprKind::Tail);
    p->a = k;
    return SetExpr(p);
}

SetExpr SetExpr::literal(const SplitSet& s) {
    auto p = make_node(ExprKind::Literal);
    p->lit = s;
    return SetExpr(p);
}

SetExpr SetExpr::quotient(const SetExpr& e, Nat n) {
    if (n == 0) throw PreconditionError("quotient requires n >= 1");
    auto p = make_node(ExprKind::Quotient);
    p->a = n;
    p->kids = {e};
    return SetExpr(p);
}

SetExpr SetExpr::scale(Nat n, const SetExpr& e) {
    if (n == 0) throw PreconditionError("scale requires n >= 1");
    auto p = make_node(ExprKind::Scale);
    p->a = n;
    p->kids = {e};
    return SetExpr(p);
}

SetExpr SetExpr::up(const SetExpr& e) {
    auto p = make_node(ExprKind::UpClosure);
    p->kids = {e};
    return SetExpr(p);
}

SetExpr SetExpr::image(const MapDescriptor& f, const SetExpr& e) {
    auto p = make_node(ExprKind::Image);
    p->map = f;
    p->kids = {e};
    return SetExpr(p);
}

SetExpr operator!(const SetExpr& e) {
    auto p = SetExpr::make_node(ExprKind::Complement);
    p->kids = {e};
    return SetExpr(p);
}

SetExpr operator&(const SetExpr& a, const SetExpr& b) {
    auto p = SetExpr::make_node(ExprKind::Intersect);
    p->kids = {a, b};
    return SetExpr(p);
}

SetExpr operator|(const SetExpr& a, const SetExpr& b) {
    auto p = SetExpr::make_node(ExprKind::Union);
    p->kids = {a, b};
    return SetExpr(p);
}

ExprKind SetExpr::kind() const noexcept { return node_->kind; }
Nat SetExpr::param() const noexcept { return node_->a; }
Nat SetExpr::param2() const noexcept { return node_->b; }
const std::vector<Nat>& SetExpr::elements() const noexcept { return node_->elems; }
std::size_t SetExpr::arity() const noexcept { return node_->kids.size(); }
const SetExpr& SetExpr::child(std::size_t i) const { return node_->kids.at(i); }

const MapDescriptor& SetExpr::map() const {
    if (!node_->map) throw PreconditionError("expression has no map");
    return *node_->map;
}

const SplitSet& SetExpr::literal_value() const {
    if (!node_->lit) throw PreconditionError("expression is not a literal");
    return *node_->lit;
}

bool SetExpr::member(Nat n, Nat search) const {
    if (n == 0) return false;
    const Node& x = *node_;
    switch (x.kind) {
        case ExprKind::AllN: return true;
        case ExprKind::Multiples: return n % x.a == 0;
        case ExprKind::Progression: return n >= x.a && (n - x.a) % x.b == 0;
        case ExprKind::Finite: return std::binary_search(x.elems.begin(), x.elems.end(), n);
        case ExprKind::Primes: return is_prime(n);
        case ExprKind::Tail: return n >= x.a;
        case ExprKind::Literal: return x.lit->contains(n);
        case ExprKind::Complement: return !x.kids[0].member(n, search);
        case ExprKind::Union: return x.kids[0].member(n, search) || x.kids[1].member(n, search);
        case ExprKind::Intersect: return x.kids[0].member(n, search) && x.kids[1].member(n, search);
        case ExprKind::Quotient: return x.kids[0].member(mul_or_throw(n, x.a, "quotient membership"), search);
        case ExprKind::Scale: return n % x.a == 0 && x.kids[0].member(n / x.a, search);
        case ExprKind::UpClosure: {
            for (Nat d : divisors(n))
                if (x.kids[0].member(d, search)) return true;
            return false;
        }
        case ExprKind::Image: {
            const MapDescriptor& f = *x.map;
            const SetExpr& arg = x.kids[0];
            if (const auto fib = f.fiber(n)) {
                return std::any_of(fib->begin(), fib->end(), [&](Nat y) { return arg.member(y, search); });
            }
            if (f.kind() == MapDescriptor::Kind::Class) {
                const Nat k = f.class_count();
                const SetBounds b = evaluate(arg);
                bool open = false;
                for (Nat r = 0; r < k; ++r) {
                    if (f.class_values()[r] != n) continue;
                    const SplitSet cls(PeriodicSet::residue_class(r, k));
                    if (!b.lower.disjoint_from(cls)) return true;
                    if (!b.upper.disjoint_from(cls)) open = true;
                }
                if (!open) return false;
            }
            for (Nat y = 1; y <= search; ++y)
                if (f.apply(y) == n && arg.member(y, search)) return true;
            return false;
        }
    }
    return false;
}

std::string SetExpr::to_string() const {
    const Node& x = *node_;
    std::ostringstream os;
    switch (x.kind) {
        case ExprKind::AllN: os << "N"; break;
        case ExprKind::Multiples: os << x.a << "N"; break;
        case ExprKind::Progression: os << "prog(" << x.a << "," << x.b << ")"; break;
        case ExprKind::Finite: os << "{" << join_nats(x.elems) << "}"; break;
        case ExprKind::Primes: os << "P"; break;
        case ExprKind::Tail: os << "[" << x.a << ",inf)"; break;
        case ExprKind::Literal: os << "(" << render(*x.lit) << ")"; break;
        case ExprKind::Complement: os << "!(" << x.kids[0].to_string() << ")"; break;
        case ExprKind::Union: os << "(" << x.kids[0].to_string() << " | " << x.kids[1].to_string() << ")"; break;
        case ExprKind::Intersect: os << "(" << x.kids[0].to_string() << " & " << x.kids[1].to_string() << ")"; break;
        case ExprKind::Quotient: os << "(" << x.kids[0].to_string() << " / " << x.a << ")"; break;
        case ExprKind::Scale: os << "(" << x.a << " * " << x.kids[0].to_string() << ")"; break;
        case ExprKind::UpClosure: os << "up(" << x.kids[0].to_string() << ")"; break;
        case ExprKind::Image: os << "image(" << x.map->render() << ", " << x.kids[0].to_string() << ")"; break;
    }
    return os.str();
}

namespace {

SplitSet scale_lower(const SplitSet& s, Nat n) {
    if (auto r = s.scale(n)) return *r;
    return SplitSet(s.periodic_lower().scale(n));
}

SplitSet scale_upper(const SplitSet& s, Nat n) {
    if (auto r = s.scale(n)) return *r;
    return SplitSet(s.periodic_upper().scale(n));
}

SetBounds eval_node(const SetExpr& e) {
    switch (e.kind()) {
        case ExprKind::AllN: return SetBounds::exact(SplitSet(PeriodicSet::all()));
        case ExprKind::Multiples: return SetBounds::exact(SplitSet(PeriodicSet::multiples(e.param())));
        case ExprKind::Progression:
            return SetBounds::exact(SplitSet(PeriodicSet::progression(e.param(), e.param2())));
        case ExprKind::Finite: return SetBounds::exact(SplitSet(PeriodicSet::finite(e.elements())));
        case ExprKind::Primes: return SetBounds::exact(SplitSet::primes());
        case ExprKind::Tail: return SetBounds::exact(SplitSet(PeriodicSet::tail(e.param())));
        case ExprKind::Literal: return SetBounds::exact(e.literal_value());
        case ExprKind::Complement: return evaluate(e.child(0)).complement();
        case ExprKind::Union: {
            const SetBounds a = evaluate(e.child(0));
            const SetBounds b = evaluate(e.child(1));
            return {a.lower.unite(b.lower), a.upper.unite(b.upper)};
        }
        case ExprKind::Intersect: {
            const SetBounds a = evaluate(e.child(0));
            const SetBounds b = evaluate(e.child(1));
            return {a.lower.intersect(b.lower), a.upper.intersect(b.upper)};
        }
        case ExprKind::Quotient: {
            const SetBounds a = evaluate(e.child(0));
            if (a.is_exact()) return SetBounds::exact(a.lower.quotient(e.param()));
            return {a.lower.quotient(e.param()), a.upper.quotient(e.param())};
        }
        case ExprKind::Scale: {
            const SetBounds a = evaluate(e.child(0));
            if (a.is_exact())
                if (auto s = a.lower.scale(e.param())) return SetBounds::exact(*s);
            return {scale_lower(a.lower, e.param()), scale_upper(a.upper, e.param())};
        }
        case ExprKind::UpClosure: {
            const SetBounds a = evaluate(e.child(0));
            if (a.is_exact()) return up_closure(a.lower).bounds;
            return {up_closure(a.lower).bounds.lower, up_closure(a.upper).bounds.upper};
        }
        case ExprKind::Image: {
            const SetBounds a = evaluate(e.child(0));
            if (a.is_exact()) return e.map().image(a.lower);
            return {e.map().image(a.lower).lower, e.map().image(a.upper).upper};
        }
    }
    return SetBounds::unknown();
}

bool normalizes(const SetExpr& e) { return evaluate(e).periodic().has_value(); }

std::string obstruction(const SetExpr& e) {
    try {
        switch (e.kind()) {
            case ExprKind::Primes: return "the primes are not eventually periodic";
            case ExprKind::UpClosure: {
                const SetBounds a = evaluate(e.child(0));
                auto r = up_closure(a.lower);
                return r.exact ? "up-closure of this argument is not eventually periodic" : r.reason;
            }
            case ExprKind::Image:
                return "image under " + e.map().render() + " has no eventually periodic form";
            default: (void)eval_node(e); break;
        }
    } catch (const CapacityError& err) {
        return err.what();
    }
    return "no eventually periodic form";
}

}  // namespace

SetBounds evaluate(const SetExpr& e) {
    try {
        return eval_node(e);
    } catch (const CapacityError&) {
        return SetBounds::unknown();
    }
}

Normalized normalize(const SetExpr& e) {
    const SetBounds b = evaluate(e);
    if (auto p = b.periodic()) return *p;
    SetExpr node = e;
    for (bool descended = true; descended;) {
        descended = false;
        for (std::size_t i = 0; i < node.arity(); ++i) {
            if (!normalizes(node.child(i))) {
                SetExpr next = node.child(i);
                node = next;
                descended = true;
                break;
            }
        }
    }
    return NotRepresentable{node, obstruction(node), b};
}

}  // namespace ufc
