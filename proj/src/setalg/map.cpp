#include "ufc/setalg/map.hpp"

#include <algorithm>
#include <sstream>

namespace ufc {

namespace {

constexpr Nat kPrefixSearch = 1000;

Nat mod_signed(std::int64_t b, Nat m) {
    const auto mm = static_cast<std::int64_t>(m);
    return static_cast<Nat>(((b % mm) + mm) % mm);
}

SplitSet finite_image(const MapDescriptor& f, const SplitSet& s) {
    std::vector<Nat> out;
    for (Nat x : s.finite_elements()) out.push_back(f.apply(x));
    return SplitSet(PeriodicSet::finite(std::move(out)));
}

PeriodicSet affine_image(const PeriodicSet& s, Nat a, std::int64_t b) {
    if (s.is_finite()) {
        std::vector<Nat> out;
        for (Nat x : s.finite_elements())
            out.push_back(static_cast<Nat>(static_cast<std::int64_t>(mul_or_throw(a, x, "affine image")) + b));
        return PeriodicSet::finite(std::move(out));
    }
    const Nat m = s.modulus();
    const Nat big = mul_or_throw(a, m, "affine image");
    if (big > kMaxModulus) throw CapacityError("affine image modulus exceeds limit");
    const Nat first = static_cast<Nat>(static_cast<std::int64_t>(a) + b);  // f(1)
    if (first > kMaxModulus) throw CapacityError("affine offset exceeds limit");
    BitVector bits(big);
    const Nat bm = mod_signed(b, big);
    for (Nat r = 0; r < m; ++r)
        if (s.has_residue(r)) bits.set((a * r + bm) % big);
    std::vector<Nat> cands;
    for (Nat y = 1; y < first; ++y) cands.push_back(y);
    for (Nat c : s.corrections())
        cands.push_back(static_cast<Nat>(static_cast<std::int64_t>(mul_or_throw(a, c, "affine image")) + b));
    return PeriodicSet::build(big, std::move(bits), std::move(cands), [&](Nat y) {
        if (y < first) return false;
        const auto d = static_cast<std::int64_t>(y) - b;
        if (d % static_cast<std::int64_t>(a) != 0) return false;
        return s.contains(static_cast<Nat>(d) / a);
    });
}

PeriodicSet affine_preimage(const PeriodicSet& s, Nat a, std::int64_t b) {
    const Nat m = s.modulus();
    BitVector bits(m);
    const Nat am = a % m;
    const Nat bm = mod_signed(b, m);
    for (Nat r = 0; r < m; ++r)
        if (s.has_residue((am * r + bm) % m)) bits.set(r);
    const auto first = static_cast<std::int64_t>(a) + b;
    std::vector<Nat> cands;
    for (Nat c : s.corrections()) {
        const auto ci = static_cast<std::int64_t>(c);
        if (ci >= first && (ci - b) % static_cast<std::int64_t>(a) == 0) cands.push_back(static_cast<Nat>(ci - b) / a);
    }
    return PeriodicSet::build(m, std::move(bits), std::move(cands), [&](Nat x) {
        return s.contains(static_cast<Nat>(static_cast<std::int64_t>(mul_or_throw(a, x, "affine preimage")) + b));
    });
}

PeriodicSet square_residue_upper(const PeriodicSet& u) {
    const Nat m = u.modulus();
    BitVector bits(m);
    for (Nat r = 0; r < m; ++r)
        if (u.has_residue(r)) bits.set(static_cast<Nat>(static_cast<unsigned __int128>(r) * r % m));
    std::vector<Nat> squares;
    for (Nat a : u.added()) squares.push_back(mul_or_throw(a, a, "square image"));
    const PeriodicSet pattern = PeriodicSet::build(m, std::move(bits), {}, {});
    return pattern.unite(PeriodicSet::finite(std::move(squares)));
}

}  // namespace

MapDescriptor MapDescriptor::affine(Nat a, std::int64_t b) {
    if (a == 0 || static_cast<std::int64_t>(a) + b < 1)
        throw PreconditionError("affine map n -> a n + b needs a >= 1 and a + b >= 1");
    MapDescriptor f;
    f.kind_ = Kind::Affine;
    f.a_ = a;
    f.b_ = b;
    f.name_ = f.render();
    return f;
}

MapDescriptor MapDescriptor::class_map(std::vector<Nat> values) {
    if (values.empty()) throw PreconditionError("class map needs at least one class");
    for (Nat v : values)
        if (v == 0) throw PreconditionError("class map values must be >= 1");
    MapDescriptor f;
    f.kind_ = Kind::Class;
    f.values_ = std::move(values);
    f.name_ = f.render();
    return f;
}

MapDescriptor MapDescriptor::mod_classes(Nat k) {
    if (k == 0) throw PreconditionError("mod_classes requires k >= 1");
    std::vector<Nat> v(k);
    for (Nat r = 0; r < k; ++r) v[r] = r == 0 ? k : r;
    return class_map(std::move(v));
}

MapDescriptor MapDescriptor::square() {
    MapDescriptor f;
    f.kind_ = Kind::Square;
    f.name_ = "square";
    return f;
}

MapDescriptor MapDescriptor::named(std::string name, Fn fn, FiberFn fiber) {
    if (!fn) throw PreconditionError("named map '" + name + "' has neither an image rule nor an oracle");
    MapDescriptor f;
    f.kind_ = Kind::Named;
    f.name_ = std::move(name);
    f.fn_ = std::make_shared<const Fn>(std::move(fn));
    if (fiber) f.fiber_ = std::make_shared<const FiberFn>(std::move(fiber));
    return f;
}

MapDescriptor MapDescriptor::spf_quotient() {
    return named(
        "spf_quotient", [](Nat n) { return n == 1 ? Nat{1} : n / smallest_prime_factor(n); },
        [](Nat y) -> std::optional<std::vector<Nat>> {
            // y = 1 is hit by 1 and by every prime.
            if (y == 1) return std::nullopt;
            std::vector<Nat> xs;
            const Nat s = smallest_prime_factor(y);
            for (Nat p = 2; p <= s; ++p)
                if (is_prime(p)) xs.push_back(y * p);
            return xs;
        });
}

Nat MapDescriptor::apply(Nat n) const {
    switch (kind_) {
        case Kind::Affine: {
            const Nat ax = mul_or_throw(a_, n, "affine map");
            return static_cast<Nat>(static_cast<std::int64_t>(ax) + b_);
        }
        case Kind::Class: return values_[n % values_.size()];
        case Kind::Square: return mul_or_throw(n, n, "square map");
        case Kind::Named: return (*fn_)(n);
    }
    return 0;
}

std::optional<std::vector<Nat>> MapDescriptor::fiber(Nat y) const {
    switch (kind_) {
        case Kind::Affine: {
            const auto d = static_cast<std::int64_t>(y) - b_;
            if (d >= static_cast<std::int64_t>(a_) && d % static_cast<std::int64_t>(a_) == 0)
                return std::vector<Nat>{static_cast<Nat>(d) / a_};
            return std::vector<Nat>{};
        }
        case Kind::Class: {
            if (std::find(values_.begin(), values_.end(), y) == values_.end()) return std::vector<Nat>{};
            return std::nullopt;
        }
        case Kind::Square: {
            const Nat r = isqrt(y);
            if (r * r == y) return std::vector<Nat>{r};
            return std::vector<Nat>{};
        }
        case Kind::Named:
            if (fiber_) return (*fiber_)(y);
            return std::nullopt;
    }
    return std::nullopt;
}

SetBounds MapDescriptor::image(const SplitSet& s) const {
    if (s.is_finite()) return SetBounds::exact(finite_image(*this, s));
    switch (kind_) {
        case Kind::Affine: {
            if (is_identity()) return SetBounds::exact(s);
            if (const auto& per = s.as_periodic()) return SetBounds::exact(affine_image(*per, a_, b_));
            return {SplitSet(affine_image(s.periodic_lower(), a_, b_)),
                    SplitSet(affine_image(s.periodic_upper(), a_, b_))};
        }
        case Kind::Class: {
            std::vector<Nat> out;
            const Nat k = values_.size();
            for (Nat r = 0; r < k; ++r)
                if (!s.disjoint_from(SplitSet(PeriodicSet::residue_class(r, k)))) out.push_back(values_[r]);
            return SetBounds::exact(SplitSet(PeriodicSet::finite(std::move(out))));
        }
        case Kind::Square: {
            auto lower = image_of_prefix([&](Nat x) { return s.contains(x); }, kPrefixSearch);
            return {SplitSet(PeriodicSet::finite(std::move(lower))), SplitSet(square_residue_upper(s.periodic_upper()))};
        }
        case Kind::Named: {
            auto lower = image_of_prefix([&](Nat x) { return s.contains(x); }, kPrefixSearch);
            return {SplitSet(PeriodicSet::finite(std::move(lower))), SplitSet(PeriodicSet::all())};
        }
    }
    return SetBounds::unknown();
}

SetBounds MapDescriptor::preimage(const SplitSet& s) const {
    switch (kind_) {
        case Kind::Affine: {
            if (is_identity()) return SetBounds::exact(s);
            if (b_ == 0) return SetBounds::exact(s.quotient(a_));
            if (const auto& per = s.as_periodic()) return SetBounds::exact(affine_preimage(*per, a_, b_));
            return {SplitSet(affine_preimage(s.periodic_lower(), a_, b_)),
                    SplitSet(affine_preimage(s.periodic_upper(), a_, b_))};
        }
        case Kind::Class: {
            const Nat k = values_.size();
            BitVector bits(k);
            for (Nat r = 0; r < k; ++r)
                if (s.contains(values_[r])) bits.set(r);
            return SetBounds::exact(SplitSet(PeriodicSet::build(k, std::move(bits), {}, {})));
        }
        case Kind::Square: {
            // x^2 is never prime, so only the off-prime part matters.
            const PeriodicSet& y = s.off_primes();
            const Nat m = y.modulus();
            BitVector bits(m);
            for (Nat r = 0; r < m; ++r)
                if (y.has_residue(static_cast<Nat>(static_cast<unsigned __int128>(r) * r % m))) bits.set(r);
            std::vector<Nat> cands;
            for (Nat c : y.corrections()) {
                const Nat r = isqrt(c);
                if (r * r == c) cands.push_back(r);
            }
            return SetBounds::exact(SplitSet(PeriodicSet::build(
                m, std::move(bits), std::move(cands), [&](Nat x) { return y.contains(x * x); })));
        }
        case Kind::Named:
            if (s.is_all()) return SetBounds::exact(s);
            if (s.empty()) return SetBounds::exact(s);
            return SetBounds::unknown();
    }
    return SetBounds::unknown();
}

std::vector<Nat> MapDescriptor::image_of_prefix(const std::function<bool(Nat)>& member, Nat search) const {
    std::vector<Nat> out;
    for (Nat x = 1; x <= search; ++x)
        if (member(x)) out.push_back(apply(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool MapDescriptor::operator==(const MapDescriptor& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::Affine: return a_ == other.a_ && b_ == other.b_;
        case Kind::Class: return values_ == other.values_;
        case Kind::Square: return true;
        case Kind::Named: return name_ == other.name_;
    }
    return false;
}

std::string MapDescriptor::render() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Affine:
            os << "n->" << a_ << "n";
            if (b_ > 0) os << "+" << b_;
            if (b_ < 0) os << b_;
            break;
        case Kind::Class: os << "classes[" << join_nats(values_) << "]"; break;
        case Kind::Square: os << "n->n^2"; break;
        case Kind::Named: os << name_; break;
    }
    return os.str();
}

}  // namespace ufc
