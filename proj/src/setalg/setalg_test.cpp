#include <doctest.h>

#include <random>

#include "../../tests/support/brute.hpp"
#include "ufc/setalg/closure.hpp"
#include "ufc/setalg/render.hpp"
#include "ufc/setalg/set_expr.hpp"

using namespace ufc;

namespace {

PeriodicSet materialize(const brute::RandomPeriodic& r) {
    BitVector bits(r.modulus);
    for (Nat i = 0; i < r.modulus; ++i)
        if (r.residues[i]) bits.set(i);
    return PeriodicSet::build(r.modulus, bits, r.flips, r);
}

template <class Set>
void require_matches(const Set& s, const brute::Member& truth, Nat bound) {
    for (Nat n = 1; n <= bound; ++n) {
        INFO("n = " << n);
        REQUIRE(s.contains(n) == truth(n));
    }
}

PeriodicSet only(const Normalized& r) {
    REQUIRE(std::holds_alternative<PeriodicSet>(r));
    return std::get<PeriodicSet>(r);
}

}  // namespace

TEST_CASE("canonical form identifies equal sets") {
    CHECK(PeriodicSet::multiples(2).intersect(PeriodicSet::multiples(3)) == PeriodicSet::multiples(6));
    CHECK(PeriodicSet::progression(2, 2) == PeriodicSet::multiples(2));
    CHECK(PeriodicSet::tail(1) == PeriodicSet::all());
    CHECK(PeriodicSet::multiples(2).unite(PeriodicSet::multiples(2).complement()) == PeriodicSet::all());
    CHECK(PeriodicSet::residue_class(1, 4).unite(PeriodicSet::residue_class(3, 4)) ==
          PeriodicSet::multiples(2).complement());
    const auto six = PeriodicSet::multiples(6);
    CHECK(six.modulus() == 6);
    CHECK(six.residues().count() == 1);
    CHECK(six.added().empty());
    CHECK(six.removed().empty());
}

TEST_CASE("corrections are never redundant") {
    const auto s = PeriodicSet::multiples(3).unite(PeriodicSet::finite({3, 4, 9}));
    CHECK(s.added() == std::vector<Nat>{4});
    CHECK(s.removed().empty());
    const auto t = PeriodicSet::progression(7, 3);
    CHECK(t.modulus() == 3);
    CHECK(t.removed() == std::vector<Nat>{1, 4});
    CHECK(t.min_element() == 7);
}

TEST_CASE("membership of primitives and expressions") {
    CHECK(SetExpr::primes().member(7));
    CHECK(SetExpr::quotient(SetExpr::multiples(2), 3).member(4));
    CHECK_FALSE((!SetExpr::all()).member(5));
    CHECK_FALSE(SetExpr::all().member(0));
    CHECK(SetExpr::up(SetExpr::finite({4, 6})).member(18));
    CHECK_FALSE(SetExpr::up(SetExpr::finite({4, 6})).member(10));
    CHECK(SetExpr::scale(3, SetExpr::primes()).member(15));
    CHECK_FALSE(SetExpr::scale(3, SetExpr::primes()).member(12));
}

TEST_CASE("normalize examples") {
    CHECK(only(normalize(SetExpr::multiples(2) & SetExpr::multiples(3))) == PeriodicSet::multiples(6));
    CHECK(only(normalize(SetExpr::quotient(SetExpr::multiples(6), 4))) == PeriodicSet::multiples(3));
    CHECK(only(normalize(SetExpr::primes() | !SetExpr::primes())) == PeriodicSet::all());
    CHECK(only(normalize(SetExpr::quotient(SetExpr::primes(), 4))) == PeriodicSet::none());
    CHECK(only(normalize(SetExpr::quotient(SetExpr::primes(), 7))) == PeriodicSet::singleton(1));
}

TEST_CASE("up-closure of odd numbers above one is reported as not representable") {
    const SetExpr arg = !SetExpr::multiples(2) - SetExpr::finite({1});
    const SetExpr e = SetExpr::up(arg);
    const auto r = normalize(e);
    REQUIRE(std::holds_alternative<NotRepresentable>(r));
    const auto& nr = std::get<NotRepresentable>(r);
    CHECK(nr.offending.kind() == ExprKind::UpClosure);
    CHECK_FALSE(nr.reason.empty());
    // truth: every n with an odd divisor above 1, i.e. not 1 and not a power of two
    const auto truth = [](Nat n) { return n > 1 && (n & (n - 1)) != 0; };
    for (Nat n = 1; n <= 2048; ++n) {
        INFO("n = " << n);
        if (nr.bounds.lower.contains(n)) REQUIRE(truth(n));
        if (truth(n)) REQUIRE(nr.bounds.upper.contains(n));
    }
}

TEST_CASE("primes are the offending node inside larger expressions") {
    const SetExpr e = (SetExpr::multiples(2) | SetExpr::primes()) & SetExpr::tail(3);
    const auto r = normalize(e);
    REQUIRE(std::holds_alternative<NotRepresentable>(r));
    CHECK(std::get<NotRepresentable>(r).offending.kind() == ExprKind::Primes);
}

TEST_CASE("quotient examples") {
    CHECK(PeriodicSet::multiples(2).quotient(3) == PeriodicSet::multiples(2));
    CHECK(PeriodicSet::multiples(4).quotient(2) == PeriodicSet::multiples(2));
    const auto a = PeriodicSet::progression(5, 7).unite(PeriodicSet::finite({2, 3}));
    CHECK(a.quotient(1) == a);
    CHECK_THROWS_AS(a.quotient(0), PreconditionError);
}

TEST_CASE("quotient of the primes follows the trichotomy") {
    const SplitSet p = SplitSet::primes();
    CHECK(p.quotient(1) == p);
    for (Nat n = 2; n <= 200; ++n) {
        INFO("n = " << n);
        const SplitSet q = p.quotient(n);
        if (brute::prime(n))
            CHECK(q == SplitSet(PeriodicSet::singleton(1)));
        else
            CHECK(q.empty());
    }
}

TEST_CASE("quotient matches brute force on random sets") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        const auto r = brute::random_periodic(rng);
        const PeriodicSet a = materialize(r);
        require_matches(a, r, 400);
        const Nat n = std::uniform_int_distribution<Nat>(1, 100)(rng);
        require_matches(a.quotient(n), [&](Nat m) { return r(m * n); }, 400);
        require_matches(a.scale(n), [&](Nat m) { return m % n == 0 && r(m / n); }, 400);
        require_matches(a.complement(), [&](Nat m) { return !r(m); }, 400);
    }
}

TEST_CASE("quotient_classes partitions N by the value of A/n") {
    auto check_classes = [](const SplitSet& a, std::optional<std::size_t> expected_cells) {
        const auto cells = quotient_classes(a);
        if (expected_cells) CHECK(cells.size() == *expected_cells);
        for (Nat n = 1; n <= 300; ++n) {
            int hits = 0;
            for (const auto& c : cells) {
                if (!c.condition.contains(n)) continue;
                ++hits;
                for (Nat m = 1; m <= 300; ++m) {
                    INFO("n = " << n << ", m = " << m);
                    REQUIRE(c.value.contains(m) == a.contains(m * n));
                }
            }
            REQUIRE(hits == 1);
        }
    };
    check_classes(SplitSet(PeriodicSet::multiples(4)), 3);
    check_classes(SplitSet(PeriodicSet::all()), 1);
    check_classes(SplitSet(PeriodicSet::multiples(2)), 2);
    check_classes(SplitSet::primes(), 3);
    check_classes(SplitSet(PeriodicSet::multiples(3).unite(PeriodicSet::finite({4, 10}))), std::nullopt);
    check_classes(SplitSet::primes().unite(SplitSet(PeriodicSet::multiples(6))), std::nullopt);
}

TEST_CASE("quotient_classes of 4N pairs conditions with values") {
    const auto cells = quotient_classes(SplitSet(PeriodicSet::multiples(4)));
    REQUIRE(cells.size() == 3);
    const auto four = SplitSet(PeriodicSet::multiples(4));
    const auto two = SplitSet(PeriodicSet::multiples(2));
    const auto all = SplitSet(PeriodicSet::all());
    for (const auto& c : cells) {
        if (c.value == all) CHECK(c.condition == four);
        if (c.value == two) CHECK(c.condition == two.minus(four));
        if (c.value == four) CHECK(c.condition == two.complement());
    }
}

TEST_CASE("up_closure examples") {
    CHECK(only(up_closure(SetExpr::finite({3}))) == PeriodicSet::multiples(3));
    const auto u = only(up_closure(SetExpr::finite({4, 6})));
    require_matches(u, [](Nat n) { return n % 4 == 0 || n % 6 == 0; }, 500);
    CHECK(only(up_closure(SetExpr::finite({1, 7}))) == PeriodicSet::all());
    CHECK(only(up_closure(SetExpr::primes())) == PeriodicSet::tail(2));
    CHECK(only(up_closure(SetExpr::multiples(2) | SetExpr::finite({9}))) ==
          PeriodicSet::multiples(2).unite(PeriodicSet::multiples(9)));
}

TEST_CASE("up_closure output is closed upward on random sets") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 60; ++iter) {
        const auto r = brute::random_periodic(rng, 12, 30);
        const PeriodicSet a = materialize(r);
        const UpClosure u = up_closure(SplitSet(a));
        for (Nat n = 1; n <= 300; ++n) {
            const bool truth = brute::up_member(r, n);
            INFO("n = " << n);
            if (u.bounds.lower.contains(n)) REQUIRE(truth);
            if (truth) REQUIRE(u.bounds.upper.contains(n));
            if (u.exact) REQUIRE(u.bounds.lower.contains(n) == truth);
        }
    }
}

TEST_CASE("bset examples") {
    CHECK(bset(PeriodicSet::multiples(2)) == PeriodicSet::multiples(2));
    CHECK(bset(PeriodicSet::all()) == PeriodicSet::all());
    for (Nat k = 1; k <= 30; ++k) CHECK(bset(PeriodicSet::tail(k)) == PeriodicSet::tail(k));
    CHECK(bset(PeriodicSet::none()).empty());
}

TEST_CASE("bset matches brute force") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 100; ++iter) {
        const auto r = brute::random_periodic(rng, 24, 80);
        const PeriodicSet b = bset(materialize(r));
        for (Nat n = 1; n <= 200; ++n) {
            // past the last flip, multiples of n cycle through residues within n * modulus
            INFO("n = " << n);
            REQUIRE(b.contains(n) == brute::multiples_inside(r, n, 80 + n * (r.modulus + 1)));
        }
        CHECK(b.subset_of(materialize(r)));
    }
}

TEST_CASE("bset of a set with primes") {
    const SplitSet s = SplitSet::primes().unite(SplitSet(PeriodicSet::multiples(2)));
    const SplitSet b = bset(s);
    for (Nat n = 1; n <= 200; ++n) {
        INFO("n = " << n);
        CHECK(b.contains(n) == brute::multiples_inside([&](Nat x) { return s.contains(x); }, n, 4000));
    }
}

TEST_CASE("down_closure matches brute force") {
    const SplitSet s = SplitSet::primes().intersect(SplitSet(PeriodicSet::tail(5)))
                           .unite(SplitSet(PeriodicSet::progression(10, 15)))
                           .unite(SplitSet(PeriodicSet::finite({49})));
    const SplitSet d = down_closure(s);
    for (Nat n = 1; n <= 300; ++n) {
        bool truth = false;
        for (Nat k = n; k <= 300 * 30 && !truth; k += n) truth = s.contains(k);
        INFO("n = " << n);
        CHECK(d.contains(n) == truth);
    }
}

TEST_CASE("closure_predicates examples") {
    CHECK(closure_predicates(SetExpr::finite({1, 2, 3, 4, 6, 12}), 12).ok);
    const auto bad = closure_predicates(SetExpr::finite({1, 2, 3}), 10);
    CHECK_FALSE(bad.ok);
    CHECK(bad.failed_property == "lcm");
    CHECK(bad.missing == 6);
    CHECK(closure_predicates(SetExpr::finite({1}), 100).ok);
    const auto down = closure_predicates(SetExpr::finite({1, 4}), 10);
    CHECK(down.failed_property == "downward");
    CHECK(down.missing == 2);
    CHECK_THROWS_AS(closure_predicates(SetExpr::finite({1}), 0), PreconditionError);
}

TEST_CASE("split sets are exact on the primes") {
    const SplitSet odd_primes = SplitSet::primes().minus(SplitSet(PeriodicSet::multiples(2)));
    CHECK_FALSE(odd_primes.is_periodic());
    CHECK(odd_primes.min_element() == 3);
    CHECK(SplitSet::primes().intersect(SplitSet(PeriodicSet::multiples(4))).empty());
    CHECK(SplitSet::primes().intersect(SplitSet(PeriodicSet::multiples(2))) == SplitSet(PeriodicSet::singleton(2)));
    const SplitSet p = SplitSet::primes();
    CHECK(p.unite(p.complement()).is_all());
    // canonical: different routes to the same set agree structurally
    const SplitSet a = p.intersect(SplitSet(PeriodicSet::residue_class(1, 4)));
    const SplitSet b = p.minus(SplitSet(PeriodicSet::residue_class(3, 4))).minus(SplitSet(PeriodicSet::singleton(2)));
    CHECK(a == b);
}

TEST_CASE("capacity limits") {
    CHECK_THROWS_AS(PeriodicSet::multiples(kMaxModulus + 1), CapacityError);
    const auto a = PeriodicSet::multiples(4999);
    const auto b = PeriodicSet::multiples(5003);
    CHECK_THROWS_AS(a.intersect(b), CapacityError);
    CHECK_THROWS_AS(PeriodicSet::multiples(0), PreconditionError);
    // evaluation widens instead of failing
    const SetBounds wide = evaluate(SetExpr::multiples(4999) & SetExpr::multiples(5003));
    CHECK(wide.lower.empty());
    CHECK(wide.upper.is_all());
}

TEST_CASE("render produces the grammar's short forms") {
    CHECK(render(PeriodicSet::multiples(6)) == "6N");
    CHECK(render(PeriodicSet::all()) == "N");
    CHECK(render(PeriodicSet::none()) == "!N");
    CHECK(render(PeriodicSet::multiples(2).complement()) == "!2N");
    CHECK(render(PeriodicSet::tail(5)) == "[5,inf)");
    CHECK(render(PeriodicSet::finite({3, 1})) == "{1,3}");
    CHECK(render(PeriodicSet::multiples(2).minus(PeriodicSet::multiples(4))) == "2N & !4N");
    CHECK(render(PeriodicSet::multiples(4).unite(PeriodicSet::multiples(6))) == "4N | 6N");
    CHECK(render(SplitSet::primes()) == "P");
}
