#include <doctest.h>

#include <random>

#include "../../tests/support/brute.hpp"
#include "../../tests/support/gen.hpp"
#include "ufc/product/product.hpp"

using namespace ufc;

namespace {

SetExpr mul(Nat n) { return SetExpr::multiples(n); }
BaseRef pt(Nat n) { return FilterBase::principal(n); }

}  // namespace

TEST_CASE("product_member examples") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = gen::random_sample(rng);
        const auto v = product_member(a.expr, *pt(3), *pt(5));
        REQUIRE(v.decided());
        REQUIRE(v.is_entailed() == a.truth(15));
    }

    for (const auto& p : {pt(7), FilterBase::make({mul(3)}), FilterBase::make({}, {Chain::tail()})}) {
        const auto v = product_member(mul(2), *p, *FilterBase::make({mul(2)}));
        CHECK(v.outcome == Outcome::Entailed);
    }
    CHECK(product_member(SetExpr::primes(), *pt(2), *pt(3)).outcome == Outcome::Refuted);
}

TEST_CASE("principal products are ordinary multiplication") {
    std::mt19937_64 rng(8);
    std::vector<gen::Sample> sets;
    for (int i = 0; i < 12; ++i) sets.push_back(gen::random_sample(rng));
    for (Nat m = 1; m <= 40; ++m)
        for (Nat n = 1; n <= 40; ++n)
            for (const auto& a : sets) {
                const auto v = product_member(a.expr, *pt(m), *pt(n));
                REQUIRE(v.is_entailed() == a.truth(m * n));
                const auto w = product_member(evaluate(a.expr), *pt(m), *pt(n));
                if (w.decided()) REQUIRE(w.is_entailed() == a.truth(m * n));
            }
}

TEST_CASE("non-principal left factors go through quotient classes") {
    // A = 4N and q = {2N}: A/n is N for 4 | n, 2N for n = 2 mod 4, 4N for odd n.
    const auto q = FilterBase::make({mul(2)});
    CHECK(product_member(mul(4), *FilterBase::make({mul(2)}), *q).outcome == Outcome::Entailed);
    CHECK(product_member(mul(4), *FilterBase::make({SetExpr::progression(1, 2)}), *q).outcome == Outcome::Unknown);
    CHECK(product_member(SetExpr::progression(1, 2), *FilterBase::make({mul(3)}), *q).outcome == Outcome::Refuted);
}

TEST_CASE("associativity on principals") {
    const std::vector<SetExpr> probes{mul(6), SetExpr::primes(), SetExpr::finite({24, 60, 90}), !mul(5) & mul(3),
                                      SetExpr::up(SetExpr::finite({7, 10}))};
    for (Nat m = 1; m <= 12; ++m)
        for (Nat n = 1; n <= 12; ++n)
            for (Nat k = 1; k <= 12; ++k) {
                const PointRef left = product(product(pt(m), pt(n)), pt(k));
                const PointRef right = product(pt(m), product(pt(n), pt(k)));
                for (const auto& a : probes) {
                    const bool truth = a.member(m * n * k);
                    REQUIRE(left->decide(a, {}).is_entailed() == truth);
                    REQUIRE(right->decide(a, {}).is_entailed() == truth);
                }
            }
}

TEST_CASE("left_mult examples") {
    CHECK(left_mult(3, pt(5))->principal_point() == Nat{15});
    const auto six = left_mult(2, FilterBase::make({mul(3)}));
    CHECK(six->core_lower() == SplitSet(PeriodicSet::multiples(6)));
    const auto lcm = left_mult(2, FilterBase::make({}, {Chain::lcm()}));
    CHECK(lcm->has_chain(Chain::Kind::Lcm));
    // 2 lcm(1..k) stays below the modulus cap up to k = 16.
    for (Nat k = 1; k <= 16; ++k) CHECK(entails(*lcm, mul(2 * lcm_prefix_saturated(k))).is_entailed());
}

TEST_CASE("left multiplication agrees with the principal product") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = gen::random_sample(rng, 8);
        BaseRef q;
        try {
            q = FilterBase::make({g.expr}, trial % 3 == 0 ? std::vector<Chain>{Chain::tail()} : std::vector<Chain>{});
        } catch (const FipViolation&) {
            continue;
        }
        const Nat n = 1 + trial % 30;
        const auto nq = left_mult(n, q);
        for (int j = 0; j < 5; ++j) {
            const auto a = gen::random_sample(rng, 8);
            const auto x = product_member(a.expr, *pt(n), *q);
            const auto y = entails(*nq, a.expr);
            if (x.decided() && y.decided()) REQUIRE(x.outcome == y.outcome);
        }
    }
}

TEST_CASE("verify_factorization examples") {
    CHECK(verify_factorization(pt(12), pt(2), pt(3), pt(2)).outcome == Outcome::Entailed);
    const auto bad = verify_factorization(pt(10), pt(2), pt(3), pt(2));
    CHECK(bad.outcome == Outcome::Refuted);
    CHECK_FALSE(bad.note.empty());
    CHECK(verify_factorization(FilterBase::make({mul(4)}), pt(2), FilterBase::make({mul(2)}), pt(1)).outcome ==
          Outcome::Unknown);
}

TEST_CASE("product points nest inside product_member") {
    const PointRef ps = product(FilterBase::make({mul(2)}), pt(1));
    CHECK(product_member(mul(4), *pt(2), *ps).outcome == Outcome::Entailed);
    CHECK(product_member(mul(3), *pt(2), *ps).outcome == Outcome::Unknown);
    CHECK(ps->describe() == "(filter(2N) * 1)");
}

TEST_CASE("decided product witnesses lie on the decided side of A") {
    std::mt19937_64 rng(61);
    int decided = 0;
    for (int i = 0; i < 300; ++i) {
        const auto p = gen::random_point(rng, 40);
        const auto q = gen::random_point(rng, 40);
        const auto a = gen::random_sample(rng);
        const Verdict v = product_member(a.expr, *p, *q);
        if (!v.decided() || !v.witness) continue;
        ++decided;
        INFO(p->describe(), " * ", q->describe(), " on ", a.expr.to_string());
        CHECK(a.truth(*v.witness) == v.is_entailed());
    }
    CHECK(decided > 50);
}
