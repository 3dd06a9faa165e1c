#include <doctest.h>

#include <random>

#include "../../tests/support/brute.hpp"
#include "../../tests/support/gen.hpp"
#include "ufc/divisibility/divisibility.hpp"

using namespace ufc;

namespace {

SetExpr mul(Nat n) { return SetExpr::multiples(n); }
BaseRef pt(Nat n) { return FilterBase::principal(n); }
SplitSet ps(const PeriodicSet& s) { return SplitSet(s); }

}  // namespace

TEST_CASE("divides_nat examples") {
    const auto six = FilterBase::make({mul(6)});
    CHECK(divides_nat(2, *six).outcome == Outcome::Entailed);
    CHECK(divides_nat(4, *six).outcome == Outcome::Unknown);
    CHECK(divides_nat(5, *pt(10)).outcome == Outcome::Entailed);
    CHECK(divides_nat(3, *pt(10)).outcome == Outcome::Refuted);
}

TEST_CASE("widemid examples") {
    CHECK(widemid(*pt(3), *pt(12)).outcome == Outcome::Entailed);
    const auto lcm = FilterBase::make({}, {Chain::lcm()});
    CHECK(widemid(*lcm, *lcm).outcome == Outcome::Entailed);
    CHECK(widemid(*pt(2), *FilterBase::make({!mul(2)})).outcome == Outcome::Refuted);
    for (Nat m = 1; m <= 60; ++m)
        for (Nat n = 1; n <= 60; ++n) REQUIRE(widemid(*pt(m), *pt(n)).is_entailed() == (n % m == 0));
}

TEST_CASE("cfilter and dfilter examples") {
    const auto lcm = FilterBase::make({}, {Chain::lcm()});
    for (Nat k = 1; k <= 100; ++k) REQUIRE(cfilter_entails(*lcm, ps(PeriodicSet::multiples(k))).is_entailed());

    const SplitSet all(PeriodicSet::all());
    CHECK(cfilter_entails(*FilterBase::make({mul(5)}), all).is_entailed());
    CHECK(dfilter_entails(*FilterBase::make({mul(5)}), all).is_entailed());
    CHECK(dfilter_entails(*FilterBase::make({mul(2)}), ps(PeriodicSet::multiples(2))).is_entailed());
    CHECK(dfilter_entails(*pt(3), ps(PeriodicSet::multiples(2))).is_refuted());
}

TEST_CASE("C of a principal point is the filter of kN") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const auto r = brute::random_periodic(rng, 12, 40);
        const auto a = evaluate(gen::expr_of(r)).lower;
        for (Nat k = 1; k <= 50; ++k) {
            const bool truth = brute::multiples_inside(r, k, 12 * 27720);
            REQUIRE(cfilter_entails(*pt(k), a).is_entailed() == truth);
        }
    }
}

TEST_CASE("leftdiv examples") {
    for (Nat k = 1; k <= 100; ++k) {
        const auto q = FilterBase::make({mul(1 + k % 7)});
        REQUIRE(leftdiv(*pt(k), *q).outcome == divides_nat(k, *q).outcome);
    }
    const auto lcm = FilterBase::make({}, {Chain::lcm()});
    CHECK(leftdiv(*lcm, *pt(7)).outcome == Outcome::Refuted);
    CHECK(leftdiv(*lcm, *lcm).outcome != Outcome::Refuted);
    const auto two = FilterBase::make({mul(2)});
    CHECK(leftdiv(*two, *two).outcome != Outcome::Refuted);
}

TEST_CASE("quotient reconstruction matches divides_nat") {
    std::mt19937_64 rng(27);
    int decided = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const auto g = gen::random_sample(rng, 8);
        BaseRef p;
        try {
            p = FilterBase::make({g.expr}, trial % 4 == 0 ? std::vector<Chain>{Chain::lcm()} : std::vector<Chain>{});
        } catch (const FipViolation&) {
            continue;
        }
        const Nat n = 1 + trial % 30;
        const auto d = divides_nat(n, *p);
        const auto r = reconstruct_from_quotient(n, p);
        if (d.is_entailed()) {
            ++decided;
            REQUIRE(r.fip);
            REQUIRE(r.outcome == Outcome::Entailed);
        }
        if (!r.fip && r.outcome == Outcome::Refuted) REQUIRE_FALSE(d.is_entailed());
    }
    CHECK(decided > 5);
}

TEST_CASE("build_divisor_pattern examples") {
    const auto twelve = PatternBase::build({[](Nat n) { return 12 % n == 0; }, 10});
    // generators are indexed by n - 1
    const std::vector<std::size_t> sel{1, 2, 3, 4};  // 2N, 3N, 4N, !(5N)
    CHECK(twelve.positive(1));
    CHECK_FALSE(twelve.positive(4));
    CHECK(twelve.witness(sel) == Nat{12});

    const auto one = PatternBase::build({[](Nat n) { return n == 1; }, 50});
    CHECK(one.witness(std::vector<std::size_t>{0, 1, 2, 49}) == Nat{1});
    CHECK(one.base()->fip_witness() == Nat{1});

    const auto pow2 = PatternBase::build({[](Nat n) { return (n & (n - 1)) == 0; }, 16});
    CHECK(pow2.witness(std::vector<std::size_t>{1, 3, 2, 5}) == Nat{4});

    CHECK_THROWS_AS(PatternBase::build({[](Nat n) { return n == 1 || n == 2 || n == 3; }, 10}), PatternError);
    try {
        (void)PatternBase::build({[](Nat n) { return n == 1 || n == 4; }, 10});
        FAIL("expected rejection");
    } catch (const PatternError& e) {
        CHECK(e.report().failed_property == "downward");
    }
}

TEST_CASE("prime_divides_product examples") {
    auto r = prime_divides_product(2, *pt(6), *pt(5));
    CHECK(r.verdict.outcome == Outcome::Entailed);
    CHECK(r.branch == PrimeBranch::X);
    r = prime_divides_product(3, *pt(2), *pt(2));
    CHECK(r.verdict.outcome == Outcome::Refuted);
    CHECK(r.branch == PrimeBranch::None);
    try {
        (void)prime_divides_product(4, *pt(2), *pt(2));
        FAIL("expected rejection");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("4 = 2*2") != std::string::npos);
    }
    r = prime_divides_product(3, *FilterBase::make({mul(2)}), *FilterBase::make({mul(9)}));
    CHECK(r.verdict.outcome == Outcome::Entailed);
    CHECK(r.branch == PrimeBranch::Y);
}

TEST_CASE("irreducible_over_P examples") {
    auto r = irreducible_over_P(*pt(7));
    REQUIRE(r.certificate);
    for (const auto& rec : r.certificate->records) REQUIRE(rec.matches);
    CHECK(r.certificate->records[0].kind == TrichotomyRecord::Case::Unit);
    CHECK(r.certificate->records[6].kind == TrichotomyRecord::Case::Prime);
    CHECK(r.certificate->records[7].kind == TrichotomyRecord::Case::Composite);

    CHECK(irreducible_over_P(*FilterBase::make({SetExpr::primes(), !mul(2)})).certificate);
    const auto four = irreducible_over_P(*FilterBase::make({mul(4)}));
    CHECK_FALSE(four.certificate);
    CHECK(four.undecided_reason == "P is refuted");
}

TEST_CASE("monotone_map_div examples") {
    const auto p12 = pt(12);
    auto r = monotone_map_div(MapDescriptor::identity(), FilterBase::make({mul(3)}));
    CHECK(r.ok);
    CHECK(r.part_a.outcome == Outcome::Entailed);

    r = monotone_map_div(MapDescriptor::spf_quotient(), p12);
    CHECK(r.ok);
    CHECK(r.part_a.outcome == Outcome::Entailed);
    CHECK(pushforward(MapDescriptor::spf_quotient(), p12)->principal_point() == Nat{6});

    r = monotone_map_div(MapDescriptor::constant(1), FilterBase::make({mul(5)}));
    CHECK(r.ok);
    CHECK(r.part_a.outcome == Outcome::Entailed);

    r = monotone_map_div(MapDescriptor::affine(1, 1), p12);
    CHECK_FALSE(r.divides_hypothesis);
    CHECK(r.counterexample == Nat{1});

    r = monotone_map_div(MapDescriptor::spf_quotient(), pt(3), pt(12), {}, 2000);
    CHECK(r.ok);
    REQUIRE(r.part_b);
    CHECK(r.part_b->outcome == Outcome::Entailed);
}
