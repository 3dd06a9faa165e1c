#include <doctest.h>

#include <random>

#include "../../tests/support/brute.hpp"
#include "../../tests/support/gen.hpp"
#include "ufc/relext/relation.hpp"

using namespace ufc;

namespace {

BaseRef pt(Nat n) { return FilterBase::principal(n); }
SplitSet ps(const PeriodicSet& s) { return SplitSet(s); }

// n in rho[A], by enumerating a in A up to the bound.
std::vector<bool> brute_image(const Relation& rho, const brute::Member& a, Nat bound) {
    std::vector<bool> out(bound + 1, false);
    for (Nat x = 1; x <= bound; ++x) {
        if (!a(x)) continue;
        for (Nat n = 1; n <= bound; ++n)
            if (!out[n] && rho.related(x, n).value_or(false)) out[n] = true;
    }
    return out;
}

}  // namespace

TEST_CASE("image examples") {
    CHECK(Relation::div().image(SetExpr::finite({3})).lower == ps(PeriodicSet::multiples(3)));
    CHECK(Relation::leq().image(SetExpr::finite({5, 9})).lower == ps(PeriodicSet::tail(5)));
    const auto ker3 = Relation::kernel(MapDescriptor::mod_classes(3));
    CHECK(ker3.image(SetExpr::finite({4})).lower == ps(PeriodicSet::progression(1, 3)));
    CHECK(Relation::div().inverse().image(SetExpr::finite({12})).lower == ps(PeriodicSet::finite({1, 2, 3, 4, 6, 12})));
    CHECK(Relation::leq().inverse().image(SetExpr::finite({4, 7})).lower == ps(PeriodicSet::interval(1, 7)));
    CHECK(Relation::leq().inverse().image(SetExpr::multiples(5)).lower.is_all());
}

TEST_CASE("names") {
    CHECK(Relation::div().name() == "div");
    CHECK(Relation::leq().inverse().name() == "inv(leq)");
    CHECK(Relation::kernel(MapDescriptor::mod_classes(4)).name() == "ker:4");
    CHECK(Relation::kernel(MapDescriptor::mod_classes(4)).inverse().name() == "ker:4");
}

TEST_CASE("image rules agree with the oracle") {
    std::mt19937_64 rng(4);
    const Nat bound = 400;
    const std::vector<Relation> rels{Relation::div(), Relation::leq(), Relation::div().inverse(),
                                     Relation::leq().inverse(), Relation::kernel(MapDescriptor::mod_classes(5)),
                                     Relation::table({{1, 2}, {2, 3}, {5, 5}, {7, 1}}, 10)};
    for (int trial = 0; trial < 25; ++trial) {
        auto s = gen::random_sample(rng, 10);
        // Keep A inside the enumerated range so the comparison is exact.
        const brute::Member a = [s, bound](Nat n) { return n <= bound / 4 && s.truth(n); };
        const SetExpr e = s.expr & !SetExpr::tail(bound / 4 + 1);
        for (const auto& rho : rels) {
            const auto truth = brute_image(rho, a, bound);
            const SetBounds img = rho.image(e);
            for (Nat n = 1; n <= bound; ++n) {
                INFO(rho.name() << " n = " << n << " A = " << e.to_string());
                if (img.lower.contains(n)) REQUIRE(truth[n]);
                if (truth[n]) REQUIRE(img.upper.contains(n));
            }
        }
    }
}

TEST_CASE("ext_related examples") {
    CHECK(ext_related(Relation::leq(), *pt(5), *pt(7)).outcome == Outcome::Entailed);
    CHECK(ext_related(Relation::div(), *pt(6), *pt(2)).outcome == Outcome::Refuted);
    CHECK(ext_related(Relation::leq(), *pt(5), *FilterBase::make({}, {Chain::tail()})).outcome == Outcome::Entailed);
    CHECK(ext_related(Relation::leq(), *FilterBase::make({}, {Chain::tail()}), *pt(5)).outcome == Outcome::Refuted);
    CHECK(ext_related(Relation::leq(), *FilterBase::make({}, {Chain::tail()}),
                      *FilterBase::make({SetExpr::multiples(2)}, {Chain::lcm()}))
              .outcome == Outcome::Entailed);
}

TEST_CASE("ext_related extends the relation on principals") {
    const std::vector<Relation> rels{Relation::div(), Relation::leq(), Relation::kernel(MapDescriptor::mod_classes(3))};
    for (const auto& rho : rels)
        for (Nat m = 1; m <= 80; ++m)
            for (Nat n = 1; n <= 80; ++n) {
                const auto v = ext_related(rho, *pt(m), *pt(n));
                REQUIRE(v.decided());
                REQUIRE(v.is_entailed() == *rho.related(m, n));
                REQUIRE(ext_related(rho.inverse(), *pt(m), *pt(n)).outcome ==
                        ext_related(rho, *pt(n), *pt(m)).outcome);
            }
}

TEST_CASE("chains: reflexivity and bounded refutation") {
    const auto lcm = FilterBase::make({}, {Chain::lcm()});
    CHECK(ext_related(Relation::div(), *lcm, *lcm).outcome == Outcome::Entailed);
    CHECK(ext_related(Relation::div(), *lcm, *pt(7)).outcome == Outcome::Refuted);
    CHECK(ext_related(Relation::div(), *lcm, *FilterBase::make({SetExpr::multiples(3)})).outcome == Outcome::Unknown);
    const auto tail = FilterBase::make({SetExpr::multiples(2)}, {Chain::tail()});
    CHECK(ext_related(Relation::div(), *tail, *lcm).outcome == Outcome::Entailed);
}

TEST_CASE("table relations stay inside their universe") {
    const auto t = Relation::table({{1, 2}, {2, 3}}, 5);
    CHECK(ext_related(t, *pt(1), *pt(2)).outcome == Outcome::Entailed);
    CHECK(ext_related(t, *pt(1), *pt(3)).outcome == Outcome::Refuted);
    CHECK(ext_related(t, *pt(9), *pt(3)).outcome == Outcome::Unknown);
    CHECK(ext_related(t, *pt(1), *pt(9)).outcome == Outcome::Unknown);
    CHECK_FALSE(t.related(6, 1).has_value());
    CHECK_THROWS_AS(Relation::table({{1, 7}}, 5), PreconditionError);
    CHECK_FALSE(t.transitive());
    CHECK(Relation::table({{1, 2}, {2, 3}, {1, 3}}, 3).transitive());
}

TEST_CASE("min_witness examples") {
    auto w = min_witness(Relation::div(), SetExpr::multiples(6), 2);
    CHECK(w.value == 6);
    CHECK(w.genuine);
    w = min_witness(Relation::leq(), SetExpr::tail(5), 7);
    CHECK(w.value == 7);
    CHECK(w.genuine);
    w = min_witness(Relation::div(), SetExpr::finite({3, 5}), 2);
    CHECK(w.value == 3);
    CHECK_FALSE(w.genuine);
    CHECK_THROWS_AS(min_witness(Relation::div(), !SetExpr::all(), 2), PreconditionError);
    w = min_witness(Relation::div(), SetExpr::primes(), 5);
    CHECK(w.value == 5);
    CHECK(w.genuine);
}

TEST_CASE("min_witness is genuine exactly when a successor exists") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = gen::random_sample(rng, 10);
        if (evaluate(s.expr).lower.empty()) continue;
        const Nat x = std::uniform_int_distribution<Nat>(1, 40)(rng);
        for (const auto& rho : {Relation::div(), Relation::leq()}) {
            const auto w = min_witness(rho, s.expr, x);
            std::optional<Nat> truth;
            for (Nat y = 1; y <= 5000 && !truth; ++y)
                if (s.truth(y) && *rho.related(x, y)) truth = y;
            REQUIRE(w.genuine == truth.has_value());
            if (truth) REQUIRE(w.value == *truth);
        }
    }
}

TEST_CASE("kernel_coherence examples") {
    const auto cls = FilterBase::make({SetExpr::progression(1, 3)});
    auto k = kernel_coherence(MapDescriptor::mod_classes(3), cls, cls);
    CHECK(k.verdict.outcome == Outcome::Entailed);
    CHECK(k.image_side == Outcome::Entailed);

    k = kernel_coherence(MapDescriptor::identity(), pt(4), pt(5));
    CHECK(k.verdict.outcome == Outcome::Refuted);
    CHECK(k.relation_side == Outcome::Refuted);
    CHECK(k.image_side == Outcome::Refuted);
    CHECK(k.counterexample);

    k = kernel_coherence(MapDescriptor::constant(1), FilterBase::make({SetExpr::multiples(2)}), pt(9));
    CHECK(k.verdict.outcome == Outcome::Entailed);

    CHECK_THROWS_AS(kernel_coherence(MapDescriptor::square(), FilterBase::make({SetExpr::multiples(2)}), pt(3)),
                    PreconditionError);
}
