#include "ufc/oracle/oracle.hpp"

#include <doctest.h>

#include <random>

#include "../../tests/support/brute.hpp"
#include "../../tests/support/gen.hpp"
#include "ufc/filter/filter_base.hpp"

using namespace ufc;
using oracle::eval_bounded;

namespace {

std::vector<Nat> members(const SetExpr& e, Nat bound) { return eval_bounded(e, bound).members(); }

// Image nodes do not nest, so membership searches stay linear.
SetExpr random_expr(std::mt19937_64& rng, int depth, bool images = true) {
    const auto leaf = [&] { return gen::random_sample(rng, 10).expr; };
    if (depth == 0) return leaf();
    const auto sub = [&](bool keep = true) { return random_expr(rng, depth - 1, images && keep); };
    switch (std::uniform_int_distribution<int>(0, images ? 8 : 5)(rng)) {
        case 0: return !sub();
        case 1: return sub() & sub();
        case 2: return sub() | sub();
        case 3: return SetExpr::quotient(sub(), std::uniform_int_distribution<Nat>(1, 12)(rng));
        case 4: return SetExpr::scale(std::uniform_int_distribution<Nat>(1, 6)(rng), sub());
        case 5: return SetExpr::up(sub() & SetExpr::finite({4, 6, 9, 35}));
        case 6: return SetExpr::image(MapDescriptor::affine(3, 1), sub(false));
        case 7: return SetExpr::image(MapDescriptor::square(), sub(false));
        default: return SetExpr::image(MapDescriptor::spf_quotient(), sub(false));
    }
}

}  // namespace

TEST_CASE("eval_bounded examples") {
    CHECK(members(SetExpr::multiples(3), 10) == std::vector<Nat>{3, 6, 9});
    CHECK(members(SetExpr::primes(), 10) == std::vector<Nat>{2, 3, 5, 7});
    const auto six = SetExpr::multiples(2) & SetExpr::multiples(3);
    CHECK(members(SetExpr::quotient(six, 2), 12) == members(SetExpr::multiples(3), 12));
    CHECK(members(SetExpr::quotient(six, 2), 12) == std::vector<Nat>{3, 6, 9, 12});
    CHECK(members(SetExpr::tail(8), 10) == std::vector<Nat>{8, 9, 10});
    CHECK(members(!SetExpr::all(), 10).empty());
    CHECK(members(SetExpr::up(SetExpr::finite({4, 6})), 13) == std::vector<Nat>{4, 6, 8, 12});
    CHECK(members(SetExpr::scale(3, SetExpr::finite({1, 2, 5})), 12) == std::vector<Nat>{3, 6});
}

TEST_CASE("eval_bounded edge cases") {
    CHECK_THROWS_AS(eval_bounded(SetExpr::all(), 0), PreconditionError);
    CHECK(members(SetExpr::all(), 1) == std::vector<Nat>{1});
    CHECK(members(SetExpr::primes(), 1).empty());
    CHECK(members(SetExpr::scale(20, SetExpr::all()), 10).empty());
    CHECK_THROWS_AS(eval_bounded(SetExpr::quotient(SetExpr::all(), Nat{1} << 40), 1000), CapacityError);
    const auto t = eval_bounded(SetExpr::multiples(2), 9);
    CHECK(t.count() == 4);
    CHECK(t.members(2) == std::vector<Nat>{2, 4});
    CHECK_FALSE(t.contains(0));
    CHECK_FALSE(t.contains(10));
}

TEST_CASE("images by fibres and by enumeration") {
    const auto sq = SetExpr::image(MapDescriptor::square(), SetExpr::tail(2) & SetExpr::multiples(2));
    CHECK(members(sq, 100) == std::vector<Nat>{4, 16, 36, 64, 100});
    const auto cls = SetExpr::image(MapDescriptor::mod_classes(3), SetExpr::multiples(3));
    CHECK(members(cls, 10) == std::vector<Nat>{3});
    const auto spf = SetExpr::image(MapDescriptor::spf_quotient(), SetExpr::finite({1, 7, 12, 45}));
    CHECK(members(spf, 20) == std::vector<Nat>{1, 6, 15});
    const auto aff = SetExpr::image(MapDescriptor::affine(2, -1), SetExpr::finite({1, 3}));
    CHECK(members(aff, 10) == std::vector<Nat>{1, 5});
}

TEST_CASE("oracle agrees with expression membership") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 150; ++i) {
        const SetExpr e = random_expr(rng, 3);
        const auto t = eval_bounded(e, 300, 500);
        for (Nat n = 1; n <= 300; ++n) {
            INFO(e.to_string(), " at ", n);
            REQUIRE(t.contains(n) == e.member(n, 500));
        }
    }
}

TEST_CASE("determinism") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const SetExpr e = random_expr(rng, 3);
        CHECK(eval_bounded(e, 2000, 2000).bits == eval_bounded(e, 2000, 2000).bits);
    }
}

TEST_CASE("quotient against enumeration") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const auto s = gen::random_sample(rng, 12);
        const Nat n = std::uniform_int_distribution<Nat>(1, 100)(rng);
        const SetBounds symbolic = evaluate(s.expr);
        REQUIRE(symbolic.is_exact());
        const SplitSet q = symbolic.lower.quotient(n);
        const auto report = oracle::cross_check("quotient", SetExpr::quotient(s.expr, n), SetBounds::exact(q), 10000);
        INFO(s.expr.to_string(), " / ", n, ": ", report.detail);
        REQUIRE(report.pass);
    }
}

TEST_CASE("relation images against the raw relation") {
    std::mt19937_64 rng(3);
    const std::vector<Relation> rels = {Relation::div(),  Relation::div().inverse(),
                                        Relation::leq(),  Relation::leq().inverse(),
                                        Relation::kernel(MapDescriptor::mod_classes(4)),
                                        Relation::table({{1, 2}, {2, 5}, {5, 5}}, 6)};
    for (int i = 0; i < 30; ++i) {
        const auto s = gen::random_sample(rng, 10);
        const auto a = eval_bounded(s.expr & SetExpr::tail(3), 120);
        for (const Relation& rho : rels) {
            const auto img = oracle::relation_image(rho, a, 60);
            for (Nat n = 1; n <= 60; ++n) {
                bool expected = false;
                for (Nat x = 1; x <= 120 && !expected; ++x) expected = a.contains(x) && rho.related(x, n).value_or(false);
                INFO(rho.name(), " at ", n);
                REQUIRE(img.contains(n) == expected);
            }
        }
    }
    CHECK_THROWS_AS(oracle::relation_image(Relation::div(), eval_bounded(SetExpr::all(), 5), 10), PreconditionError);
}

TEST_CASE("cross_check reports mismatches") {
    const auto good = oracle::cross_check("mult", SetExpr::multiples(4), PeriodicSet::multiples(4), 100);
    CHECK(good.pass);
    const auto bad = oracle::cross_check("mult", SetExpr::multiples(4), PeriodicSet::multiples(2), 100);
    CHECK_FALSE(bad.pass);
    CHECK(bad.mismatch == Nat{2});
    const SetBounds loose{SplitSet(PeriodicSet::multiples(12)), SplitSet(PeriodicSet::multiples(2))};
    CHECK(oracle::cross_check("bracket", SetExpr::multiples(4), loose, 100).pass);

    const auto t1 = eval_bounded(SetExpr::multiples(3), 30);
    const auto t2 = eval_bounded(SetExpr::multiples(3) | SetExpr::finite({7}), 30);
    const auto diff = oracle::cross_check("tables", t1, t2);
    CHECK_FALSE(diff.pass);
    CHECK(diff.mismatch == Nat{7});
}

TEST_CASE("verdict soundness checks") {
    const SetExpr q = SetExpr::multiples(3);
    Verdict v = Verdict::entailed();
    v.witness = 6;
    CHECK(oracle::cross_check("w", v, q, 100).pass);
    v.witness = 4;
    CHECK_FALSE(oracle::cross_check("w", v, q, 100).pass);
    v = Verdict::refuted();
    v.witness = 4;
    CHECK(oracle::cross_check("w", v, q, 100).pass);

    Verdict p = Verdict::entailed();
    p.proof = std::make_shared<Proof>(
        Proof{Proof::Relation::Subset, SplitSet(PeriodicSet::multiples(6)), SplitSet(PeriodicSet::multiples(3))});
    CHECK(oracle::cross_check("p", p, std::nullopt, 1000).pass);
    p.proof = std::make_shared<Proof>(
        Proof{Proof::Relation::Disjoint, SplitSet(PeriodicSet::multiples(6)), SplitSet(PeriodicSet::multiples(3))});
    const auto broken = oracle::cross_check("p", p, std::nullopt, 1000);
    CHECK_FALSE(broken.pass);
    CHECK(broken.mismatch == Nat{6});

    CHECK(oracle::cross_check("u", Verdict::unknown(50), q, 100).pass);
    CHECK(oracle::cross_check("t", Verdict::refuted(), false).pass);
    CHECK_FALSE(oracle::cross_check("t", Verdict::refuted(), true).pass);
    CHECK(oracle::cross_check("t", Verdict::unknown(), true).pass);
}

TEST_CASE("filter verdicts are sound on the oracle") {
    std::mt19937_64 rng(77);
    int decided = 0;
    for (int i = 0; i < 60; ++i) {
        std::vector<SetExpr> gens;
        for (int j = 0; j < 2; ++j) gens.push_back(gen::random_sample(rng, 8, false).expr | SetExpr::multiples(30));
        BaseRef p;
        try {
            p = FilterBase::make(gens, {});
        } catch (const FipViolation&) {
            continue;
        }
        const SetExpr query = gen::random_sample(rng, 8).expr;
        const Verdict v = p->decide(query, {});
        decided += v.decided() ? 1 : 0;
        const auto r = oracle::cross_check("decide", v, query, 20000);
        INFO(p->describe(), " vs ", query.to_string(), ": ", r.detail);
        REQUIRE(r.pass);
    }
    CHECK(decided > 0);
}
