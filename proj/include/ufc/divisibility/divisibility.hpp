#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ufc/filter/filter_base.hpp"
#include "ufc/product/product.hpp"
#include "ufc/setalg/closure.hpp"

namespace ufc {

/// nN in p. For n in N this one verdict decides left, right, middle and
/// tilde divisibility of p by n at once.
Verdict divides_nat(Nat n, const Point& p, const Config& cfg = {});

/// Tilde divisibility: up(A) in q for every A in p. Cross-checked against
/// up(G) for each generator G of p; throws std::logic_error if the two
/// disagree on a decided verdict.
Verdict widemid(const Point& p, const Point& q, const Config& cfg = {});

/// A in C(p) = {A : A/n in p for every n}, decided class by class.
Verdict cfilter_entails(const Point& p, const SplitSet& a, const Config& cfg = {});
/// A in D(p) = {A : {n : nN subset of A} in p}.
Verdict dfilter_entails(const Point& p, const SplitSet& a, const Config& cfg = {});

/// Left divisibility, C(p) subset of q. Exact for principal p; otherwise only
/// refutes, using sets provably in C(p): generators of p, materializable chain
/// elements, nN for n <= 32, and P.
Verdict leftdiv(const Point& p, const Point& q, const Config& cfg = {});

/// {B/n : B generator of p}, with chains carried to their quotients.
/// Throws FipViolation when the quotient family has no common point.
BaseRef quotient_base(Nat n, const BaseRef& p, const Config& cfg = {});

struct QuotientReconstruction {
    bool fip = false;
    BaseRef base;  // the quotient base, when fip
    /// left_mult(n, base) entails every generator and checked chain element of p.
    bool generators_entailed = false;
    /// Entailed: p = n q' for the quotient base q'; Refuted: the quotient family
    /// is not FIP, so nN is not in p; Unknown otherwise.
    Outcome outcome = Outcome::Unknown;
};

QuotientReconstruction reconstruct_from_quotient(Nat n, const BaseRef& p, const Config& cfg = {});

/// A subset of N known on [1, bound] that should be closed under divisors and
/// lcm there.
struct DivisorPattern {
    std::function<bool(Nat)> member;
    Nat bound = 0;
};

class PatternError : public std::invalid_argument {
public:
    PatternError(const std::string& what, ClosureReport report) : std::invalid_argument(what), report_(std::move(report)) {}
    const ClosureReport& report() const noexcept { return report_; }

private:
    ClosureReport report_;
};

/// The base {nN : n in A} u {!(nN) : n not in A}, n <= bound, and the lcm
/// witnesses of its finite subfamilies.
class PatternBase {
public:
    /// Validates the pattern; throws PatternError with the violation.
    static PatternBase build(const DivisorPattern& dp, const Config& cfg = {});

    const BaseRef& base() const noexcept { return base_; }
    /// Generator i is nN (positive) or !(nN) (negative) for n = index_value(i).
    Nat index_value(std::size_t i) const { return values_.at(i); }
    bool positive(std::size_t i) const { return positive_.at(i) != 0; }
    std::size_t size() const noexcept { return values_.size(); }

    /// lcm of the selected positive generators, returned only if it avoids
    /// every selected negative generator. Throws CapacityError past 64 bits.
    std::optional<Nat> witness(std::span<const std::size_t> selection) const;

private:
    BaseRef base_;
    std::vector<Nat> values_;
    std::vector<char> positive_;
};

enum class PrimeBranch { None, X, Y, Both };

std::string_view branch_name(PrimeBranch b);

struct PrimeSplit {
    Verdict verdict;
    /// Entailed verdicts: which factor carries nN (x for p, y for q).
    PrimeBranch branch = PrimeBranch::None;
};

/// nN in p*q for prime n, with the factor that carries it. Throws
/// PreconditionError with a factorization when n is not prime.
PrimeSplit prime_divides_product(Nat n, const Point& p, const Point& q, const Config& cfg = {});

struct TrichotomyRecord {
    enum class Case { Unit, Prime, Composite };
    Nat n = 0;
    Case kind = Case::Unit;
    SplitSet quotient;  // P/n as computed
    bool matches = false;
};

std::string_view case_name(TrichotomyRecord::Case c);

struct IrreducibilityCertificate {
    Verdict primes;  // entails(p, P)
    std::vector<TrichotomyRecord> records;
    std::string conclusion;
};

struct Irreducibility {
    std::optional<IrreducibilityCertificate> certificate;
    /// Why no certificate was produced.
    std::string undecided_reason;
};

/// A certificate when p entails P: P/n is P, {1} or empty by the kind of n,
/// so a product x*y containing P has x = 1 or y = 1. Records cover n <= records.
Irreducibility irreducible_over_P(const Point& p, const Config& cfg = {}, Nat records = 100);

struct MonotoneReport {
    /// f(m) | m on [1, hypothesis_bound].
    bool divides_hypothesis = true;
    std::optional<Nat> counterexample;
    /// m | n implies f(m) | f(n) on [1, hypothesis_bound] (checked when q is given).
    bool monotone_hypothesis = true;
    std::optional<std::pair<Nat, Nat>> counterexample_pair;

    Verdict part_a;                 // widemid(f(p), p)
    std::optional<Verdict> part_b;  // widemid(f(p), f(q)) when widemid(p, q) is Entailed
    /// Nothing Refuted, and part_a Entailed for principal p.
    bool ok = false;
};

MonotoneReport monotone_map_div(const MapDescriptor& f, const BaseRef& p, const BaseRef& q = nullptr,
                                const Config& cfg = {}, Nat hypothesis_bound = 10000);

}  // namespace ufc
