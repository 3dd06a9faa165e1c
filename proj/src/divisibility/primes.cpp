#include <sstream>

#include "ufc/divisibility/divisibility.hpp"
#include "ufc/relext/relation.hpp"

namespace ufc {

namespace {

std::string factorization(Nat n) {
    std::ostringstream os;
    os << n << " = ";
    bool first = true;
    while (n > 1) {
        const Nat p = smallest_prime_factor(n);
        os << (first ? "" : "*") << p;
        first = false;
        n /= p;
    }
    return os.str();
}

}  // namespace

std::string_view branch_name(PrimeBranch b) {
    switch (b) {
        case PrimeBranch::None: return "none";
        case PrimeBranch::X: return "x";
        case PrimeBranch::Y: return "y";
        case PrimeBranch::Both: return "both";
    }
    return "none";
}

std::string_view case_name(TrichotomyRecord::Case c) {
    switch (c) {
        case TrichotomyRecord::Case::Unit: return "unit";
        case TrichotomyRecord::Case::Prime: return "prime";
        case TrichotomyRecord::Case::Composite: return "composite";
    }
    return "unit";
}

PrimeSplit prime_divides_product(Nat n, const Point& p, const Point& q, const Config& cfg) {
    if (n < 2) throw PreconditionError(std::to_string(n) + " is not prime");
    if (!is_prime(n)) throw PreconditionError(std::to_string(n) + " is composite: " + factorization(n));
    PrimeSplit r;
    r.verdict = product_member(SetExpr::multiples(n), p, q, cfg);
    if (!r.verdict.is_entailed()) return r;
    const bool x = p.decide(SetExpr::multiples(n), cfg).is_entailed();
    const bool y = divides_nat(n, q, cfg).is_entailed();
    r.branch = x && y ? PrimeBranch::Both : x ? PrimeBranch::X : y ? PrimeBranch::Y : PrimeBranch::None;
    return r;
}

Irreducibility irreducible_over_P(const Point& p, const Config& cfg, Nat records) {
    Irreducibility out;
    const Verdict v = p.decide(SetExpr::primes(), cfg);
    if (!v.is_entailed()) {
        out.undecided_reason = v.is_refuted() ? "P is refuted" : "P is not decided";
        return out;
    }
    IrreducibilityCertificate cert;
    cert.primes = v;
    const SplitSet primes = SplitSet::primes();
    const SplitSet one(PeriodicSet::singleton(1));
    for (Nat n = 1; n <= records; ++n) {
        TrichotomyRecord rec;
        rec.n = n;
        rec.kind = n == 1 ? TrichotomyRecord::Case::Unit
                   : is_prime(n) ? TrichotomyRecord::Case::Prime
                                 : TrichotomyRecord::Case::Composite;
        rec.quotient = primes.quotient(n);
        const SplitSet expected = rec.kind == TrichotomyRecord::Case::Unit    ? primes
                                  : rec.kind == TrichotomyRecord::Case::Prime ? one
                                                                              : SplitSet();
        rec.matches = rec.quotient == expected;
        cert.records.push_back(std::move(rec));
    }
    cert.conclusion = "P is in p, and P/n is P, {1} or empty; every factorization of p has a factor equal to 1";
    out.certificate = std::move(cert);
    return out;
}

MonotoneReport monotone_map_div(const MapDescriptor& f, const BaseRef& p, const BaseRef& q, const Config& cfg,
                                Nat hypothesis_bound) {
    MonotoneReport r;
    std::vector<Nat> fv(hypothesis_bound + 1, 0);
    for (Nat m = 1; m <= hypothesis_bound; ++m) {
        fv[m] = f.apply(m);
        if (r.divides_hypothesis && (fv[m] == 0 || m % fv[m] != 0)) {
            r.divides_hypothesis = false;
            r.counterexample = m;
        }
    }
    if (q) {
        for (Nat m = 1; m <= hypothesis_bound && r.monotone_hypothesis; ++m)
            for (Nat n = 2 * m; n <= hypothesis_bound; n += m)
                if (fv[n] % fv[m] != 0) {
                    r.monotone_hypothesis = false;
                    r.counterexample_pair = {m, n};
                    break;
                }
    }
    if (!r.divides_hypothesis || !r.monotone_hypothesis) return r;

    const BaseRef fp = pushforward(f, p, cfg);
    r.part_a = widemid(*fp, *p, cfg);
    r.ok = !r.part_a.is_refuted() && (!p->principal_point() || r.part_a.is_entailed());
    if (q && widemid(*p, *q, cfg).is_entailed()) {
        r.part_b = widemid(*fp, *pushforward(f, q, cfg), cfg);
        r.ok = r.ok && !r.part_b->is_refuted();
    }
    return r;
}

}  // namespace ufc
