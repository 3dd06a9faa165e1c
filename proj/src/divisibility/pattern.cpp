#include "ufc/divisibility/divisibility.hpp"

namespace ufc {

PatternBase PatternBase::build(const DivisorPattern& dp, const Config& cfg) {
    if (!dp.member || dp.bound == 0) throw PreconditionError("divisor pattern needs a predicate and a bound >= 1");
    ClosureReport rep = closure_predicates(dp.member, dp.bound);
    if (!rep.ok) throw PatternError("divisor pattern rejected: " + rep.message, rep);

    PatternBase pb;
    std::vector<SetExpr> gens;
    for (Nat n = 1; n <= dp.bound; ++n) {
        const bool in = dp.member(n);
        pb.values_.push_back(n);
        pb.positive_.push_back(in ? 1 : 0);
        gens.push_back(in ? SetExpr::multiples(n) : !SetExpr::multiples(n));
    }
    pb.base_ = FilterBase::make(std::move(gens), {}, cfg);
    return pb;
}

std::optional<Nat> PatternBase::witness(std::span<const std::size_t> selection) const {
    Nat d = 1;
    for (std::size_t i : selection) {
        if (!positive_[i]) continue;
        const auto l = checked_lcm(d, values_[i]);
        if (!l) throw CapacityError("lcm witness exceeds 64 bits");
        d = *l;
    }
    for (std::size_t i : selection)
        if (!positive_[i] && d % values_[i] == 0) return std::nullopt;
    return d;
}

}  // namespace ufc
