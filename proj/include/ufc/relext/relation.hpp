#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ufc/filter/filter_base.hpp"
#include "ufc/setalg/map.hpp"
#include "ufc/setalg/set_expr.hpp"

namespace ufc {

/// A binary relation on N with a membership oracle and an image rule
/// A -> {n : (a, n) in rho for some a in A}.
class Relation {
public:
    enum class Tag { Div, Leq, Kernel, Table };
    using Pairs = std::set<std::pair<Nat, Nat>>;

    /// m | n
    static Relation div();
    /// m <= n
    static Relation leq();
    /// h(m) = h(n)
    static Relation kernel(const MapDescriptor& h);
    /// Finitely many pairs inside [1, universe]^2. Throws PreconditionError for
    /// pairs outside the universe.
    static Relation table(Pairs pairs, Nat universe, std::string label = "table");

    Relation inverse() const;

    Tag tag() const noexcept { return tag_; }
    bool inverted() const noexcept { return inverted_; }
    const MapDescriptor& kernel_map() const;
    std::optional<Nat> universe() const;
    std::string name() const;

    /// (m, n) in rho; nullopt for table relations queried outside the universe.
    std::optional<bool> related(Nat m, Nat n) const;

    bool reflexive() const;
    bool transitive() const;

    /// rho[A], exact whenever A is exact and an exact rule exists.
    SetBounds image(const SplitSet& a) const;
    SetBounds image(const SetBounds& a) const;
    SetBounds image(const SetExpr& a) const { return image(evaluate(a)); }

    /// rho[{x}].
    SetBounds successors(Nat x) const { return image(SplitSet(PeriodicSet::singleton(x))); }

private:
    Tag tag_ = Tag::Div;
    bool inverted_ = false;
    std::optional<MapDescriptor> map_;
    std::shared_ptr<const Pairs> pairs_;
    Nat universe_ = 0;
    std::string label_;
};

/// Whether q extends rho applied to p: rho[A] belongs to the filter of q for
/// every A in the filter of p. Decided on the core of p; chains of p are
/// handled by filter inclusion (reflexive relations), tail cofinality (leq),
/// and bounded refutation at materializable depths.
Verdict ext_related(const Relation& rho, const Point& p, const Point& q, const Config& cfg = {});

struct MinWitness {
    Nat value = 0;
    /// false when x has no successor in B and value is the least element of B.
    bool genuine = false;
};

/// Least y in B with (x, y) in rho, else the least element of B. Exact for
/// sets with an exact form; searched on [1, cfg.oracle_bound] otherwise.
/// Throws PreconditionError when B is empty.
MinWitness min_witness(const Relation& rho, const SetExpr& b, Nat x, const Config& cfg = {});

struct KernelCoherence {
    Verdict verdict;
    /// ext_related(KER(h), p, q)
    Outcome relation_side = Outcome::Unknown;
    /// equality of the images of p and q under h
    Outcome image_side = Outcome::Unknown;
    /// A union of fibres on which the images differ (image side Refuted).
    std::optional<SetExpr> counterexample;
};

/// Both sides of "the extension of ker h is the kernel of the extension of h".
/// Maps of infinite index are accepted only when both images are principal;
/// otherwise PreconditionError.
KernelCoherence kernel_coherence(const MapDescriptor& h, const BaseRef& p, const BaseRef& q, const Config& cfg = {});

}  // namespace ufc
