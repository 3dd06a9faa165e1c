#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufc/filter/chain.hpp"
#include "ufc/filter/verdict.hpp"
#include "ufc/setalg/map.hpp"
#include "ufc/setalg/set_expr.hpp"

namespace ufc {

/// Anything that answers "does every ultrafilter extending this contain A".
class Point {
public:
    virtual ~Point() = default;

    /// Verdict for a set known through bounds: Entailed must hold for every
    /// set between lower and upper, Refuted likewise.
    virtual Verdict decide(const SetBounds& a, const Config& cfg) const = 0;
    /// Verdict for an expression; principal points decide by membership.
    virtual Verdict decide(const SetExpr& a, const Config& cfg) const;

    /// n when this is the principal ultrafilter of n.
    virtual std::optional<Nat> principal_point() const { return std::nullopt; }
    virtual std::string describe() const = 0;
};

using PointRef = std::shared_ptr<const Point>;

/// Outcome of testing a descending chain family against a set D: whether
/// D n C_k is empty for some k.
struct ChainKill {
    enum class State { Killed, Never, Unknown };
    State state = State::Unknown;
    /// Least examined depth at which the intersection is empty (Killed).
    Nat depth = 0;
};

/// Intersection of the chain elements at depth k, if it fits in memory.
/// An empty chain list gives N.
std::optional<SplitSet> chain_element(const std::vector<Chain>& chains, Nat k);

/// Decides whether d n C_k = empty for some k, where C_k is the intersection
/// of the chains at depth k. Built-in chains are decided symbolically; custom
/// chains are examined up to cfg.depth_limit.
ChainKill chain_kill(const std::vector<Chain>& chains, const SplitSet& d, const Config& cfg);

struct FipResult {
    bool ok = false;
    /// ok: an element of every generator and of the first chain elements.
    std::optional<Nat> witness;
    /// !ok: indices of a minimal set of generators with empty intersection
    /// (together with the chain element at chain_depth, when set).
    std::vector<std::size_t> empty_subfamily;
    std::optional<Nat> chain_depth;
    /// Undetermined cases and custom-chain caveats.
    std::string message;
};

FipResult fip_check(const std::vector<SetExpr>& gens, const std::vector<Chain>& chains, const Config& cfg = {});

class FipViolation : public std::runtime_error {
public:
    FipViolation(const std::string& what, FipResult result) : std::runtime_error(what), result_(std::move(result)) {}
    const FipResult& result() const noexcept { return result_; }

private:
    FipResult result_;
};

/// A filter base on N: finitely many generators and chains (Plain), or the
/// image of another base under a map (Image). Immutable.
class FilterBase final : public Point {
public:
    enum class Kind { Plain, Image };

    struct Generator {
        SetExpr expr;
        SetBounds bounds;
    };

    /// Throws FipViolation if the family is provably not FIP, or if FIP
    /// cannot be established within cfg.oracle_bound.
    static std::shared_ptr<const FilterBase> make(std::vector<SetExpr> gens, std::vector<Chain> chains = {},
                                                  const Config& cfg = {});
    /// The base {{n}}.
    static std::shared_ptr<const FilterBase> principal(Nat n);
    static std::shared_ptr<const FilterBase> image(const MapDescriptor& f, std::shared_ptr<const FilterBase> source);

    Kind kind() const noexcept { return kind_; }
    bool is_plain() const noexcept { return kind_ == Kind::Plain; }

    const std::vector<Generator>& generators() const noexcept { return gens_; }
    std::vector<SetExpr> generator_exprs() const;
    const std::vector<Chain>& chains() const noexcept { return chains_; }
    bool has_chain(Chain::Kind k) const;

    /// Bracket around the intersection of the generators (chains excluded).
    const SplitSet& core_lower() const noexcept { return core_lo_; }
    const SplitSet& core_upper() const noexcept { return core_hi_; }
    bool core_exact() const { return core_lo_ == core_hi_; }
    /// An element of every generator and first chain element.
    std::optional<Nat> fip_witness() const noexcept { return witness_; }

    /// Image bases only.
    const MapDescriptor& map() const;
    const std::shared_ptr<const FilterBase>& source() const;

    Verdict decide(const SetBounds& a, const Config& cfg) const override;
    Verdict decide(const SetExpr& a, const Config& cfg) const override;
    std::optional<Nat> principal_point() const override { return principal_; }
    std::string describe() const override;

private:
    FilterBase() = default;
    Verdict decide_plain(const SetBounds& a, const Config& cfg) const;

    Kind kind_ = Kind::Plain;
    std::vector<Generator> gens_;
    std::vector<Chain> chains_;
    SplitSet core_lo_;
    SplitSet core_hi_;
    std::optional<Nat> witness_;
    std::optional<Nat> principal_;
    std::optional<MapDescriptor> map_;
    std::shared_ptr<const FilterBase> source_;
};

using BaseRef = std::shared_ptr<const FilterBase>;

Verdict entails(const Point& p, const SetExpr& a, const Config& cfg = {});
Verdict entails(const Point& p, const SplitSet& a, const Config& cfg = {});

/// The base {f[B] : B in p}. Finite cores, affine maps and class maps give
/// plain bases; other maps give image bases decided through preimages.
/// Throws PreconditionError for a map with no evaluation rule.
BaseRef pushforward(const MapDescriptor& f, const BaseRef& p, const Config& cfg = {});

/// Nonempty atoms of the Boolean algebra generated by gens. Each set splits
/// into (atom & g, atom \ g) in generator order.
std::vector<PeriodicSet> subalgebra_atoms(const std::vector<PeriodicSet>& gens);

}  // namespace ufc
