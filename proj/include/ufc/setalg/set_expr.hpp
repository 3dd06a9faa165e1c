#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ufc/setalg/map.hpp"
#include "ufc/setalg/periodic_set.hpp"
#include "ufc/setalg/split_set.hpp"

namespace ufc {

enum class ExprKind {
    AllN,
    Multiples,    // a N
    Progression,  // {a, a+m, ...}
    Finite,
    Primes,
    Tail,  // [a, inf)
    Complement,
    Union,
    Intersect,
    Quotient,   // child / a
    Scale,      // a * child
    UpClosure,  // multiples of some element of child
    Image,      // f[child]
    Literal,
};

/// Linear bound used when membership in an image has to be searched for.
inline constexpr Nat kDefaultImageSearch = 100000;

/// Immutable expression over subsets of N. Copies share structure.
class SetExpr {
public:
    SetExpr();  // AllN

    static SetExpr all();
    static SetExpr multiples(Nat n);
    static SetExpr progression(Nat a, Nat m);
    static SetExpr finite(std::vector<Nat> elements);
    static SetExpr primes();
    static SetExpr tail(Nat k);
    static SetExpr literal(const SplitSet& s);
    static SetExpr quotient(const SetExpr& e, Nat n);
    static SetExpr scale(Nat n, const SetExpr& e);
    static SetExpr up(const SetExpr& e);
    static SetExpr image(const MapDescriptor& f, const SetExpr& e);

    friend SetExpr operator!(const SetExpr& e);
    friend SetExpr operator&(const SetExpr& a, const SetExpr& b);
    friend SetExpr operator|(const SetExpr& a, const SetExpr& b);
    friend SetExpr operator-(const SetExpr& a, const SetExpr& b) { return a & !b; }

    ExprKind kind() const noexcept;
    /// n for Multiples/Quotient/Scale, a for Progression, k for Tail.
    Nat param() const noexcept;
    /// m for Progression.
    Nat param2() const noexcept;
    const std::vector<Nat>& elements() const noexcept;
    std::size_t arity() const noexcept;
    const SetExpr& child(std::size_t i) const;
    const MapDescriptor& map() const;
    const SplitSet& literal_value() const;

    /// n in e. Exact for every node except images with infinite fibres, which
    /// are searched over [1, search].
    bool member(Nat n, Nat search = kDefaultImageSearch) const;

    /// Structural text in the CLI grammar (not normalized).
    std::string to_string() const;

    bool same_node(const SetExpr& other) const noexcept { return node_ == other.node_; }

private:
    struct Node;
    static std::shared_ptr<Node> make_node(ExprKind k);
    explicit SetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Bracket around the value of e. Exact whenever every node has an exact
/// rule. Nodes whose computation exceeds capacity widen to [empty, N].
SetBounds evaluate(const SetExpr& e);

struct NotRepresentable {
    SetExpr offending;
    std::string reason;
    SetBounds bounds;
};

using Normalized = std::variant<PeriodicSet, NotRepresentable>;

Normalized normalize(const SetExpr& e);

}  // namespace ufc
