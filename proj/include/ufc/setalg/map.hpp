#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ufc/setalg/split_set.hpp"

namespace ufc {

/// A map N -> N together with whatever image and preimage rules are known
/// for it. Affine maps and class maps have exact rules on every SplitSet; the
/// squaring map has an exact preimage rule; named maps carry only their values
/// and, optionally, their finite fibres.
class MapDescriptor {
public:
    enum class Kind { Affine, Class, Square, Named };
    using Fn = std::function<Nat(Nat)>;
    /// Every x with f(x) = y, or nullopt when the fibre is infinite or unknown.
    using FiberFn = std::function<std::optional<std::vector<Nat>>(Nat)>;

    /// n -> a n + b; requires a >= 1 and a + b >= 1.
    static MapDescriptor affine(Nat a, std::int64_t b);
    static MapDescriptor identity() { return affine(1, 0); }
    static MapDescriptor scaling(Nat n) { return affine(n, 0); }
    /// n -> values[n mod values.size()].
    static MapDescriptor class_map(std::vector<Nat> values);
    /// n -> ((n - 1) mod k) + 1.
    static MapDescriptor mod_classes(Nat k);
    static MapDescriptor constant(Nat c) { return class_map({c}); }
    static MapDescriptor square();
    static MapDescriptor named(std::string name, Fn fn, FiberFn fiber = {});
    /// n -> n / spf(n), with 1 -> 1.
    static MapDescriptor spf_quotient();

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    bool is_identity() const noexcept { return kind_ == Kind::Affine && a_ == 1 && b_ == 0; }
    Nat affine_factor() const noexcept { return a_; }
    std::int64_t affine_offset() const noexcept { return b_; }
    /// Class map values, indexed by residue.
    const std::vector<Nat>& class_values() const noexcept { return values_; }
    Nat class_count() const noexcept { return values_.size(); }

    Nat apply(Nat n) const;
    std::optional<std::vector<Nat>> fiber(Nat y) const;

    /// f[S], exact when possible.
    SetBounds image(const SplitSet& s) const;
    /// f^{-1}[S], exact when possible.
    SetBounds preimage(const SplitSet& s) const;
    /// f[{x in e : x <= search}] for a set known only through membership.
    std::vector<Nat> image_of_prefix(const std::function<bool(Nat)>& member, Nat search) const;

    bool operator==(const MapDescriptor& other) const;
    std::string render() const;

private:
    Kind kind_ = Kind::Affine;
    std::string name_;
    Nat a_ = 1;
    std::int64_t b_ = 0;
    std::vector<Nat> values_;
    std::shared_ptr<const Fn> fn_;
    std::shared_ptr<const FiberFn> fiber_;
};

}  // namespace ufc
