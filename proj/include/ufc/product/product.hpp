#pragma once

#include <optional>
#include <vector>

#include "ufc/filter/filter_base.hpp"

namespace ufc {

/// A in p*q, decided from the inside out: the inner verdicts of q on each
/// quotient class of A give the set T = {n : A/n in q}, bracketed between the
/// classes q entails and the classes q does not refute; p decides A only if it
/// decides both ends of the bracket the same way.
Verdict product_member(const SetExpr& a, const Point& p, const Point& q, const Config& cfg = {});
Verdict product_member(const SetBounds& a, const Point& p, const Point& q, const Config& cfg = {});

/// The point p*q, usable wherever a Point is expected.
class ProductPoint final : public Point {
public:
    ProductPoint(PointRef left, PointRef right);

    Verdict decide(const SetBounds& a, const Config& cfg) const override;
    Verdict decide(const SetExpr& a, const Config& cfg) const override;
    std::optional<Nat> principal_point() const override;
    std::string describe() const override;

    const PointRef& left() const noexcept { return left_; }
    const PointRef& right() const noexcept { return right_; }

private:
    PointRef left_;
    PointRef right_;
};

PointRef product(PointRef p, PointRef q);

/// The base {n B : B in q}, with chains carried along.
BaseRef left_mult(Nat n, const BaseRef& q, const Config& cfg = {});

/// Probe family used by verify_factorization when none is given: the
/// generators of q, nN for n <= 32, and P.
std::vector<SetExpr> default_probes(const FilterBase& q);

/// Consistency of q = r*p*s on probe sets. Refuted on any probe where the two
/// sides decide differently; Entailed when every probe is decided on both
/// sides and the probes include a generating family of q; Unknown otherwise.
Verdict verify_factorization(const BaseRef& q, const PointRef& r, const PointRef& p, const PointRef& s,
                             const Config& cfg = {}, std::optional<std::vector<SetExpr>> probes = std::nullopt);

}  // namespace ufc
