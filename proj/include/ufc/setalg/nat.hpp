#pragma once

// Arithmetic on N = {1, 2, 3, ...}. Zero is never an element; it only shows up
// as a residue.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ufc {

using Nat = std::uint64_t;

/// Upper limit on any modulus materialized in a residue table.
inline constexpr Nat kMaxModulus = Nat{1} << 24;

/// A computation needed a modulus or value beyond the supported range.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Nat gcd(Nat a, Nat b) { return std::gcd(a, b); }

inline std::optional<Nat> checked_mul(Nat a, Nat b) {
    Nat out = 0;
    if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
    return out;
}

inline std::optional<Nat> checked_add(Nat a, Nat b) {
    Nat out = 0;
    if (__builtin_add_overflow(a, b, &out)) return std::nullopt;
    return out;
}

inline std::optional<Nat> checked_lcm(Nat a, Nat b) {
    if (a == 0 || b == 0) return Nat{0};
    return checked_mul(a / gcd(a, b), b);
}

/// lcm that throws CapacityError past `limit`.
Nat lcm_within(Nat a, Nat b, Nat limit = kMaxModulus);

Nat mul_or_throw(Nat a, Nat b, const char* what);

bool is_prime(Nat n);
Nat smallest_prime_factor(Nat n);  // n >= 2
std::vector<Nat> prime_factors(Nat n);  // distinct, ascending
std::vector<Nat> divisors(Nat n);       // ascending
Nat isqrt(Nat n);

/// lcm(1, ..., k), or nullopt if it does not fit in 64 bits.
std::optional<Nat> lcm_up_to(Nat k);

/// Smallest k with m | lcm(1..k): the largest prime power dividing m (1 for m = 1).
Nat lcm_depth_for(Nat m);

std::string join_nats(const std::vector<Nat>& xs, const char* sep = ",");

}  // namespace ufc
