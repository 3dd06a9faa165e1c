#include "ufc/setalg/nat.hpp"

#include <algorithm>
#include <sstream>

namespace ufc {

Nat lcm_within(Nat a, Nat b, Nat limit) {
    const auto l = checked_lcm(a, b);
    if (!l || *l > limit)
        throw CapacityError("modulus lcm(" + std::to_string(a) + "," + std::to_string(b) + ") exceeds limit");
    return *l;
}

Nat mul_or_throw(Nat a, Nat b, const char* what) {
    const auto p = checked_mul(a, b);
    if (!p) throw CapacityError(std::string(what) + ": 64-bit overflow");
    return *p;
}

namespace {

using u128 = unsigned __int128;

Nat mulmod(Nat a, Nat b, Nat m) { return static_cast<Nat>(static_cast<u128>(a) * b % m); }

Nat powmod(Nat base, Nat exp, Nat m) {
    Nat result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

bool miller_rabin_witness(Nat n, Nat a, Nat d, unsigned r) {
    Nat x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(Nat n) {
    if (n < 2) return false;
    static constexpr Nat small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (Nat p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 41 * 41) return true;
    Nat d = n - 1;
    unsigned r = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++r;
    }
    // Deterministic for all 64-bit n.
    for (Nat a : small)
        if (miller_rabin_witness(n, a, d, r)) return false;
    return true;
}

Nat smallest_prime_factor(Nat n) {
    if (n < 2) throw PreconditionError("smallest_prime_factor requires n >= 2");
    if (n % 2 == 0) return 2;
    for (Nat p = 3; p <= n / p; p += 2)
        if (n % p == 0) return p;
    return n;
}

std::vector<Nat> prime_factors(Nat n) {
    std::vector<Nat> out;
    for (Nat p = 2; p <= n / p; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<Nat> divisors(Nat n) {
    std::vector<Nat> lo;
    std::vector<Nat> hi;
    for (Nat d = 1; d <= n / d; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

Nat isqrt(Nat n) {
    Nat r = 0;
    for (Nat bit = Nat{1} << 31; bit != 0; bit >>= 1U) {
        const Nat cand = r | bit;
        if (cand * cand <= n) r = cand;
    }
    return r;
}

std::optional<Nat> lcm_up_to(Nat k) {
    Nat l = 1;
    for (Nat i = 2; i <= k; ++i) {
        const auto next = checked_lcm(l, i);
        if (!next) return std::nullopt;
        l = *next;
    }
    return l;
}

Nat lcm_depth_for(Nat m) {
    Nat depth = 1;
    for (Nat p : prime_factors(m)) {
        Nat pk = 1;
        while (m % (pk * p) == 0) pk *= p;
        depth = std::max(depth, pk);
    }
    return depth;
}

std::string join_nats(const std::vector<Nat>& xs, const char* sep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) os << sep;
        os << xs[i];
    }
    return os.str();
}

}  // namespace ufc
