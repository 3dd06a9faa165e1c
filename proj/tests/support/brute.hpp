#pragma once

// Independent brute-force reference used by the tests. Deliberately naive:
// everything is a membership table over [1, B] built from first principles.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace brute {

using Nat = std::uint64_t;
using Member = std::function<bool(Nat)>;

/// table[n] for n in [0, B]; table[0] is always false.
inline std::vector<bool> table(const Member& f, Nat bound) {
    std::vector<bool> t(bound + 1, false);
    for (Nat n = 1; n <= bound; ++n) t[n] = f(n);
    return t;
}

inline bool prime(Nat n) {
    if (n < 2) return false;
    for (Nat d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Nat gcd(Nat a, Nat b) {
    while (b != 0) {
        const Nat t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Nat lcm(Nat a, Nat b) { return a / gcd(a, b) * b; }

/// n in up(A): some divisor of n is in A.
inline bool up_member(const Member& a, Nat n) {
    for (Nat d = 1; d <= n; ++d)
        if (n % d == 0 && a(d)) return true;
    return false;
}

/// Every multiple of n up to `horizon` lies in A.
inline bool multiples_inside(const Member& a, Nat n, Nat horizon) {
    for (Nat k = n; k <= horizon; k += n)
        if (!a(k)) return false;
    return true;
}

/// A random eventually periodic set given as a plain membership rule.
struct RandomPeriodic {
    Nat modulus = 1;
    std::vector<bool> residues;
    std::vector<Nat> flips;  // points whose membership is inverted

    bool operator()(Nat n) const {
        bool in = residues[n % modulus];
        for (Nat f : flips)
            if (f == n) in = !in;
        return in;
    }
};

inline RandomPeriodic random_periodic(std::mt19937_64& rng, Nat max_modulus = 36, Nat max_flip = 60) {
    RandomPeriodic r;
    r.modulus = std::uniform_int_distribution<Nat>(1, max_modulus)(rng);
    r.residues.resize(r.modulus);
    const double density = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    std::bernoulli_distribution coin(density);
    for (auto&& b : r.residues) b = coin(rng);
    const int nflips = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < nflips; ++i) r.flips.push_back(std::uniform_int_distribution<Nat>(1, max_flip)(rng));
    return r;
}

}  // namespace brute
