#pragma once

// Reference implementations that share no code with the library under test.
// Everything here favors obviousness over speed.

#include <cstdint>
#include <vector>

namespace oracles {

inline bool ref_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::uint64_t ref_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            result -= result / d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Totients via the divisor-sum identity n = sum of phi(d) over d | n; a
// different recurrence from the factoring sieve the library uses.
inline std::vector<std::uint64_t> ref_phi_sieve(std::uint64_t limit) {
    std::vector<std::uint64_t> phi(limit + 1);
    for (std::uint64_t i = 0; i <= limit; ++i) phi[i] = i;
    for (std::uint64_t i = 1; i <= limit; ++i) {
        for (std::uint64_t j = 2 * i; j <= limit; j += i) phi[j] -= phi[i];
    }
    return phi;
}

// Membership by brute force: phi(y) >= sqrt(y/2) for every y >= 1, so any y
// with phi(y) <= m satisfies y <= 2m^2; scanning a little past that settles
// the question. Only sane for small n.
inline bool ref_is_sparsely_totient(std::uint64_t n) {
    const std::uint64_t m = ref_phi(n);
    const std::uint64_t stop = 2 * m * m + 8;
    for (std::uint64_t y = n + 1; y <= stop; ++y) {
        if (ref_phi(y) <= m) return false;
    }
    return true;
}

// Lucas-Lehmer test for the Mersenne number 2^p - 1 with p an odd prime.
inline bool ref_lucas_lehmer(unsigned p) {
    const std::uint64_t mersenne = (p == 64) ? ~0ULL : (1ULL << p) - 1;
    unsigned __int128 s = 4;
    for (unsigned i = 0; i + 2 < p; ++i) {
        s = (s * s) % mersenne;
        s = (s + mersenne - 2) % mersenne;
    }
    return s == 0;
}

}  // namespace oracles
