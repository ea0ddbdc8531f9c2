#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stn/bigint.hpp"

namespace stn {

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

// Smallest prime strictly greater than n. ResourceError if the search would
// leave the 64-bit range.
std::uint64_t next_prime_after(std::uint64_t n);

// The k primes strictly after p, ascending. p must be prime, k >= 1.
std::vector<std::uint64_t> next_primes_after(std::uint64_t p, std::size_t k);

// Calls fn(q) for every prime q in [lo, hi], ascending. Segmented, so the
// range may be large (memory stays bounded); hi is capped at 2^34.
void for_primes_in(std::uint64_t lo, std::uint64_t hi,
                   const std::function<void(std::uint64_t)>& fn);

// Product of all primes <= p. p must be prime.
BigInt primorial(std::uint64_t p);

// Smallest prime q with lo < q <= hi, if any. Bounds are exact rationals and
// the interval is left-open right-closed; endpoint hits count only on the
// right. Requires lo < hi.
std::optional<std::uint64_t> prime_in_left_open_interval(const Rational& lo,
                                                         const Rational& hi);

// True iff some prime q satisfies n < q and 5q < 6n, i.e. the open interval
// (n, 1.2n) contains a prime. Exact integer arithmetic; n >= 1.
bool nagura_holds(std::uint64_t n);

// True iff the third prime after p stays under (9/5)p. p must be prime.
bool p3_growth_check(std::uint64_t p);

// Bit-array sieve over [0, limit] plus the ascending prime list.
// Immutable after construction and safe to share across threads.
class PrimeTable {
  public:
    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::uint64_t prime_count() const { return ordered_.size(); }
    const std::vector<std::uint64_t>& primes() const { return ordered_; }

    // Table lookup below the limit, deterministic Miller-Rabin above it.
    bool is_prime(std::uint64_t n) const;

    // Smallest prime > n; binary search in the table when possible.
    std::uint64_t next_prime(std::uint64_t n) const;

    std::vector<std::uint64_t> next_primes_after(std::uint64_t p, std::size_t k) const;

  private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> ordered_;
};

}  // namespace stn
