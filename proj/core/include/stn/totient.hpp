#pragma once

#include <cstdint>
#include <vector>

#include "stn/bigint.hpp"

namespace stn {

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exp;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Exact factored form: strictly ascending primes, exponents >= 1, value kept
// alongside. Family constructions above 64 bits carry their factorization
// this way instead of ever factoring the value.
class Factorization {
  public:
    Factorization();  // the empty product, value 1

    // Validates primality, ordering and positive exponents.
    static Factorization from_pairs(std::vector<PrimePower> pairs);

    const std::vector<PrimePower>& pairs() const { return pairs_; }
    const BigInt& value() const { return value_; }

    std::uint32_t valuation(std::uint64_t q) const;  // v_q, 0 when q does not divide
    bool divisible_by(std::uint64_t q) const { return valuation(q) > 0; }
    BigInt radical() const;
    std::vector<std::uint64_t> prime_set() const;

    Factorization times(const Factorization& other) const;           // exponents add
    Factorization with_valuation(std::uint64_t q, std::uint32_t e) const;  // replace v_q

  private:
    std::vector<PrimePower> pairs_;
    BigInt value_;
};

// phi over the factored form: prod q^(e-1) * (q-1). Exact at any width.
BigInt phi_of_factorization(const Factorization& f);

// Factor a positive integer. Inputs wider than 64 bits are rejected with
// UnsupportedInputError; construct those via Factorization::from_pairs.
Factorization factorize(std::uint64_t n);
Factorization factorize(const BigInt& n);

// Completeness bound for totient searches: every n with phi(n) <= m
// satisfies n <= search_bound(m). Monotone in m; exact integer arithmetic.
//
// Let k_max be the largest k with phi(2*3*...*p_k) <= m. A number with more
// distinct prime factors already has phi > m; one with j <= k_max of them has
// n/phi(n) = prod q/(q-1) <= prod_{i<=k_max} p_i/(p_i-1), so
// n <= floor(m * prod p_i / prod (p_i - 1)).
std::uint64_t search_bound(std::uint64_t m);

// Linear totient sieve over [1, limit] plus a suffix-minimum array and the
// smallest-prime-factor table. Immutable after construction.
class TotientTable {
  public:
    explicit TotientTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::uint64_t phi(std::uint64_t n) const;            // 1 <= n <= limit
    std::uint64_t suffix_min_at(std::uint64_t i) const;  // min phi over [i, limit]

    // min phi over (n, limit]; UINT64_MAX when the tail is empty.
    std::uint64_t min_phi_above(std::uint64_t n) const;

    // Smallest-prime-factor chain; fast path for n <= limit.
    Factorization factorize(std::uint64_t n) const;

    // Test hook only: breaks the table's invariants on purpose so the
    // acceptance suite's failure path can be exercised.
    void corrupt_phi_for_testing(std::uint64_t n, std::uint64_t bogus);

  private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> phi_;
    std::vector<std::uint32_t> suffix_min_;
    std::vector<std::uint32_t> spf_;
};

}  // namespace stn
