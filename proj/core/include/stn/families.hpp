#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stn/bigint.hpp"
#include "stn/totient.hpp"

namespace stn {

enum class FamilyKind { X, Y, Primorial };

struct FamilyElement {
    FamilyKind kind;
    std::uint64_t param_n = 0;  // X: n
    std::uint64_t param_p = 0;  // X and Y and Primorial: p
    std::uint64_t param_k = 0;  // Y: k
    Factorization value;
    bool structural_member = false;           // the construction's own membership test
    std::optional<bool> oracle_verdict;       // filled by callers that hold a sparse oracle
};

// X_{n,p} = (n / rad(n)) * (product of primes <= p). Structural membership
// criterion: p > n/2.
FamilyElement x_np(std::uint64_t n, std::uint64_t p);

// Membership test for the X-family closure: v is a member iff v = b * Z_p for
// a prime p and cofactor b with b * rad(b) < 2p. Testing the largest prime p
// whose full prime prefix divides v suffices: shrinking to that p only
// shrinks b * rad(b). Returns the witness (b, p) when v is a member.
std::optional<std::pair<BigInt, std::uint64_t>> x_structural_member(const Factorization& v);
bool in_x(std::uint64_t v);

// Y_{p,k} = product of all primes in [2, p_k] except p, where p_k is the k-th
// prime after p. Structural membership: k=1 and p >= 5; k=2 and p >= 11 in
// E2; k=3 and p >= 11 in E3. k must be 1, 2 or 3.
FamilyElement y_pk(std::uint64_t p, std::uint64_t k);

// Z_p, the primorial, as a family element (always a structural member).
FamilyElement primorial_element(std::uint64_t p);

struct E2Record {
    std::uint64_t p, p1, p2;                    // p and the next two primes
    Rational a_p;                               // p1*p2/p
    Rational d_p;                               // (p1-p)(p2-p) / (p(p-1))
    std::optional<std::uint64_t> blocking_prime;  // the prime in (a_p, a_p+d_p], if any
    bool in_e2 = false;                         // true iff blocking_prime is absent
    Rational frac;                              // fractional part of a_p
};

// Exact membership test for E2: no prime in (a_p, a_p + d_p].
E2Record in_e2(std::uint64_t p);

struct E3Result {
    bool member = false;
    // When not a member: the quantifier prime q and the prime found inside
    // its interval.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> blocker;
};

// Exact membership test for E3 (p >= 11): for every prime q > p the interval
//   ( p1*p2*p3/(p*q),  1 + (p1-1)(p2-1)(p3-1)/((p-1)(q-1)) ]
// contains no prime above q. Only finitely many q need checking: once
// (q-1)^2 >= (p1-1)(p2-1)(p3-1)/(p-1) the interval's right end is <= q, so
// scanning q up to 1 + ceil(sqrt(...)) decides membership.
E3Result in_e3(std::uint64_t p);

struct GapCriteria {
    std::uint64_t p1 = 0, p2 = 0;
    std::optional<std::uint64_t> small_gap;     // p1 - p when it is 2, 4, 6 or 8
    bool twin_then_six = false;                 // p1 = p+2 and p2 = p+6
    std::optional<std::pair<std::uint64_t, std::uint64_t>> bounded_pair;  // (a,b), p >= 2ab
};

// Classifies p (>= 11, prime) against the three sufficient gap criteria.
GapCriteria consecutive_prime_criteria(std::uint64_t p);

// Full E2 records for every prime in [11, max_p], ascending.
std::vector<E2Record> scan_fractional(std::uint64_t max_p, unsigned parallelism = 1);

struct E3ScanRow {
    std::uint64_t p;
    E3Result result;
};
std::vector<E2Record> scan_e2(std::uint64_t max_p, unsigned parallelism = 1);
std::vector<E3ScanRow> scan_e3(std::uint64_t max_p, unsigned parallelism = 1);

struct GapCriteriaRow {
    std::uint64_t p;
    GapCriteria criteria;
};
std::vector<GapCriteriaRow> scan_gap_criteria(std::uint64_t max_p, unsigned parallelism = 1);

}  // namespace stn
