#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stn/bigint.hpp"
#include "stn/families.hpp"
#include "stn/totient.hpp"

namespace stn {

class SparseOracle;  // sparse.hpp; taken by reference to avoid a header cycle

// D(A,B) = prod_{q in A} (q-1)/q * prod_{q in B} q/(q-1) for finite prime
// sets: the ratio of the totient densities phi/n restricted to A and B.
// Duplicates are collapsed; every element must be prime.
Rational phi_density_ratio(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b);

// The part of y supported on the primes of n: v_q = v_q(y) for q | n, else 0.
Factorization common_part(std::uint64_t n, std::uint64_t y);

// The exact correction factor pairing n against y:
//   prod_{q | K} q^(v_q(n)-v_q(y)) * prod_{q | n, q not | K} q^(v_q(n)-1)
// with K = common_part(n, y). May be non-integral (e.g. 2/3 for n=12, y=18);
// always <= n/2.
Rational excess_ratio(std::uint64_t n, std::uint64_t y);

enum class WitnessCase { ExponentAbove2, ExponentEquals2, ExponentEquals1, BlockSwap };

struct WitnessResult {
    Factorization y;       // y > N with phi(y) <= phi(N) (strict for BlockSwap)
    BigInt phi_y;
    WitnessCase case_used;
};

// Given p < q primes with p not dividing N and q^r | N, builds y > N with
// phi(y) <= phi(N) by moving r powers of q onto a multiple of p. Case guards:
//   r = 1 requires q >= (p-1)^2 + p,
//   r = 2 requires (2q - p)^2 >= p^2 + 4(p-1)^2,
//   r > 2 needs only q > p.
// Construction: pick k in [1, p-1] with q^r + k ≡ 0 (mod p), set n = q^r + k,
// split the other primes of N by divisibility of n, and return
// y = S * T * n * q^(v_q(N) - r).
WitnessResult witness_from_large_prime(const Factorization& N, std::uint64_t p,
                                       std::uint64_t q, std::uint32_t r);

// Smallest prime t >= p such that the squarefree block B = prod of primes in
// [p, t] satisfies n * phi(B) <= B. p prime, n >= 2. The block's totient
// ratio prod (1 - 1/u) is decreasing, so the threshold is well defined.
std::uint64_t totient_drop_prime(std::uint64_t p, std::uint64_t n);

// Largest exponent a prime q < p can carry in a sparsely totient number all
// of whose prime factors are below p: the alpha with q^alpha < A < q^(alpha+1)
// where A = prod of primes in [p, totient_drop_prime(p, q)].
std::uint64_t exponent_cap_below(std::uint64_t p, std::uint64_t q);

// Given q < p primes, N with every prime factor below p and
// v_q(N) > exponent_cap_below(p, q), builds y > N with phi(y) < phi(N) by
// swapping excess q-powers for the block A of primes in [p, drop prime].
WitnessResult witness_from_small_prime(const Factorization& N, std::uint64_t p,
                                       std::uint64_t q);

// Largest exponent a prime q > p can carry in a sparsely totient number not
// divisible by p: 0 when q > p(p-1); 1 when (2q-p)^2 >= p^2 + 4(p-1)^2;
// otherwise 2.
int exponent_cap_above(std::uint64_t p, std::uint64_t q);

// Certified upper bound on every sparsely totient number not divisible by p:
//   B* = prod_{q < s0, q != p} q^e(q),   s0 = smallest prime > (p-1)^2 + p,
// with e(q) = exponent_cap_above(p, q) for q > p (exponent_cap_below(s0, q)
// is always >= 2 there, so the minimum of the two is the cap above), and for
// q < p either exponent_cap_below(s0, q) or, when p - 1 = q^j exactly, the
// exchange cap j (if v_q(N) > j then N * p / q^j beats N, a tie, so N is
// not sparsely totient). The value can be astronomically large; that is an
// honest output. ResourceError when the block search passes desk scale.
BigInt coprime_bound(std::uint64_t p);

// Same bound, but abandons the computation (returning nullopt) as soon as the
// running product provably exceeds cap. Cheap for every p.
std::optional<BigInt> coprime_bound_within(std::uint64_t p, const BigInt& cap);

// Smallest prime not dividing n.
std::uint64_t smallest_nondividing_prime(const BigInt& n);

struct IpWitness {
    std::uint64_t p;
    std::vector<FamilyElement> sequence;  // X_{n_i, p}
};

// Builds a sequence whose every finite subset sum is an X-family member:
// with m_i = n_i / rad(n_i), picks the smallest prime p > (sum m_i)^2 and
// returns X_{n_i, p}. Each subset sum is u * Z_p with u <= sum m_i, and
// u * rad(u) <= u^2 < 2p keeps the structural test satisfied.
IpWitness ip_witness(const std::vector<std::uint64_t>& n_list);

// Multiplicatively closed prefix: x_1 = X_{2,2} = 2, then
// x_n = X_{2, p_n} with p_n the smallest prime > x_{n-1}^n, so that products
// of distinct terms stay in the family. ResourceError once the next prime
// search leaves 64-bit range (count >= 4).
std::vector<FamilyElement> mult_ip_prefix(int count);

// Lifts a progression m_1..m_k into the family: b_i = m_i * rad(m_i), p the
// smallest prime with 2p > max b_i, result X_{b_i, p} = m_i * Z_p (scaling
// preserves arithmetic and geometric structure).
std::vector<FamilyElement> lift_progression(const std::vector<std::uint64_t>& m_list);

// True iff both x + y and x * y pass the X-family membership test.
bool sum_product_in_x(std::uint64_t x, std::uint64_t y);

struct GapReport {
    std::vector<std::uint64_t> elements;  // sparsely totient numbers in [lo, hi]
    std::vector<std::uint64_t> gaps;      // consecutive differences
    std::uint64_t min_gap = 0;            // 0 when fewer than two elements
    // For each small prime P: the last element whose successor gap P does not
    // divide (nullopt when every in-range gap is divisible by P).
    std::vector<std::pair<std::uint64_t, std::optional<std::uint64_t>>> last_gap_not_divisible;
};

GapReport additive_gap_report(const SparseOracle& oracle, std::uint64_t lo, std::uint64_t hi);

}  // namespace stn
