#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stn/bigint.hpp"
#include "stn/primes.hpp"
#include "stn/totient.hpp"

namespace stn {

struct SparseTotientRecord {
    std::uint64_t n;            // the sparsely totient number
    std::uint64_t phi_n;        // phi(n)
    std::uint64_t block_start;  // least m with N1(m) = n; always equals phi_n
};

struct Bn1Entry {
    std::uint64_t k;         // 1-based index in the ascending enumeration
    std::uint64_t m_k;       // k-th element of the totient image of the set
    std::uint64_t n1_value;  // N1(m_k), the member whose totient is m_k
};

struct Tn1Result {
    std::uint64_t p;
    // Least totient m such that p divides N1(k) for every totient k >= m;
    // equivalently phi of the successor of the largest member coprime to p,
    // or 1 when every member is divisible by p. When not certified this is
    // the best value visible within the table, a lower bound for the truth.
    std::uint64_t value = 1;
    bool certified = false;
    // The divisibility bound that closed the argument, when certified.
    std::optional<BigInt> certificate_bound;
};

// Exact answers about sparsely totient numbers (n with phi(n) < phi(y) for
// every y > n), backed by a totient table. Every positive answer is complete
// by construction: a query whose completeness bound exceeds the table limit
// raises LimitError instead of guessing.
class SparseOracle {
  public:
    SparseOracle(const PrimeTable& primes, const TotientTable& totients);

    std::uint64_t limit() const { return totients_.limit(); }
    const PrimeTable& primes() const { return primes_; }
    const TotientTable& totients() const { return totients_; }

    // N1(m) = max {x : phi(x) <= m}. LimitError when search_bound(m) exceeds
    // the table.
    std::uint64_t n1_of(std::uint64_t m) const;

    // Membership. A tie disqualifies: phi(10) = phi(12) keeps 10 out.
    // Refutation needs only the table; confirmation additionally needs
    // search_bound(phi(n)) <= limit, else LimitError.
    bool is_sparsely_totient(std::uint64_t n) const;

    // Least y > n with phi(y) <= phi(n); nullopt when n is a member.
    std::optional<std::uint64_t> smallest_blocker(std::uint64_t n) const;

    // All members <= up_to, ascending.
    std::vector<SparseTotientRecord> enumerate_n1(std::uint64_t up_to) const;

    // All x with phi(x) = m, ascending and complete.
    std::vector<std::uint64_t> phi_preimage(std::uint64_t m) const;

    // The totient image of the member sequence, ascending, complete for
    // values <= up_to. Member totients strictly ascend, so this is exactly
    // the first k entries of the image.
    std::vector<Bn1Entry> enumerate_bn1(std::uint64_t up_to) const;

    // Divisibility threshold for a prime p; see Tn1Result. Certification
    // needs a coprime-member bound within the table plus a decided successor.
    Tn1Result tn1(std::uint64_t p) const;

  private:
    // Largest n such that membership of every x <= n is decided by the
    // table. Candidate totients strictly ascend, so deciding stops cleanly
    // at the first candidate whose completeness bound leaves the table.
    struct Walk {
        std::vector<std::uint64_t> members;
        std::uint64_t horizon = 0;
        std::optional<std::uint64_t> first_undecided;
    };
    Walk walk_members(std::uint64_t up_to) const;

    const PrimeTable& primes_;
    const TotientTable& totients_;
};

}  // namespace stn
