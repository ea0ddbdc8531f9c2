#include "stn/structure.hpp"

#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "stn/errors.hpp"
#include "stn/primes.hpp"
#include "stn/sparse.hpp"
#include "stn/totient.hpp"

using stn::BigInt;
using stn::Factorization;
using stn::Rational;

TEST_CASE("phi_density_ratio multiplies the per-prime density factors") {
    CHECK(stn::phi_density_ratio({}, {}) == 1);
    CHECK(stn::phi_density_ratio({2, 3}, {}) == Rational(1, 3));
    CHECK(stn::phi_density_ratio({}, {2, 3}) == 3);
    CHECK(stn::phi_density_ratio({2, 3, 3}, {3, 2}) == 1);  // duplicates collapse
    CHECK(stn::phi_density_ratio({5}, {7}) == Rational(4 * 7, 5 * 6));
    CHECK_THROWS_AS(stn::phi_density_ratio({4}, {}), stn::UsageError);
}

TEST_CASE("the density identity phi(y)/phi(x) = (y/x) D(W(y), W(x)) holds") {
    for (std::uint64_t x = 1; x <= 400; ++x) {
        for (std::uint64_t y = x + 1; y <= 401; ++y) {
            const Rational lhs(oracles::ref_phi(y), oracles::ref_phi(x));
            const Rational d = stn::phi_density_ratio(stn::factorize(y).prime_set(),
                                                      stn::factorize(x).prime_set());
            CHECK(lhs == Rational(y, x) * d);
        }
    }
}

TEST_CASE("density ratios D(B, A) stay at or above one for dominated pairs") {
    // D(B, A) >= 1 whenever |B| <= |A| and either B is a subset of A or every
    // prime B adds lies above all of A.
    std::mt19937_64 gen(23);
    std::vector<std::uint64_t> pool;
    stn::for_primes_in(2, 400, [&](std::uint64_t q) { pool.push_back(q); });
    int checked = 0;
    while (checked < 1000) {
        std::vector<std::uint64_t> a, b;
        const std::size_t cut = 10 + gen() % 20;
        for (std::size_t i = 0; i < cut; ++i) {
            if (gen() % 2) a.push_back(pool[i]);
        }
        if (a.empty()) continue;
        if (gen() % 2) {
            // Branch 1: B a subset of A.
            for (std::uint64_t q : a) {
                if (gen() % 2) b.push_back(q);
            }
        } else {
            // Branch 2: the primes of B \ A all exceed max(A), |B| <= |A|.
            for (std::uint64_t q : a) {
                if (gen() % 3) b.push_back(q);
            }
            for (std::size_t i = cut; i < pool.size() && b.size() < a.size(); ++i) {
                if (gen() % 3 == 0) b.push_back(pool[i]);
            }
        }
        if (b.size() > a.size()) continue;
        CHECK(stn::phi_density_ratio(b, a) >= 1);
        ++checked;
    }
}

TEST_CASE("shifted products of q-1 grow with the prime set") {
    // For A != B with |A| <= |B| and min(B \ A) > max(A):
    // prod_{q in B} (q-1) > prod_{q in A} (q-1).
    std::mt19937_64 gen(29);
    std::vector<std::uint64_t> pool;
    stn::for_primes_in(2, 400, [&](std::uint64_t q) { pool.push_back(q); });
    int checked = 0;
    while (checked < 1000) {
        const std::size_t cut = 5 + gen() % 30;
        std::vector<std::uint64_t> a, b;
        for (std::size_t i = 0; i < cut; ++i) {
            if (gen() % 2) a.push_back(pool[i]);
        }
        b = a;
        for (std::size_t i = cut; i < pool.size() && b.size() < a.size() + 4; ++i) {
            if (gen() % 3 == 0) b.push_back(pool[i]);
        }
        if (b.size() == a.size()) continue;  // need B strictly larger
        BigInt pa = 1, pb = 1;
        for (std::uint64_t q : a) pa *= q - 1;
        for (std::uint64_t q : b) pb *= q - 1;
        CHECK(pb > pa);
        ++checked;
    }
}

TEST_CASE("common_part and excess_ratio match their worked examples") {
    CHECK(stn::common_part(6, 10).value() == 2);
    CHECK(stn::common_part(12, 18).value() == 2 * 9);
    CHECK(stn::excess_ratio(6, 10) == 1);
    CHECK(stn::excess_ratio(12, 18) == Rational(2, 3));
}

TEST_CASE("excess_ratio never exceeds n/2") {
    for (std::uint64_t n = 2; n <= 200; ++n) {
        for (std::uint64_t y = 1; y <= 200; ++y) {
            CHECK(stn::excess_ratio(n, y) <= Rational(n, 2));
        }
    }
}

TEST_CASE("witness_from_large_prime reproduces the worked example") {
    // N = 7, p = 3, q = 7, r = 1: k = 2, y = 9, phi drops from 6 to 6.
    const auto w = stn::witness_from_large_prime(stn::factorize(7), 3, 7, 1);
    CHECK(w.y.value() == 9);
    CHECK(w.phi_y == 6);
    CHECK(w.case_used == stn::WitnessCase::ExponentEquals1);
}

TEST_CASE("witness_from_large_prime enforces its case guards") {
    // q = 5 < (3-1)^2 + 3 = 7 fails the r = 1 guard.
    CHECK_THROWS_AS(stn::witness_from_large_prime(stn::factorize(10), 3, 5, 1),
                    stn::UsageError);
    // p must not divide N; q^r must divide N.
    CHECK_THROWS_AS(stn::witness_from_large_prime(stn::factorize(21), 3, 7, 1),
                    stn::UsageError);
    CHECK_THROWS_AS(stn::witness_from_large_prime(stn::factorize(7), 3, 7, 2),
                    stn::UsageError);
}

TEST_CASE("witness_from_large_prime covers all three exponent cases") {
    const auto w1 = stn::witness_from_large_prime(stn::factorize(11 * 11), 2, 11, 2);
    CHECK(w1.case_used == stn::WitnessCase::ExponentEquals2);
    CHECK(w1.y.value() > 121);
    CHECK(w1.phi_y <= 110);

    const auto w2 =
        stn::witness_from_large_prime(Factorization::from_pairs({{7, 3}}), 3, 7, 3);
    CHECK(w2.case_used == stn::WitnessCase::ExponentAbove2);
    CHECK(w2.y.value() > 343);
    CHECK(w2.phi_y <= 294);
}

TEST_CASE("totient_drop_prime reproduces the anchor blocks") {
    CHECK(stn::totient_drop_prime(2, 2) == 2);
    CHECK(stn::totient_drop_prime(3, 2) == 7);    // 3*5*7 = 105 vs 2*2*4*6
    CHECK(stn::totient_drop_prime(5, 2) == 23);   // block through 23
    CHECK_THROWS_AS(stn::totient_drop_prime(4, 2), stn::UsageError);
    CHECK_THROWS_AS(stn::totient_drop_prime(5, 1), stn::UsageError);
}

TEST_CASE("exponent_cap_below reproduces the anchor caps") {
    CHECK(stn::exponent_cap_below(3, 2) == 6);    // 2^6 < 105 < 2^7
    CHECK(stn::exponent_cap_below(5, 2) == 25);
    CHECK(stn::exponent_cap_below(5, 3) > 2);
    CHECK_THROWS_AS(stn::exponent_cap_below(5, 5), stn::UsageError);
    CHECK_THROWS_AS(stn::exponent_cap_below(3, 5), stn::UsageError);
}

TEST_CASE("witness_from_small_prime swaps excess powers for the block") {
    // N = 2^10, p = 3, q = 2: cap is 6, so y = 2^4 * 105 = 1680 with a
    // strictly smaller totient (384 < 512).
    const auto w = stn::witness_from_small_prime(stn::factorize(1024), 3, 2);
    CHECK(w.y.value() == 1680);
    CHECK(w.phi_y == 384);
    CHECK(w.case_used == stn::WitnessCase::BlockSwap);
    CHECK(stn::phi_of_factorization(stn::factorize(1024)) == 512);
}

TEST_CASE("witness_from_small_prime rejects exponents at or below the cap") {
    CHECK_THROWS_AS(stn::witness_from_small_prime(stn::factorize(64), 3, 2),
                    stn::UsageError);
    // N may not contain primes at or above p.
    CHECK_THROWS_AS(stn::witness_from_small_prime(stn::factorize(3 * 1024), 3, 2),
                    stn::UsageError);
}

TEST_CASE("exponent_cap_above classifies primes above p") {
    CHECK(stn::exponent_cap_above(3, 5) == 1);
    CHECK(stn::exponent_cap_above(3, 7) == 0);   // 7 > 3*2
    CHECK(stn::exponent_cap_above(2, 3) == 0);   // 3 > 2*1
    CHECK(stn::exponent_cap_above(5, 7) == 2);
    CHECK(stn::exponent_cap_above(5, 11) == 1);
    CHECK(stn::exponent_cap_above(5, 23) == 0);
    CHECK_THROWS_AS(stn::exponent_cap_above(5, 5), stn::UsageError);
}

TEST_CASE("coprime_bound matches the hand-computed values for 2 and 3") {
    CHECK(stn::coprime_bound(2) == 1);
    CHECK(stn::coprime_bound(3) == 10);  // 2 * 5
}

TEST_CASE("coprime_bound_within abandons expensive searches early") {
    CHECK(stn::coprime_bound_within(3, BigInt(2'500'000)) == BigInt(10));
    CHECK_FALSE(stn::coprime_bound_within(5, BigInt(2'500'000)).has_value());
    CHECK_FALSE(stn::coprime_bound_within(3, BigInt(5)).has_value());
}

TEST_CASE("smallest_nondividing_prime walks the prime ladder") {
    CHECK(stn::smallest_nondividing_prime(BigInt(1)) == 2);
    CHECK(stn::smallest_nondividing_prime(BigInt(2)) == 3);
    CHECK(stn::smallest_nondividing_prime(BigInt(30)) == 7);
    CHECK(stn::smallest_nondividing_prime(BigInt(9)) == 2);
    CHECK_THROWS_AS(stn::smallest_nondividing_prime(BigInt(0)), stn::UsageError);
}

TEST_CASE("ip_witness picks the prime from the scaled-radical sums") {
    const auto w = stn::ip_witness({2, 3, 4});
    CHECK(w.p == 17);  // m = {1, 1, 2}, (sum m)^2 = 16, next prime 17
    REQUIRE(w.sequence.size() == 3);
    CHECK(w.sequence[0].value.value() == 510510);
    CHECK(w.sequence[1].value.value() == 510510);
    CHECK(w.sequence[2].value.value() == 1021020);
    for (const auto& el : w.sequence) CHECK(el.structural_member);
    CHECK_THROWS_AS(stn::ip_witness({}), stn::UsageError);
    CHECK_THROWS_AS(stn::ip_witness({0}), stn::UsageError);
}

TEST_CASE("every subset sum of the ip witness stays in the X family") {
    const auto w = stn::ip_witness({2, 3, 4});
    for (unsigned mask = 1; mask < 8; ++mask) {
        BigInt sum = 0;
        for (unsigned i = 0; i < 3; ++i) {
            if (mask & (1u << i)) sum += w.sequence[i].value.value();
        }
        CHECK(stn::in_x(stn::to_u64(sum)));
    }
}

TEST_CASE("mult_ip_prefix grows doubly exponentially and stops honestly") {
    const auto two = stn::mult_ip_prefix(2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].value.value() == 2);
    CHECK(two[1].value.value() == 30);   // p_2 = 5 after x_1^2 = 4
    CHECK(two[1].param_p == 5);

    const auto three = stn::mult_ip_prefix(3);
    REQUIRE(three.size() == 3);
    CHECK(three[2].param_p == 27011);    // next prime after 30^3 = 27000
    CHECK(three[2].value.value().str().size() == 11660);

    CHECK_THROWS_AS(stn::mult_ip_prefix(4), stn::ResourceError);
    CHECK_THROWS_AS(stn::mult_ip_prefix(0), stn::UsageError);
}

TEST_CASE("pairwise products of the multiplicative prefix remain members") {
    const auto three = stn::mult_ip_prefix(3);
    for (std::size_t i = 0; i < three.size(); ++i) {
        CHECK(three[i].structural_member);
        for (std::size_t j = i + 1; j < three.size(); ++j) {
            const Factorization prod = three[i].value.times(three[j].value);
            CHECK(stn::x_structural_member(prod).has_value());
        }
    }
}

TEST_CASE("lift_progression preserves arithmetic structure") {
    const auto lifted = stn::lift_progression({1, 2, 3, 4});
    REQUIRE(lifted.size() == 4);
    CHECK(lifted[0].value.value() == 30);
    CHECK(lifted[1].value.value() == 60);
    CHECK(lifted[2].value.value() == 90);
    CHECK(lifted[3].value.value() == 120);
    for (const auto& el : lifted) CHECK(el.structural_member);

    const auto geometric = stn::lift_progression({1, 2, 4});
    REQUIRE(geometric.size() == 3);
    CHECK(geometric[0].value.value() == 30);
    CHECK(geometric[1].value.value() == 60);
    CHECK(geometric[2].value.value() == 120);

    const auto single = stn::lift_progression({7});
    REQUIRE(single.size() == 1);
    CHECK(single[0].value.value() == 45'287'852'610ULL);  // 7 * Z_29
    CHECK(single[0].param_p == 29);
    CHECK(single[0].structural_member);

    CHECK_THROWS_AS(stn::lift_progression({}), stn::UsageError);
    CHECK_THROWS_AS(stn::lift_progression({0, 1}), stn::UsageError);
}

TEST_CASE("no pair below 500 lands both sum and product in the X family") {
    for (std::uint64_t x = 1; x <= 500; ++x) {
        for (std::uint64_t y = x; y <= 500; ++y) {
            CHECK_FALSE(stn::sum_product_in_x(x, y));
        }
    }
}

TEST_CASE("additive_gap_report summarizes the first window exactly") {
    const stn::PrimeTable primes(10'000);
    const stn::TotientTable totients(10'000);
    const stn::SparseOracle oracle(primes, totients);
    const auto rep = stn::additive_gap_report(oracle, 1, 50);
    CHECK(rep.elements == std::vector<std::uint64_t>{2, 6, 12, 18, 30, 42});
    CHECK(rep.gaps == std::vector<std::uint64_t>{4, 6, 6, 12, 12});
    CHECK(rep.min_gap == 4);

    // Last element whose following gap the prime P does not divide.
    for (const auto& [P, last] : rep.last_gap_not_divisible) {
        if (P == 2) CHECK_FALSE(last.has_value());
        if (P == 3) CHECK(last == 2);
        if (P == 5) CHECK(last == 30);
        if (P == 7) CHECK(last == 30);
    }
}

TEST_CASE("members carry bounded prime valuations relative to coprime primes") {
    // For every member n below 1e6 and prime p < 50 not dividing n, each
    // prime q > p dividing n obeys v_q(n) <= exponent_cap_above(p, q).
    const stn::PrimeTable primes(2'500'000);
    const stn::TotientTable totients(2'500'000);
    const stn::SparseOracle oracle(primes, totients);
    const auto members = oracle.enumerate_n1(1'000'000);
    REQUIRE(members.size() > 100);

    std::vector<std::uint64_t> small_ps;
    stn::for_primes_in(2, 49, [&](std::uint64_t p) { small_ps.push_back(p); });

    for (const auto& rec : members) {
        const Factorization f = totients.factorize(rec.n);
        for (std::uint64_t p : small_ps) {
            if (f.divisible_by(p)) continue;
            for (const auto& [q, e] : f.pairs()) {
                if (q <= p) continue;
                CHECK(static_cast<int>(e) <= stn::exponent_cap_above(p, q));
            }
        }
    }
}
