#include "stn/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stn/errors.hpp"
#include "stn/primes.hpp"
#include "stn/sparse.hpp"

namespace stn {

namespace {

using boost::multiprecision::msb;
using boost::multiprecision::pow;

// Multiplies r by q^e with e possibly negative.
void mul_power(Rational& r, std::uint64_t q, std::int64_t e) {
    if (e == 0) return;
    const BigInt f = pow(BigInt(q), static_cast<unsigned>(e < 0 ? -e : e));
    if (e > 0) {
        r *= Rational(f);
    } else {
        r /= Rational(f);
    }
}

void require_prime(std::uint64_t q, const char* role) {
    if (!is_prime_u64(q)) {
        throw UsageError(std::string(role) + " must be prime");
    }
}

struct DropBlock {
    std::uint64_t t;                   // last prime of the block
    std::vector<std::uint64_t> primes; // all primes in [p, t]
    BigInt block;                      // their product
};

// Numbers this large make every downstream exponent astronomically wide; the
// search refuses rather than grind for hours.
constexpr std::uint64_t kDropSearchCap = 4'000'000'000ULL;
constexpr std::uint64_t kDropChunkMin = 1ULL << 16;
constexpr std::uint64_t kDropChunkMax = 1ULL << 22;

// Smallest t >= p (prime) with n * phi(B) <= B for B = prod primes [p, t].
// Float pre-scan first: sum log(u/(u-1)) until it reaches log(n) minus a
// margin far above the accumulated rounding error, so the stop point can
// only fall short of the true threshold, never past it. The tail is then
// settled with exact integer steps.
DropBlock drop_block(std::uint64_t p, std::uint64_t n) {
    require_prime(p, "block start");
    if (n < 2) throw UsageError("drop factor must be at least 2");

    const long double target = std::log(static_cast<long double>(n));
    constexpr long double kMargin = 1e-7L;

    DropBlock out;
    long double acc = 0.0L;
    bool stopped = false;
    std::uint64_t lo = p;
    // Geometrically growing chunks keep short blocks cheap without hurting
    // the long searches that genuinely need wide sieve windows.
    std::uint64_t chunk = kDropChunkMin;
    while (!stopped) {
        if (lo > kDropSearchCap) {
            throw ResourceError("totient drop block exceeds the search cap");
        }
        const std::uint64_t hi = std::min(kDropSearchCap, lo + chunk - 1);
        chunk = std::min(kDropChunkMax, chunk * 2);
        for_primes_in(lo, hi, [&](std::uint64_t u) {
            if (stopped) return;
            acc += std::log(static_cast<long double>(u) / static_cast<long double>(u - 1));
            out.primes.push_back(u);
            if (acc >= target - kMargin) stopped = true;
        });
        lo = hi + 1;
    }

    std::vector<std::uint64_t> shifted(out.primes.size());
    std::transform(out.primes.begin(), out.primes.end(), shifted.begin(),
                   [](std::uint64_t u) { return u - 1; });
    out.block = balanced_product(out.primes);
    BigInt n_phi = BigInt(n) * balanced_product(shifted);

    out.t = out.primes.back();
    while (n_phi > out.block) {
        out.t = next_prime_after(out.t);
        if (out.t > kDropSearchCap) {
            throw ResourceError("totient drop block exceeds the search cap");
        }
        out.primes.push_back(out.t);
        out.block *= out.t;
        n_phi *= out.t - 1;
    }
    return out;
}

}  // namespace

Rational phi_density_ratio(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    for (auto* side : {&a, &b}) {
        std::sort(side->begin(), side->end());
        side->erase(std::unique(side->begin(), side->end()), side->end());
        for (std::uint64_t q : *side) require_prime(q, "density set element");
    }
    Rational r = 1;
    for (std::uint64_t q : a) r *= Rational(q - 1, q);
    for (std::uint64_t q : b) r *= Rational(q, q - 1);
    return r;
}

Factorization common_part(std::uint64_t n, std::uint64_t y) {
    if (n == 0 || y == 0) throw UsageError("common part needs positive inputs");
    const Factorization fn = factorize(n);
    const Factorization fy = factorize(y);
    std::vector<PrimePower> pairs;
    for (const PrimePower& pp : fn.pairs()) {
        const std::uint32_t v = fy.valuation(pp.prime);
        if (v > 0) pairs.push_back({pp.prime, v});
    }
    return Factorization::from_pairs(std::move(pairs));
}

Rational excess_ratio(std::uint64_t n, std::uint64_t y) {
    if (n == 0 || y == 0) throw UsageError("excess ratio needs positive inputs");
    const Factorization fn = factorize(n);
    const Factorization fy = factorize(y);
    Rational r = 1;
    for (const PrimePower& pp : fn.pairs()) {
        const std::uint32_t vy = fy.valuation(pp.prime);
        const std::int64_t e = vy > 0 ? static_cast<std::int64_t>(pp.exp) - vy
                                      : static_cast<std::int64_t>(pp.exp) - 1;
        mul_power(r, pp.prime, e);
    }
    return r;
}

WitnessResult witness_from_large_prime(const Factorization& N, std::uint64_t p,
                                       std::uint64_t q, std::uint32_t r) {
    require_prime(p, "p");
    require_prime(q, "q");
    if (p >= q) throw UsageError("needs p < q");
    if (r < 1) throw UsageError("needs r >= 1");
    if (N.divisible_by(p)) throw UsageError("p must not divide N");
    const std::uint32_t v = N.valuation(q);
    if (v < r) throw UsageError("needs q^r dividing N");

    using u128 = unsigned __int128;
    const u128 pp = p, qq = q;
    if (r == 1 && qq < (pp - 1) * (pp - 1) + pp) {
        throw UsageError("r = 1 needs q >= (p-1)^2 + p");
    }
    if (r == 2 && (2 * qq - pp) * (2 * qq - pp) < pp * pp + 4 * (pp - 1) * (pp - 1)) {
        throw UsageError("r = 2 needs (2q-p)^2 >= p^2 + 4(p-1)^2");
    }

    const BigInt qr = pow(BigInt(q), r);
    const std::uint64_t rem = to_u64(qr % p);
    const std::uint64_t k = p - rem;  // rem != 0 since p != q
    const BigInt n_big = qr + k;
    if (!fits_u64(n_big)) {
        throw ResourceError("q^r + k exceeds 64 bits; cannot factor the shifted power");
    }

    WitnessResult out;
    out.y = N.with_valuation(q, v - r).times(factorize(to_u64(n_big)));
    out.phi_y = phi_of_factorization(out.y);
    out.case_used = r > 2   ? WitnessCase::ExponentAbove2
                    : r == 2 ? WitnessCase::ExponentEquals2
                             : WitnessCase::ExponentEquals1;
    if (!(out.y.value() > N.value() && out.phi_y <= phi_of_factorization(N))) {
        throw std::logic_error("internal: large-prime witness postcondition failed");
    }
    return out;
}

std::uint64_t totient_drop_prime(std::uint64_t p, std::uint64_t n) {
    return drop_block(p, n).t;
}

namespace {

// Largest alpha with q^alpha < block; q never divides the block, so the
// inequalities are strict on both sides.
std::uint64_t cap_from_block(const BigInt& block, std::uint64_t q) {
    const double bits = static_cast<double>(msb(block));
    std::uint64_t alpha =
        static_cast<std::uint64_t>(bits / std::log2(static_cast<double>(q)));
    BigInt qa = pow(BigInt(q), static_cast<unsigned>(alpha));
    while (qa >= block) {
        qa /= q;
        --alpha;
    }
    while (qa * q < block) {
        qa *= q;
        ++alpha;
    }
    return alpha;
}

}  // namespace

std::uint64_t exponent_cap_below(std::uint64_t p, std::uint64_t q) {
    require_prime(p, "p");
    require_prime(q, "q");
    if (q >= p) throw UsageError("needs q < p");
    return cap_from_block(drop_block(p, q).block, q);
}

WitnessResult witness_from_small_prime(const Factorization& N, std::uint64_t p,
                                       std::uint64_t q) {
    require_prime(p, "p");
    require_prime(q, "q");
    if (q >= p) throw UsageError("needs q < p");
    for (const PrimePower& pp : N.pairs()) {
        if (pp.prime >= p) throw UsageError("every prime factor of N must lie below p");
    }
    const std::uint32_t v = N.valuation(q);
    const DropBlock db = drop_block(p, q);
    const std::uint64_t alpha = cap_from_block(db.block, q);
    if (v <= alpha) {
        throw UsageError("needs v_q(N) above the exponent cap for q below p");
    }
    std::vector<PrimePower> block_pairs;
    block_pairs.reserve(db.primes.size());
    for (std::uint64_t u : db.primes) block_pairs.push_back({u, 1});

    WitnessResult out;
    out.y = N.with_valuation(q, v - static_cast<std::uint32_t>(alpha))
                .times(Factorization::from_pairs(std::move(block_pairs)));
    out.phi_y = phi_of_factorization(out.y);
    out.case_used = WitnessCase::BlockSwap;
    if (!(out.y.value() > N.value() && out.phi_y < phi_of_factorization(N))) {
        throw std::logic_error("internal: small-prime witness postcondition failed");
    }
    return out;
}

int exponent_cap_above(std::uint64_t p, std::uint64_t q) {
    require_prime(p, "p");
    require_prime(q, "q");
    if (q <= p) throw UsageError("needs q > p");
    using u128 = unsigned __int128;
    const u128 pp = p, qq = q;
    if (qq > pp * (pp - 1)) return 0;
    if ((2 * qq - pp) * (2 * qq - pp) >= pp * pp + 4 * (pp - 1) * (pp - 1)) return 1;
    return 2;
}

namespace {

// Shared assembly for the coprime bound. cap == nullptr means uncapped.
std::optional<BigInt> coprime_bound_impl(std::uint64_t p, const BigInt* cap) {
    require_prime(p, "p");
    const BigInt threshold = BigInt(p - 1) * (p - 1) + p;  // first excluded size
    if (!fits_u64(threshold)) {
        throw ResourceError("coprime bound threshold exceeds 64 bits");
    }
    const std::uint64_t t = to_u64(threshold);
    const std::uint64_t s0 = is_prime_u64(t) ? t : next_prime_after(t);

    BigInt prod = 1;
    const auto overflowed = [&] { return cap != nullptr && prod > *cap; };

    // Primes above p: cap 0 for everything past p(p-1), so only that stretch
    // contributes. Geometric growth makes the capped walk exit fast.
    const std::uint64_t cap_above_end = p > 1 ? p * (p - 1) : p;
    std::vector<std::uint64_t> mid;
    for_primes_in(p + 1, std::min(cap_above_end, s0 - 1),
                  [&](std::uint64_t q) { mid.push_back(q); });
    for (std::uint64_t q : mid) {
        const int e = exponent_cap_above(p, q);
        if (e == 0) continue;
        prod *= pow(BigInt(q), static_cast<unsigned>(e));
        if (overflowed()) return std::nullopt;
    }

    // Primes below p. When p - 1 is an exact power q^j, any member N coprime
    // to p with v_q(N) > j loses to y = N * p / q^j: y > N and phi(y) = phi(N)
    // (the q-side loses a factor q^j, the new prime p contributes p - 1), a
    // tie that disqualifies N. That caps v_q at j, far below the block cap.
    std::vector<std::uint64_t> below;
    for_primes_in(2, p - 1, [&](std::uint64_t q) { below.push_back(q); });
    std::vector<std::uint64_t> need_block;
    for (std::uint64_t q : below) {
        std::uint64_t m = p - 1, j = 0;
        while (m % q == 0) {
            m /= q;
            ++j;
        }
        if (m == 1 && j >= 1) {
            prod *= pow(BigInt(q), static_cast<unsigned>(j));
            if (overflowed()) return std::nullopt;
        } else {
            need_block.push_back(q);
        }
    }

    // Expensive block caps last; the cheap factors above usually decide a
    // capped query before any block search runs.
    for (std::uint64_t q : need_block) {
        if (overflowed()) return std::nullopt;
        const std::uint64_t alpha = exponent_cap_below(s0, q);
        if (alpha > std::numeric_limits<unsigned>::max()) {
            throw ResourceError("coprime bound exponent exceeds addressable range");
        }
        prod *= pow(BigInt(q), static_cast<unsigned>(alpha));
        if (overflowed()) return std::nullopt;
    }
    return prod;
}

}  // namespace

BigInt coprime_bound(std::uint64_t p) {
    return *coprime_bound_impl(p, nullptr);
}

std::optional<BigInt> coprime_bound_within(std::uint64_t p, const BigInt& cap) {
    try {
        return coprime_bound_impl(p, &cap);
    } catch (const ResourceError&) {
        return std::nullopt;
    }
}

std::uint64_t smallest_nondividing_prime(const BigInt& n) {
    if (n < 1) throw UsageError("needs a positive integer");
    std::uint64_t q = 2;
    while (n % q == 0) q = next_prime_after(q);
    return q;
}

IpWitness ip_witness(const std::vector<std::uint64_t>& n_list) {
    if (n_list.empty()) throw UsageError("needs at least one element");
    BigInt sum = 0;
    for (std::uint64_t n : n_list) {
        if (n == 0) throw UsageError("elements must be positive");
        const Factorization f = factorize(n);
        sum += BigInt(n) / f.radical();
    }
    const BigInt sum_sq = sum * sum;
    if (!fits_u64(sum_sq)) {
        throw ResourceError("squarefree-part sum square exceeds 64 bits");
    }
    IpWitness out;
    out.p = next_prime_after(to_u64(sum_sq));
    out.sequence.reserve(n_list.size());
    for (std::uint64_t n : n_list) out.sequence.push_back(x_np(n, out.p));
    return out;
}

std::vector<FamilyElement> mult_ip_prefix(int count) {
    if (count < 1) throw UsageError("needs count >= 1");
    std::vector<FamilyElement> out;
    out.push_back(x_np(2, 2));
    for (int n = 2; n <= count; ++n) {
        const BigInt pw = pow(out.back().value.value(), static_cast<unsigned>(n));
        if (!fits_u64(pw)) {
            throw ResourceError("next anchor prime exceeds the 64-bit search range");
        }
        out.push_back(x_np(2, next_prime_after(to_u64(pw))));
    }
    return out;
}

std::vector<FamilyElement> lift_progression(const std::vector<std::uint64_t>& m_list) {
    if (m_list.empty()) throw UsageError("needs at least one element");
    std::vector<std::uint64_t> b;
    b.reserve(m_list.size());
    for (std::uint64_t m : m_list) {
        if (m == 0) throw UsageError("elements must be positive");
        const BigInt bi = BigInt(m) * factorize(m).radical();
        if (!fits_u64(bi)) throw ResourceError("m * rad(m) exceeds 64 bits");
        b.push_back(to_u64(bi));
    }
    const std::uint64_t max_b = *std::max_element(b.begin(), b.end());
    const std::uint64_t p = next_prime_after(max_b / 2);  // smallest prime with 2p > max b
    std::vector<FamilyElement> out;
    out.reserve(b.size());
    for (std::uint64_t bi : b) out.push_back(x_np(bi, p));
    return out;
}

bool sum_product_in_x(std::uint64_t x, std::uint64_t y) {
    if (x == 0 || y == 0) throw UsageError("needs positive inputs");
    if (x > UINT64_MAX - y || x > UINT64_MAX / y) {
        throw ResourceError("sum or product exceeds 64 bits");
    }
    return in_x(x + y) && in_x(x * y);
}

GapReport additive_gap_report(const SparseOracle& oracle, std::uint64_t lo,
                              std::uint64_t hi) {
    if (lo > hi) throw UsageError("needs lo <= hi");
    GapReport out;
    for (const SparseTotientRecord& rec : oracle.enumerate_n1(hi)) {
        if (rec.n >= lo) out.elements.push_back(rec.n);
    }
    if (out.elements.size() >= 2) {
        out.gaps.resize(out.elements.size() - 1);
        for (std::size_t i = 0; i + 1 < out.elements.size(); ++i) {
            out.gaps[i] = out.elements[i + 1] - out.elements[i];
        }
        out.min_gap = *std::min_element(out.gaps.begin(), out.gaps.end());
    }
    for (std::uint64_t small : {2, 3, 5, 7, 11, 13}) {
        std::optional<std::uint64_t> last;
        for (std::size_t i = 0; i < out.gaps.size(); ++i) {
            if (out.gaps[i] % small != 0) last = out.elements[i];
        }
        out.last_gap_not_divisible.emplace_back(small, last);
    }
    return out;
}

}  // namespace stn
