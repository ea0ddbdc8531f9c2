#include "stn/primes.hpp"

#include <algorithm>
#include <cmath>

#include "stn/errors.hpp"

namespace stn {
namespace {

constexpr std::uint64_t kMaxSieveLimit = 1ull << 34;   // ~2 GiB of bits
constexpr std::uint64_t kSegmentBits = 1ull << 25;     // spec'd segmentation cutoff

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Simple sieve of [0, n], n expected modest (base primes for segmentation).
std::vector<std::uint64_t> small_primes_upto(std::uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve witnesses decide primality for every n < 3.3e24, which
    // covers the whole 64-bit range.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t next_prime_after(std::uint64_t n) {
    if (n < 2) return 2;
    std::uint64_t c = n + 1;
    if (c % 2 == 0) {
        if (c == 2) return 2;
        ++c;
    }
    for (;; c += 2) {
        if (c < n) throw ResourceError("next_prime_after: search left 64-bit range");
        if (is_prime_u64(c)) return c;
    }
}

std::vector<std::uint64_t> next_primes_after(std::uint64_t p, std::size_t k) {
    if (!is_prime_u64(p)) throw UsageError("next_primes_after: p must be prime");
    if (k == 0) throw UsageError("next_primes_after: k must be >= 1");
    std::vector<std::uint64_t> out;
    out.reserve(k);
    std::uint64_t cur = p;
    while (out.size() < k) {
        cur = next_prime_after(cur);
        out.push_back(cur);
    }
    return out;
}

void for_primes_in(std::uint64_t lo, std::uint64_t hi,
                   const std::function<void(std::uint64_t)>& fn) {
    if (hi > kMaxSieveLimit) throw ResourceError("for_primes_in: range beyond desk scale");
    if (lo > hi) return;
    lo = std::max<std::uint64_t>(lo, 2);
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    const auto base = small_primes_upto(root);
    std::vector<bool> comp;
    for (std::uint64_t seg = lo; seg <= hi; ) {
        const std::uint64_t seg_end = std::min(hi, seg + kSegmentBits - 1);
        comp.assign(seg_end - seg + 1, false);
        for (std::uint64_t p : base) {
            if (p * p > seg_end) break;
            std::uint64_t start = std::max(p * p, ((seg + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= seg_end; j += p) comp[j - seg] = true;
        }
        for (std::uint64_t n = seg; n <= seg_end; ++n) {
            if (!comp[n - seg]) fn(n);
        }
        if (seg_end == hi) break;
        seg = seg_end + 1;
    }
}

BigInt primorial(std::uint64_t p) {
    if (!is_prime_u64(p)) throw UsageError("primorial: argument must be prime");
    std::vector<std::uint64_t> factors;
    for_primes_in(2, p, [&](std::uint64_t q) { factors.push_back(q); });
    return balanced_product(factors);
}

std::optional<std::uint64_t> prime_in_left_open_interval(const Rational& lo,
                                                         const Rational& hi) {
    if (!(lo < hi)) throw UsageError("prime_in_left_open_interval: requires lo < hi");
    if (hi < 2) return std::nullopt;
    BigInt first = floor_nonneg(lo < 0 ? Rational(0) : lo) + 1;
    if (first < 2) first = 2;
    const BigInt last = floor_nonneg(hi);  // right-closed: q <= hi iff q <= floor(hi)
    if (last < first) return std::nullopt;
    if (!fits_u64(last)) throw ResourceError("prime_in_left_open_interval: bound beyond 64 bits");
    if (last - first > 10'000'000) throw ResourceError("prime_in_left_open_interval: interval too long");
    for (std::uint64_t n = to_u64(first); n <= to_u64(last); ++n) {
        if (is_prime_u64(n)) return n;
    }
    return std::nullopt;
}

bool nagura_holds(std::uint64_t n) {
    if (n == 0) throw UsageError("nagura_holds: n must be >= 1");
    const std::uint64_t q = next_prime_after(n);
    return static_cast<unsigned __int128>(5) * q < static_cast<unsigned __int128>(6) * n;
}

bool p3_growth_check(std::uint64_t p) {
    if (!is_prime_u64(p)) throw UsageError("p3_growth_check: argument must be prime");
    const std::uint64_t p3 = next_primes_after(p, 3)[2];
    return static_cast<unsigned __int128>(5) * p3 < static_cast<unsigned __int128>(9) * p;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw UsageError("PrimeTable: limit must be >= 2");
    if (limit > kMaxSieveLimit) throw ResourceError("PrimeTable: limit beyond desk scale");
    bits_.assign(limit / 64 + 1, 0);
    ordered_.reserve(static_cast<std::size_t>(
        limit < 100 ? 32 : 1.15 * static_cast<double>(limit) / std::log(static_cast<double>(limit))));
    for_primes_in(2, limit, [&](std::uint64_t q) {
        bits_[q >> 6] |= 1ull << (q & 63);
        ordered_.push_back(q);
    });
}

bool PrimeTable::is_prime(std::uint64_t n) const {
    if (n <= limit_) return (bits_[n >> 6] >> (n & 63)) & 1;
    return is_prime_u64(n);
}

std::uint64_t PrimeTable::next_prime(std::uint64_t n) const {
    if (n < ordered_.back()) {
        auto it = std::upper_bound(ordered_.begin(), ordered_.end(), n);
        return *it;
    }
    return next_prime_after(n);
}

std::vector<std::uint64_t> PrimeTable::next_primes_after(std::uint64_t p, std::size_t k) const {
    if (!is_prime(p)) throw UsageError("next_primes_after: p must be prime");
    if (k == 0) throw UsageError("next_primes_after: k must be >= 1");
    std::vector<std::uint64_t> out;
    out.reserve(k);
    auto it = std::upper_bound(ordered_.begin(), ordered_.end(), p);
    while (out.size() < k && it != ordered_.end()) out.push_back(*it++);
    std::uint64_t cur = out.empty() ? p : out.back();
    while (out.size() < k) {
        cur = stn::next_prime_after(cur);
        out.push_back(cur);
    }
    return out;
}

}  // namespace stn
