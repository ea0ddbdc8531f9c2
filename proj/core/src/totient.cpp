#include "stn/totient.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "stn/errors.hpp"
#include "stn/primes.hpp"

namespace stn {

Factorization::Factorization() : value_(1) {}

Factorization Factorization::from_pairs(std::vector<PrimePower> pairs) {
    Factorization f;
    std::uint64_t prev = 0;
    for (const auto& [q, e] : pairs) {
        if (!is_prime_u64(q)) throw UsageError("Factorization: non-prime base");
        if (q <= prev) throw UsageError("Factorization: primes must be strictly ascending");
        if (e == 0) throw UsageError("Factorization: zero exponent");
        prev = q;
        f.value_ *= boost::multiprecision::pow(BigInt(q), e);
    }
    f.pairs_ = std::move(pairs);
    return f;
}

std::uint32_t Factorization::valuation(std::uint64_t q) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), q,
                               [](const PrimePower& pp, std::uint64_t v) { return pp.prime < v; });
    return (it != pairs_.end() && it->prime == q) ? it->exp : 0;
}

BigInt Factorization::radical() const {
    BigInt r = 1;
    for (const auto& pp : pairs_) r *= pp.prime;
    return r;
}

std::vector<std::uint64_t> Factorization::prime_set() const {
    std::vector<std::uint64_t> out;
    out.reserve(pairs_.size());
    for (const auto& pp : pairs_) out.push_back(pp.prime);
    return out;
}

Factorization Factorization::times(const Factorization& other) const {
    std::vector<PrimePower> merged;
    merged.reserve(pairs_.size() + other.pairs_.size());
    std::size_t i = 0, j = 0;
    while (i < pairs_.size() || j < other.pairs_.size()) {
        if (j == other.pairs_.size() ||
            (i < pairs_.size() && pairs_[i].prime < other.pairs_[j].prime)) {
            merged.push_back(pairs_[i++]);
        } else if (i == pairs_.size() || other.pairs_[j].prime < pairs_[i].prime) {
            merged.push_back(other.pairs_[j++]);
        } else {
            merged.push_back({pairs_[i].prime, pairs_[i].exp + other.pairs_[j].exp});
            ++i;
            ++j;
        }
    }
    Factorization f;
    f.pairs_ = std::move(merged);
    f.value_ = value_ * other.value_;
    return f;
}

Factorization Factorization::with_valuation(std::uint64_t q, std::uint32_t e) const {
    std::vector<PrimePower> pairs;
    pairs.reserve(pairs_.size() + 1);
    bool placed = false;
    for (const auto& pp : pairs_) {
        if (pp.prime == q) {
            if (e > 0) pairs.push_back({q, e});
            placed = true;
        } else {
            if (!placed && pp.prime > q && e > 0) {
                pairs.push_back({q, e});
                placed = true;
            }
            pairs.push_back(pp);
        }
    }
    if (!placed && e > 0) pairs.push_back({q, e});
    return from_pairs(std::move(pairs));
}

BigInt phi_of_factorization(const Factorization& f) {
    BigInt out = 1;
    for (const auto& [q, e] : f.pairs()) {
        out *= boost::multiprecision::pow(BigInt(q), e - 1);
        out *= q - 1;
    }
    return out;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Brent-cycle Pollard rho; n must be odd, composite and coprime to small primes.
std::uint64_t rho_factor(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, q = 1, g = 1, saved = 2;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            for (std::uint64_t k = 0; k < r && g == 1; k += 128) {
                saved = y;
                const std::uint64_t chunk = std::min<std::uint64_t>(128, r - k);
                for (std::uint64_t i = 0; i < chunk; ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            // The product collapsed; replay one step at a time from the checkpoint.
            g = 1;
            y = saved;
            while (g == 1) {
                y = (mulmod_u64(y, y, n) + c) % n;
                g = std::gcd(x > y ? x - y : y - x, n);
            }
        }
        if (g != n) return g;
    }
}

}  // namespace

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw UsageError("factorize: n must be >= 1");
    std::vector<PrimePower> pairs;
    auto strip = [&](std::uint64_t d) {
        if (n % d) return;
        std::uint32_t e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        pairs.push_back({d, e});
    };
    for (std::uint64_t d : {2ull, 3ull, 5ull}) strip(d);
    // 6k+-1 wheel for small factors; rho splits any remaining composite so
    // that two-large-prime cofactors never require a long trial run.
    static constexpr std::uint64_t steps[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    std::uint64_t d = 7;
    int si = 0;
    while (n > 1 && d <= 100000) {
        if (d * d > n) break;
        if (n % d == 0) {
            strip(d);
            continue;
        }
        d += steps[si];
        si = (si + 1) & 7;
    }
    std::vector<std::uint64_t> work;
    if (n > 1) work.push_back(n);
    std::map<std::uint64_t, std::uint32_t> large;
    while (!work.empty()) {
        const std::uint64_t m = work.back();
        work.pop_back();
        if (m == 1) continue;
        if (d * d > m || is_prime_u64(m)) {
            ++large[m];
            continue;
        }
        const std::uint64_t f = rho_factor(m);
        work.push_back(f);
        work.push_back(m / f);
    }
    for (const auto& [q, e] : large) pairs.push_back({q, e});
    std::sort(pairs.begin(), pairs.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return Factorization::from_pairs(std::move(pairs));
}

Factorization factorize(const BigInt& n) {
    if (n < 1) throw UsageError("factorize: n must be >= 1");
    if (!fits_u64(n))
        throw UnsupportedInputError(
            "factorize: value wider than 64 bits; construct it with an explicit factorization");
    return factorize(to_u64(n));
}

std::uint64_t search_bound(std::uint64_t m) {
    if (m == 0) throw UsageError("search_bound: m must be >= 1");
    BigInt phi_prod = 1, prime_prod = 1;
    std::uint64_t p = 2;
    while (true) {
        const BigInt next_phi = phi_prod * (p - 1);
        if (next_phi > m) break;
        phi_prod = next_phi;
        prime_prod *= p;
        p = next_prime_after(p);
    }
    const BigInt bound = (BigInt(m) * prime_prod) / phi_prod;
    if (!fits_u64(bound)) throw ResourceError("search_bound: bound exceeds 64 bits");
    return to_u64(bound);
}

TotientTable::TotientTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw UsageError("TotientTable: limit must be >= 2");
    if (limit >= std::numeric_limits<std::uint32_t>::max())
        throw ResourceError("TotientTable: limit beyond 32-bit table range");

    phi_.assign(limit + 1, 0);
    spf_.assign(limit + 1, 0);
    phi_[1] = 1;
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            phi_[i] = static_cast<std::uint32_t>(i - 1);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > spf_[i] || p * static_cast<std::uint64_t>(i) > limit) break;
            const std::uint64_t ip = p * i;
            spf_[ip] = p;
            phi_[ip] = (p == spf_[i]) ? phi_[i] * p : phi_[i] * (p - 1);
        }
    }

    suffix_min_.assign(limit + 2, std::numeric_limits<std::uint32_t>::max());
    for (std::uint64_t i = limit; i >= 1; --i) {
        suffix_min_[i] = std::min(phi_[i], suffix_min_[i + 1]);
    }
}

std::uint64_t TotientTable::phi(std::uint64_t n) const {
    if (n < 1 || n > limit_) throw UsageError("TotientTable::phi: index out of range");
    return phi_[n];
}

std::uint64_t TotientTable::suffix_min_at(std::uint64_t i) const {
    if (i < 1 || i > limit_) throw UsageError("TotientTable::suffix_min_at: index out of range");
    return suffix_min_[i];
}

std::uint64_t TotientTable::min_phi_above(std::uint64_t n) const {
    if (n >= limit_) return UINT64_MAX;
    const std::uint32_t v = suffix_min_[n + 1];
    return v == std::numeric_limits<std::uint32_t>::max() ? UINT64_MAX : v;
}

Factorization TotientTable::factorize(std::uint64_t n) const {
    if (n == 0) throw UsageError("factorize: n must be >= 1");
    if (n > limit_) return stn::factorize(n);
    std::vector<PrimePower> pairs;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        pairs.push_back({p, e});
    }
    return Factorization::from_pairs(std::move(pairs));
}

void TotientTable::corrupt_phi_for_testing(std::uint64_t n, std::uint64_t bogus) {
    if (n < 1 || n > limit_) throw UsageError("corrupt_phi_for_testing: index out of range");
    phi_[n] = static_cast<std::uint32_t>(bogus);
    for (std::uint64_t i = std::min(n, limit_); i >= 1; --i) {
        suffix_min_[i] = std::min(phi_[i], suffix_min_[i + 1]);
    }
}

}  // namespace stn
