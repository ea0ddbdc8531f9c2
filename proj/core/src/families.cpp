#include "stn/families.hpp"

#include <algorithm>
#include <thread>

#include "stn/errors.hpp"
#include "stn/primes.hpp"

namespace stn {
namespace {

// Ascending primes in [11, max_p].
std::vector<std::uint64_t> scan_primes(std::uint64_t max_p) {
    if (max_p < 11) throw UsageError("scan: max_p must be >= 11");
    std::vector<std::uint64_t> ps;
    for_primes_in(11, max_p, [&](std::uint64_t q) { ps.push_back(q); });
    return ps;
}

// Applies fn to each prime, splitting the list into contiguous chunks so the
// output order never depends on the thread count.
template <typename Row, typename Fn>
std::vector<Row> ordered_parallel_map(const std::vector<std::uint64_t>& ps, unsigned parallelism,
                                      Fn fn) {
    if (parallelism == 0) throw UsageError("scan: parallelism must be >= 1");
    std::vector<Row> out(ps.size());
    if (parallelism == 1 || ps.size() < 64) {
        for (std::size_t i = 0; i < ps.size(); ++i) out[i] = fn(ps[i]);
        return out;
    }
    const unsigned workers = std::min<unsigned>(parallelism, std::thread::hardware_concurrency());
    std::vector<std::thread> threads;
    const std::size_t chunk = (ps.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(ps.size(), lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(ps[i]);
        });
    }
    for (auto& t : threads) t.join();
    return out;
}

}  // namespace

FamilyElement x_np(std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw UsageError("x_np: n must be >= 1");
    if (!is_prime_u64(p)) throw UsageError("x_np: p must be prime");
    const Factorization fn = factorize(n);
    std::vector<PrimePower> pairs;
    for_primes_in(2, p, [&](std::uint64_t q) {
        pairs.push_back({q, fn.valuation(q) > 0 ? fn.valuation(q) : 1});
    });
    for (const auto& [q, e] : fn.pairs()) {
        if (q <= p) continue;           // already placed
        if (e > 1) pairs.push_back({q, e - 1});
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    FamilyElement el;
    el.kind = FamilyKind::X;
    el.param_n = n;
    el.param_p = p;
    el.value = Factorization::from_pairs(std::move(pairs));
    el.structural_member = 2 * p > n;
    return el;
}

std::optional<std::pair<BigInt, std::uint64_t>> x_structural_member(const Factorization& v) {
    if (!v.divisible_by(2)) return std::nullopt;
    std::uint64_t prefix = 2;
    for (std::uint64_t q = 3; v.divisible_by(q); q = next_prime_after(q)) prefix = q;
    BigInt b = 1, rad_b = 1;
    for (const auto& [q, e] : v.pairs()) {
        const std::uint32_t drop = q <= prefix ? 1 : 0;
        if (e - drop == 0) continue;
        b *= boost::multiprecision::pow(BigInt(q), e - drop);
        rad_b *= q;
    }
    if (b * rad_b < 2 * BigInt(prefix)) return std::make_pair(b, prefix);
    return std::nullopt;
}

bool in_x(std::uint64_t v) {
    if (v == 0) throw UsageError("in_x: v must be >= 1");
    return x_structural_member(factorize(v)).has_value();
}

FamilyElement y_pk(std::uint64_t p, std::uint64_t k) {
    if (!is_prime_u64(p)) throw UsageError("y_pk: p must be prime");
    if (k < 1 || k > 3) throw UsageError("y_pk: k must be 1, 2 or 3");
    const std::uint64_t pk = next_primes_after(p, k).back();
    std::vector<PrimePower> pairs;
    for_primes_in(2, pk, [&](std::uint64_t q) {
        if (q != p) pairs.push_back({q, 1});
    });
    FamilyElement el;
    el.kind = FamilyKind::Y;
    el.param_p = p;
    el.param_k = k;
    el.value = Factorization::from_pairs(std::move(pairs));
    switch (k) {
        case 1: el.structural_member = p >= 5; break;
        case 2: el.structural_member = p >= 11 && in_e2(p).in_e2; break;
        default: el.structural_member = p >= 11 && in_e3(p).member; break;
    }
    return el;
}

FamilyElement primorial_element(std::uint64_t p) {
    if (!is_prime_u64(p)) throw UsageError("primorial_element: p must be prime");
    std::vector<PrimePower> pairs;
    for_primes_in(2, p, [&](std::uint64_t q) { pairs.push_back({q, 1}); });
    FamilyElement el;
    el.kind = FamilyKind::Primorial;
    el.param_p = p;
    el.value = Factorization::from_pairs(std::move(pairs));
    el.structural_member = true;  // X_{1,p} with p > 1/2
    return el;
}

E2Record in_e2(std::uint64_t p) {
    if (!is_prime_u64(p)) throw UsageError("in_e2: p must be prime");
    const auto nx = next_primes_after(p, 2);
    E2Record rec;
    rec.p = p;
    rec.p1 = nx[0];
    rec.p2 = nx[1];
    rec.a_p = Rational(BigInt(rec.p1) * rec.p2, BigInt(p));
    rec.d_p = Rational(BigInt(rec.p1 - p) * (rec.p2 - p), BigInt(p) * (p - 1));
    rec.frac = rec.a_p - floor_nonneg(rec.a_p);
    rec.blocking_prime = prime_in_left_open_interval(rec.a_p, rec.a_p + rec.d_p);
    rec.in_e2 = !rec.blocking_prime.has_value();
    return rec;
}

E3Result in_e3(std::uint64_t p) {
    if (!is_prime_u64(p) || p < 11) throw UsageError("in_e3: p must be a prime >= 11");
    const auto nx = next_primes_after(p, 3);
    const BigInt p1 = nx[0], p2 = nx[1], p3 = nx[2];
    const BigInt triple = p1 * p2 * p3;
    const BigInt reduced = (p1 - 1) * (p2 - 1) * (p3 - 1);

    // Quantifier cutoff: ceil(sqrt(reduced/(p-1))) + 1; see header.
    BigInt s = boost::multiprecision::sqrt(BigInt(reduced / (p - 1)));
    while (s * s * (p - 1) < reduced) ++s;
    const BigInt q_max = s + 1;

    for (BigInt q = next_prime_after(p); q <= q_max; q = next_prime_after(to_u64(q))) {
        const Rational lo(triple, BigInt(p) * q);
        const Rational hi = 1 + Rational(reduced, BigInt(p - 1) * (q - 1));
        if (!(lo < hi)) continue;
        // Walk the integers of (lo, hi]; any prime above q blocks membership.
        const BigInt z_end = floor_nonneg(hi);
        for (BigInt z = floor_nonneg(lo) + 1; z <= z_end; ++z) {
            if (z > q && is_prime_u64(to_u64(z))) {
                return {false, std::make_pair(to_u64(q), to_u64(z))};
            }
        }
    }
    return {true, std::nullopt};
}

GapCriteria consecutive_prime_criteria(std::uint64_t p) {
    if (!is_prime_u64(p) || p < 11)
        throw UsageError("consecutive_prime_criteria: p must be a prime >= 11");
    const auto nx = next_primes_after(p, 2);
    GapCriteria c;
    c.p1 = nx[0];
    c.p2 = nx[1];
    const std::uint64_t a = c.p1 - p, b = c.p2 - p;
    if (a == 2 || a == 4 || a == 6 || a == 8) c.small_gap = a;
    c.twin_then_six = (a == 2 && b == 6);
    if (static_cast<unsigned __int128>(p) >= static_cast<unsigned __int128>(2) * a * b) {
        c.bounded_pair = std::make_pair(a, b);
    }
    return c;
}

std::vector<E2Record> scan_fractional(std::uint64_t max_p, unsigned parallelism) {
    const auto ps = scan_primes(max_p);
    return ordered_parallel_map<E2Record>(ps, parallelism,
                                          [](std::uint64_t p) { return in_e2(p); });
}

std::vector<E2Record> scan_e2(std::uint64_t max_p, unsigned parallelism) {
    return scan_fractional(max_p, parallelism);
}

std::vector<E3ScanRow> scan_e3(std::uint64_t max_p, unsigned parallelism) {
    const auto ps = scan_primes(max_p);
    return ordered_parallel_map<E3ScanRow>(
        ps, parallelism, [](std::uint64_t p) { return E3ScanRow{p, in_e3(p)}; });
}

std::vector<GapCriteriaRow> scan_gap_criteria(std::uint64_t max_p, unsigned parallelism) {
    const auto ps = scan_primes(max_p);
    return ordered_parallel_map<GapCriteriaRow>(ps, parallelism, [](std::uint64_t p) {
        return GapCriteriaRow{p, consecutive_prime_criteria(p)};
    });
}

}  // namespace stn
