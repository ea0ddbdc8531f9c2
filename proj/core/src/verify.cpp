#include "stn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

#include "stn/errors.hpp"
#include "stn/families.hpp"
#include "stn/sparse.hpp"
#include "stn/structure.hpp"

namespace stn {
namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome ok(std::string detail) { return {true, std::move(detail)}; }
Outcome bad(std::string detail) { return {false, std::move(detail)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// The thirteen smallest members and their totients, frozen as the anchor for
// the enumeration criteria.
const std::vector<std::uint64_t> kFirstMembers = {2,  6,   12,  18,  30,  42, 60,
                                                  66, 90,  120, 126, 150, 210};

Outcome first_members_table(const SparseOracle& oracle) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto recs = oracle.enumerate_n1(1'000'000);
    const double elapsed = seconds_since(t0);
    if (recs.size() < kFirstMembers.size()) {
        return bad("only " + std::to_string(recs.size()) + " members found");
    }
    for (std::size_t i = 0; i < kFirstMembers.size(); ++i) {
        if (recs[i].n != kFirstMembers[i]) {
            return bad("member " + std::to_string(i + 1) + " is " +
                       std::to_string(recs[i].n) + ", expected " +
                       std::to_string(kFirstMembers[i]));
        }
    }
    constexpr double kBudget = 10.0;
    if (elapsed >= kBudget) {
        return bad("enumeration took " + std::to_string(elapsed) + " s, budget 10 s");
    }
    std::ostringstream os;
    os << recs.size() << " members below 1e6; first 13 match; " << elapsed << " s";
    return ok(os.str());
}

Outcome quadratic_growth(const SparseOracle& oracle) {
    const auto recs = oracle.enumerate_n1(1'000'000);
    for (std::size_t k = 1; k <= kFirstMembers.size(); ++k) {
        if (!(recs[k - 1].n > k * k)) {
            return bad("member " + std::to_string(k) + " = " +
                       std::to_string(recs[k - 1].n) + " fails > k^2");
        }
    }
    return ok("all 13 members exceed the square of their index");
}

Outcome divisibility_by_three(const SparseOracle& oracle) {
    const auto recs = oracle.enumerate_n1(1'000'000);
    std::uint64_t checked = 0;
    for (const auto& rec : recs) {
        if (rec.n <= 2) continue;
        ++checked;
        if (rec.n % 3 != 0) return bad(std::to_string(rec.n) + " is not divisible by 3");
    }
    return ok(std::to_string(checked) + " members in (2, 1e6] all divisible by 3");
}

Outcome divisibility_thresholds(const SparseOracle& oracle) {
    const Tn1Result r2 = oracle.tn1(2);
    const Tn1Result r3 = oracle.tn1(3);
    if (!(r2.value == 1 && r2.certified)) {
        return bad("threshold for 2: value " + std::to_string(r2.value) +
                   (r2.certified ? " certified" : " uncertified") + ", expected 1 certified");
    }
    if (!(r3.value == 2 && r3.certified)) {
        return bad("threshold for 3: value " + std::to_string(r3.value) +
                   (r3.certified ? " certified" : " uncertified") + ", expected 2 certified");
    }
    std::ostringstream os;
    os << "threshold(2) = 1, threshold(3) = 2, certificates "
       << r2.certificate_bound->str() << " and " << r3.certificate_bound->str();
    return ok(os.str());
}

Outcome primorial_membership(const SparseOracle& oracle) {
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17}) {
        const std::uint64_t z = to_u64(primorial(p));
        if (!oracle.is_sparsely_totient(z)) {
            return bad("primorial of " + std::to_string(p) + " = " + std::to_string(z) +
                       " rejected");
        }
    }
    return ok("primorials through 510510 all confirmed");
}

Outcome x_family_membership(const SparseOracle& oracle) {
    for (std::uint64_t n = 1; n <= 20; ++n) {
        const std::uint64_t p = next_prime_after(n / 2);  // least prime above n/2
        const FamilyElement el = x_np(n, p);
        const std::uint64_t v = to_u64(el.value.value());
        if (v > 1'000'000) return bad("element for n=" + std::to_string(n) + " too large");
        if (!el.structural_member) {
            return bad("n=" + std::to_string(n) + " fails its own structural test");
        }
        if (!oracle.is_sparsely_totient(v)) {
            return bad("n=" + std::to_string(n) + " value " + std::to_string(v) +
                       " rejected by the oracle");
        }
    }
    return ok("20 elements confirmed structurally and by the oracle");
}

Outcome y_family_membership(const SparseOracle& oracle) {
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected = {
        {5, 42}, {7, 330}, {11, 2730}, {13, 39270}};
    for (const auto& [p, want] : expected) {
        const FamilyElement el = y_pk(p, 1);
        const std::uint64_t v = to_u64(el.value.value());
        if (v != want) {
            return bad("value for p=" + std::to_string(p) + " is " + std::to_string(v) +
                       ", expected " + std::to_string(want));
        }
        if (!oracle.is_sparsely_totient(v)) {
            return bad(std::to_string(v) + " rejected by the oracle");
        }
    }
    return ok("42, 330, 2730, 39270 all confirmed");
}

Outcome interval_condition_anchors(const SparseOracle& oracle) {
    if (!in_e2(11).in_e2) return bad("11 not in e2");
    if (!in_e3(11).member) return bad("11 not in e3");
    if (!oracle.is_sparsely_totient(46410)) return bad("46410 rejected");
    if (!oracle.is_sparsely_totient(881790)) return bad("881790 rejected");
    return ok("11 in both interval sets; 46410 and 881790 confirmed");
}

std::vector<std::uint64_t> primes_to_ten_thousand() {
    std::vector<std::uint64_t> ps;
    for_primes_in(11, 10'000, [&](std::uint64_t p) { ps.push_back(p); });
    return ps;
}

Outcome small_gaps_imply_e2() {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t checked = 0;
    for (std::uint64_t p : primes_to_ten_thousand()) {
        const GapCriteria c = consecutive_prime_criteria(p);
        if (!c.small_gap) continue;
        ++checked;
        if (!in_e2(p).in_e2) {
            return bad("prime " + std::to_string(p) + " has gap " +
                       std::to_string(*c.small_gap) + " but is not in e2");
        }
    }
    const double elapsed = seconds_since(t0);
    constexpr double kBudget = 5.0;
    if (elapsed >= kBudget) {
        return bad("scan took " + std::to_string(elapsed) + " s, budget 5 s");
    }
    std::ostringstream os;
    os << checked << " primes with gap in {2,4,6,8} all in e2; " << elapsed << " s";
    return ok(os.str());
}

Outcome twin_plus_six_implies_e3() {
    std::uint64_t checked = 0;
    for (std::uint64_t p : primes_to_ten_thousand()) {
        const GapCriteria c = consecutive_prime_criteria(p);
        if (!c.twin_then_six) continue;
        ++checked;
        if (!in_e3(p).member) {
            return bad("prime " + std::to_string(p) + " has pattern (+2,+6) but is not in e3");
        }
    }
    return ok(std::to_string(checked) + " primes with pattern (+2,+6) all in e3");
}

Outcome bounded_pair_implies_e2() {
    std::uint64_t checked = 0;
    for (std::uint64_t p : primes_to_ten_thousand()) {
        const GapCriteria c = consecutive_prime_criteria(p);
        if (!c.bounded_pair) continue;
        ++checked;
        if (!in_e2(p).in_e2) {
            return bad("prime " + std::to_string(p) + " has p >= 2ab but is not in e2");
        }
    }
    return ok(std::to_string(checked) + " primes with p >= 2ab all in e2");
}

Outcome fractional_part_extremes() {
    const auto rows = scan_fractional(10'000);
    const Rational kCeiling(983607, 1000000);  // strict upper bound for every row
    bool saw_61 = false;
    Rational max_frac = 0;
    std::uint64_t argmax = 0;
    for (const E2Record& row : rows) {
        if (row.p == 61) {
            saw_61 = true;
            if (row.frac != Rational(60, 61)) {
                return bad("fractional part at 61 is " + to_decimal_string(row.frac) +
                           ", expected 60/61");
            }
        }
        if (row.frac > max_frac) {
            max_frac = row.frac;
            argmax = row.p;
        }
    }
    if (!saw_61) return bad("prime 61 missing from the scan");
    if (!(max_frac < kCeiling)) {
        return bad("max fractional part " + to_decimal_string(max_frac) + " at " +
                   std::to_string(argmax) + " is not below 0.983607");
    }
    std::ostringstream os;
    os << rows.size() << " rows; max fractional part " << to_decimal_string(max_frac)
       << " at p = " << argmax << ", below 0.983607";
    return ok(os.str());
}

Outcome prime_gap_growth_checks(const PrimeTable& primes) {
    if (primes.limit() < 1'200'100) {
        throw LimitError("needs a prime table past 1.2e6");
    }
    const auto& ps = primes.primes();
    // Every n in [26, 1e6] must see a prime q with 5q < 6n in (n, 1.2n).
    std::size_t idx = 0;
    for (std::uint64_t n = 26; n <= 1'000'000; ++n) {
        while (idx < ps.size() && ps[idx] <= n) ++idx;
        if (idx == ps.size()) return bad("prime table exhausted during the sweep");
        if (!(5 * ps[idx] < 6 * n)) {
            return bad("no prime in the open interval above n = " + std::to_string(n));
        }
    }
    // Spot-tie the sweep to the public predicate.
    for (std::uint64_t n : {26ULL, 27ULL, 1000ULL, 999'983ULL, 1'000'000ULL}) {
        if (!nagura_holds(n)) return bad("predicate disagrees at n = " + std::to_string(n));
    }
    // Third-next prime stays under (9/5)p for primes in [11, 1e6].
    for (std::size_t i = 0; i < ps.size() && ps[i] <= 1'000'000; ++i) {
        if (ps[i] < 11) continue;
        const std::uint64_t p3 =
            i + 3 < ps.size() ? ps[i + 3] : next_prime_after(ps[i + 2]);
        if (!(5 * p3 < 9 * ps[i])) {
            return bad("third next prime after " + std::to_string(ps[i]) + " reaches " +
                       std::to_string(p3));
        }
    }
    return ok("interval sweep on [26, 1e6] and growth check on primes in [11, 1e6] clean");
}

Outcome witness_constructions(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    constexpr int kBatch = 1000;

    const std::vector<std::uint64_t> small_primes = {2, 3, 5, 7, 11, 13};
    const std::vector<std::uint64_t> extra_pool = {2,  3,  5,  7,  11, 13,
                                                   17, 19, 23, 29, 31, 37};
    for (int i = 0; i < kBatch; ++i) {
        const std::uint64_t p = small_primes[gen() % small_primes.size()];
        const std::uint32_t r = 1 + static_cast<std::uint32_t>(gen() % 4);
        const auto valid_q = [&](std::uint64_t q) {
            if (r == 1) return exponent_cap_above(p, q) == 0;
            if (r == 2) return exponent_cap_above(p, q) <= 1;
            return true;
        };
        std::uint64_t q0 = next_prime_after(p);
        while (!valid_q(q0)) q0 = next_prime_after(q0);
        // Keep q^r comfortably inside 64 bits.
        const std::uint64_t qmax = r == 1   ? 1'000'000'000ULL
                                   : r == 2 ? 3'000'000'000ULL
                                   : r == 3 ? 2'000'000ULL
                                            : 55'000ULL;
        const std::uint64_t span =
            qmax > q0 ? std::min<std::uint64_t>(1'000'000, qmax - q0) : 1;
        std::uint64_t q = next_prime_after(q0 - 1 + gen() % span);
        if (!fits_u64(boost::multiprecision::pow(BigInt(q), r) + p)) q = q0;

        std::map<std::uint64_t, std::uint32_t> exps;
        exps[q] = r + static_cast<std::uint32_t>(gen() % 2);
        const std::uint64_t extras = gen() % 5;
        for (std::uint64_t e = 0; e < extras; ++e) {
            const std::uint64_t z = extra_pool[gen() % extra_pool.size()];
            if (z == p) continue;
            exps[z] += 1 + static_cast<std::uint32_t>(gen() % 2);
        }
        std::vector<PrimePower> pairs;
        for (const auto& [z, e] : exps) pairs.push_back({z, e});
        const Factorization N = Factorization::from_pairs(std::move(pairs));

        const WitnessResult w = witness_from_large_prime(N, p, q, r);
        if (!(w.y.value() > N.value() && w.phi_y <= phi_of_factorization(N))) {
            return bad("large-prime witness violated its contract at sample " +
                       std::to_string(i));
        }
    }

    const std::vector<std::pair<std::uint64_t, std::uint64_t>> below_pairs = {
        {3, 2}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {7, 5}};
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> alpha_cache;
    for (int i = 0; i < kBatch; ++i) {
        const auto [p, q] = below_pairs[gen() % below_pairs.size()];
        auto it = alpha_cache.find({p, q});
        if (it == alpha_cache.end()) {
            it = alpha_cache.emplace(std::make_pair(p, q), exponent_cap_below(p, q)).first;
        }
        const std::uint64_t v = it->second + 1 + gen() % 3;

        std::map<std::uint64_t, std::uint32_t> exps;
        exps[q] = static_cast<std::uint32_t>(v);
        for (std::uint64_t z : {2, 3, 5}) {
            if (z >= p || z == q) continue;
            if (gen() % 2 == 0) exps[z] += 1 + static_cast<std::uint32_t>(gen() % 4);
        }
        std::vector<PrimePower> pairs;
        for (const auto& [z, e] : exps) pairs.push_back({z, e});
        const Factorization N = Factorization::from_pairs(std::move(pairs));

        const WitnessResult w = witness_from_small_prime(N, p, q);
        if (!(w.y.value() > N.value() && w.phi_y < phi_of_factorization(N))) {
            return bad("small-prime witness violated its contract at sample " +
                       std::to_string(i));
        }
    }
    return ok("1000 large-prime and 1000 small-prime witnesses verified");
}

Outcome density_ratio_lemmas(const TotientTable& totients, std::uint64_t seed) {
    constexpr std::uint64_t kSweep = 2000;
    if (totients.limit() < kSweep) {
        throw LimitError("density identity sweep needs the table up to 2000");
    }
    std::vector<std::vector<std::uint64_t>> w(kSweep + 1);
    std::vector<Rational> dens(kSweep + 1);
    std::vector<std::uint64_t> phi(kSweep + 1);
    for (std::uint64_t v = 1; v <= kSweep; ++v) {
        w[v] = totients.factorize(v).prime_set();
        dens[v] = phi_density_ratio(w[v], {});
        phi[v] = totients.phi(v);
    }
    std::uint64_t blockers = 0;
    for (std::uint64_t y = 2; y <= kSweep; ++y) {
        for (std::uint64_t x = 1; x < y; ++x) {
            const Rational d = dens[y] / dens[x];
            if (Rational(phi[y], phi[x]) != Rational(y, x) * d) {
                return bad("identity fails at x=" + std::to_string(x) +
                           ", y=" + std::to_string(y));
            }
            if (phi[y] <= phi[x]) {
                ++blockers;
                if (!(d < 1)) {
                    return bad("blocking pair x=" + std::to_string(x) +
                               ", y=" + std::to_string(y) + " has ratio >= 1");
                }
            }
        }
    }
    std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t x = 1 + gen() % kSweep;
        const std::uint64_t y = 1 + gen() % kSweep;
        if (phi_density_ratio(w[y], w[x]) != dens[y] / dens[x]) {
            return bad("cached density disagrees with the public function");
        }
    }
    for (std::uint64_t n = 2; n <= 200; ++n) {
        for (std::uint64_t y = 1; y <= 200; ++y) {
            if (!(excess_ratio(n, y) <= Rational(n, 2))) {
                return bad("excess ratio above n/2 at n=" + std::to_string(n) +
                           ", y=" + std::to_string(y));
            }
        }
    }
    std::vector<std::uint64_t> pool;
    std::uint64_t pr = 1;
    for (int i = 0; i < 60; ++i) pool.push_back(pr = next_prime_after(pr));
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::uint64_t> base, super;
        for (int j = 0; j < 40; ++j) {
            if (gen() % 2 == 0) base.push_back(pool[j]);
        }
        super = base;
        for (int j = 40; j < 60; ++j) {
            if (gen() % 2 == 0) super.push_back(pool[j]);
        }
        if (!(phi_density_ratio(base, super) >= 1)) {
            return bad("superset pair ratio below 1 at sample " + std::to_string(i));
        }
    }
    std::ostringstream os;
    os << "identity on all pairs below 2000 (" << blockers
       << " blocking pairs strict), excess bound, 1000 superset pairs";
    return ok(os.str());
}

Outcome additive_witness_sums(const SparseOracle& oracle) {
    const IpWitness ip = ip_witness({2, 3, 4});
    if (ip.p != 17) return bad("anchor prime is " + std::to_string(ip.p) + ", expected 17");
    std::vector<BigInt> vals;
    for (const FamilyElement& el : ip.sequence) vals.push_back(el.value.value());
    std::uint64_t sums = 0;
    for (unsigned mask = 1; mask < 8; ++mask) {
        BigInt sum = 0;
        for (unsigned i = 0; i < 3; ++i) {
            if (mask & (1u << i)) sum += vals[i];
        }
        const std::uint64_t s = to_u64(sum);
        if (!x_structural_member(factorize(s))) {
            return bad("subset sum " + std::to_string(s) + " fails the structural test");
        }
        if (!oracle.is_sparsely_totient(s)) {
            return bad("subset sum " + std::to_string(s) + " rejected by the oracle");
        }
        ++sums;
    }
    return ok("anchor prime 17; all " + std::to_string(sums) + " subset sums confirmed");
}

Outcome progression_lifting(const SparseOracle& oracle) {
    const auto check = [&](const std::vector<std::uint64_t>& input,
                           const std::vector<std::uint64_t>& want) -> std::string {
        const auto lift = lift_progression(input);
        if (lift.size() != want.size()) return "wrong element count";
        for (std::size_t i = 0; i < want.size(); ++i) {
            const std::uint64_t v = to_u64(lift[i].value.value());
            if (v != want[i]) {
                return "element " + std::to_string(i) + " is " + std::to_string(v) +
                       ", expected " + std::to_string(want[i]);
            }
            if (!lift[i].structural_member) return std::to_string(v) + " not structural";
            if (!oracle.is_sparsely_totient(v)) return std::to_string(v) + " rejected";
        }
        return "";
    };
    if (auto err = check({1, 2, 3, 4}, {30, 60, 90, 120}); !err.empty()) return bad(err);
    if (auto err = check({1, 2, 4}, {30, 60, 120}); !err.empty()) return bad(err);
    return ok("both progressions lift to confirmed members");
}

Outcome sum_product_exclusion() {
    for (std::uint64_t x = 1; x <= 500; ++x) {
        for (std::uint64_t y = x; y <= 500; ++y) {
            if (sum_product_in_x(x, y)) {
                return bad("x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                           " puts both sum and product in the family");
            }
        }
    }
    return ok("no pair below 500 puts both sum and product in the family");
}

Outcome large_gap_structure(const SparseOracle& oracle) {
    const GapReport rep = additive_gap_report(oracle, 100'000, 1'000'000);
    if (rep.elements.size() < 2) return bad("too few members in [1e5, 1e6]");
    constexpr std::uint64_t kMinGap = 30;
    if (rep.min_gap < kMinGap) {
        return bad("minimum gap " + std::to_string(rep.min_gap) + " below 30");
    }
    for (std::uint64_t g : rep.gaps) {
        if (g % 6 != 0) return bad("gap " + std::to_string(g) + " not divisible by 6");
    }
    std::ostringstream os;
    os << rep.elements.size() << " members, min gap " << rep.min_gap << ", max gap "
       << *std::max_element(rep.gaps.begin(), rep.gaps.end()) << ", all divisible by 6";
    return ok(os.str());
}

}  // namespace

AcceptanceReport run_acceptance(const PrimeTable& primes, const TotientTable& totients,
                                std::uint64_t seed) {
    const SparseOracle oracle(primes, totients);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"first members table", [&] { return first_members_table(oracle); }},
        {"quadratic growth", [&] { return quadratic_growth(oracle); }},
        {"divisibility by three", [&] { return divisibility_by_three(oracle); }},
        {"divisibility thresholds", [&] { return divisibility_thresholds(oracle); }},
        {"primorial membership", [&] { return primorial_membership(oracle); }},
        {"x family membership", [&] { return x_family_membership(oracle); }},
        {"y family membership", [&] { return y_family_membership(oracle); }},
        {"interval condition anchors", [&] { return interval_condition_anchors(oracle); }},
        {"small gaps imply e2", [] { return small_gaps_imply_e2(); }},
        {"twin plus six implies e3", [] { return twin_plus_six_implies_e3(); }},
        {"bounded pair implies e2", [] { return bounded_pair_implies_e2(); }},
        {"fractional part extremes", [] { return fractional_part_extremes(); }},
        {"prime gap growth checks", [&] { return prime_gap_growth_checks(primes); }},
        {"witness constructions", [&] { return witness_constructions(seed); }},
        {"density ratio lemmas", [&] { return density_ratio_lemmas(totients, seed); }},
        {"additive witness sums", [&] { return additive_witness_sums(oracle); }},
        {"progression lifting", [&] { return progression_lifting(oracle); }},
        {"sum product exclusion", [] { return sum_product_exclusion(); }},
        {"large gap structure", [&] { return large_gap_structure(oracle); }},
    };

    AcceptanceReport report;
    int id = 0;
    for (const auto& [name, fn] : criteria) {
        CriterionResult r;
        r.id = ++id;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = fn();
            r.status = o.pass ? CriterionStatus::Pass : CriterionStatus::Fail;
            r.detail = o.detail;
        } catch (const LimitError& e) {
            r.status = CriterionStatus::Skip;
            r.detail = e.what();
        } catch (const std::exception& e) {
            r.status = CriterionStatus::Fail;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = seconds_since(t0);
        report.results.push_back(std::move(r));
    }
    return report;
}

}  // namespace stn
