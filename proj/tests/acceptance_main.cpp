// Acceptance gate: every criterion must pass outright at the full table
// limit. A skip here means the tables were too small and counts as failure.

#include <cstdio>

#include "stn/primes.hpp"
#include "stn/totient.hpp"
#include "stn/verify.hpp"

int main() {
    constexpr std::uint64_t kLimit = 2'500'000;
    constexpr std::uint64_t kSeed = 1;

    const stn::PrimeTable primes(kLimit);
    const stn::TotientTable totients(kLimit);
    const stn::AcceptanceReport report = stn::run_acceptance(primes, totients, kSeed);

    bool all_pass = true;
    for (const auto& r : report.results) {
        const char* status = r.status == stn::CriterionStatus::Pass   ? "PASS"
                             : r.status == stn::CriterionStatus::Fail ? "FAIL"
                                                                      : "SKIPPED";
        if (r.status != stn::CriterionStatus::Pass) all_pass = false;
        std::printf("[%2d] %-7s %s — %s (%.2f s)\n", r.id, status, r.name.c_str(),
                    r.detail.c_str(), r.seconds);
    }
    std::printf("%s: %zu criteria\n", all_pass ? "ALL PASS" : "NOT ALL PASS",
                report.results.size());
    return all_pass ? 0 : 1;
}
