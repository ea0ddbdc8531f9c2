#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stn/primes.hpp"
#include "stn/totient.hpp"

namespace stn {

enum class CriterionStatus { Pass, Fail, Skip };

struct CriterionResult {
    int id = 0;
    std::string name;
    CriterionStatus status = CriterionStatus::Fail;
    std::string detail;   // observed values, or the reason for a skip/failure
    double seconds = 0.0;
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;

    // Skips (table too small for a criterion) do not count as failures.
    bool all_passed() const {
        for (const auto& r : results) {
            if (r.status == CriterionStatus::Fail) return false;
        }
        return true;
    }
};

// Runs the full acceptance suite against the given tables. Criteria whose
// completeness bound exceeds the table limit are reported as Skip; every
// tolerance and expected constant is pinned inside. `seed` drives the
// randomized witness and density-ratio batches.
AcceptanceReport run_acceptance(const PrimeTable& primes, const TotientTable& totients,
                                std::uint64_t seed);

}  // namespace stn
