#include "stn/sparse.hpp"

#include <algorithm>

#include "stn/errors.hpp"
#include "stn/structure.hpp"

namespace stn {

SparseOracle::SparseOracle(const PrimeTable& primes, const TotientTable& totients)
    : primes_(primes), totients_(totients) {}

std::uint64_t SparseOracle::n1_of(std::uint64_t m) const {
    if (m < 1) throw UsageError("totient bound must be positive");
    const std::uint64_t bound = search_bound(m);
    if (bound > limit()) {
        throw LimitError("search bound " + std::to_string(bound) +
                         " exceeds the table limit " + std::to_string(limit()));
    }
    for (std::uint64_t x = bound;; --x) {
        if (totients_.phi(x) <= m) return x;  // phi(1) = 1 <= m ends the scan
    }
}

bool SparseOracle::is_sparsely_totient(std::uint64_t n) const {
    if (n < 1) throw UsageError("membership needs a positive integer");
    if (n > limit()) {
        throw LimitError("membership of " + std::to_string(n) +
                         " lies beyond the table limit " + std::to_string(limit()));
    }
    const std::uint64_t m = totients_.phi(n);
    if (totients_.min_phi_above(n) <= m) return false;  // a concrete y refutes
    if (search_bound(m) > limit()) {
        throw LimitError("confirming " + std::to_string(n) +
                         " needs the table up to " + std::to_string(search_bound(m)));
    }
    return true;
}

std::optional<std::uint64_t> SparseOracle::smallest_blocker(std::uint64_t n) const {
    if (n < 1) throw UsageError("needs a positive integer");
    if (n > limit()) {
        throw LimitError("blocker search for " + std::to_string(n) +
                         " lies beyond the table limit " + std::to_string(limit()));
    }
    const std::uint64_t m = totients_.phi(n);
    if (totients_.min_phi_above(n) <= m) {
        for (std::uint64_t y = n + 1;; ++y) {
            if (totients_.phi(y) <= m) return y;
        }
    }
    if (search_bound(m) > limit()) {
        throw LimitError("clearing " + std::to_string(n) +
                         " needs the table up to " + std::to_string(search_bound(m)));
    }
    return std::nullopt;
}

SparseOracle::Walk SparseOracle::walk_members(std::uint64_t up_to) const {
    Walk w;
    for (std::uint64_t n = 1; n <= up_to; ++n) {
        const std::uint64_t m = totients_.phi(n);
        if (m >= totients_.min_phi_above(n)) continue;
        if (search_bound(m) > limit()) {
            // Later candidates have strictly larger totients, hence larger
            // bounds: nothing past this point is decidable either.
            w.first_undecided = n;
            w.horizon = n - 1;
            return w;
        }
        w.members.push_back(n);
    }
    w.horizon = up_to;
    return w;
}

std::vector<SparseTotientRecord> SparseOracle::enumerate_n1(std::uint64_t up_to) const {
    if (up_to < 1) throw UsageError("enumeration bound must be positive");
    if (up_to > limit()) {
        throw LimitError("enumeration to " + std::to_string(up_to) +
                         " exceeds the table limit " + std::to_string(limit()));
    }
    const Walk w = walk_members(up_to);
    if (w.first_undecided) {
        throw LimitError("membership of " + std::to_string(*w.first_undecided) +
                         " needs a table past " + std::to_string(limit()));
    }
    std::vector<SparseTotientRecord> out;
    out.reserve(w.members.size());
    for (std::uint64_t n : w.members) {
        out.push_back({n, totients_.phi(n), totients_.phi(n)});
    }
    return out;
}

std::vector<std::uint64_t> SparseOracle::phi_preimage(std::uint64_t m) const {
    if (m < 1) throw UsageError("totient value must be positive");
    const std::uint64_t bound = search_bound(m);
    if (bound > limit()) {
        throw LimitError("preimage of " + std::to_string(m) +
                         " needs the table up to " + std::to_string(bound));
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 1; x <= bound; ++x) {
        if (totients_.phi(x) == m) out.push_back(x);
    }
    return out;
}

std::vector<Bn1Entry> SparseOracle::enumerate_bn1(std::uint64_t up_to) const {
    if (up_to < 1) throw UsageError("enumeration bound must be positive");
    const std::uint64_t bound = search_bound(up_to);
    if (bound > limit()) {
        throw LimitError("image enumeration to " + std::to_string(up_to) +
                         " needs the table up to " + std::to_string(bound));
    }
    std::vector<Bn1Entry> out;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        const std::uint64_t m = totients_.phi(n);
        // Confirmation bound is monotone: search_bound(m) <= bound <= limit.
        if (m <= up_to && m < totients_.min_phi_above(n)) {
            out.push_back({out.size() + 1, m, n});
        }
    }
    return out;
}

Tn1Result SparseOracle::tn1(std::uint64_t p) const {
    if (!is_prime_u64(p)) throw UsageError("divisibility threshold needs a prime");

    const std::optional<BigInt> bstar = coprime_bound_within(p, BigInt(limit()));
    const Walk w = walk_members(limit());

    std::optional<std::size_t> last_coprime;
    for (std::size_t i = 0; i < w.members.size(); ++i) {
        if (w.members[i] % p != 0) last_coprime = i;
    }
    std::optional<std::uint64_t> successor;
    if (last_coprime && *last_coprime + 1 < w.members.size()) {
        successor = w.members[*last_coprime + 1];
    }

    Tn1Result out;
    out.p = p;
    if (!last_coprime) {
        out.value = 1;
    } else if (successor) {
        out.value = totients_.phi(*successor);
    } else if (w.first_undecided) {
        // Lower bound: the true successor is at least the first undecided
        // candidate, whose totient exceeds every decided one.
        out.value = totients_.phi(*w.first_undecided);
    } else {
        out.value = totients_.phi(w.members[*last_coprime]);
    }
    out.certified = bstar.has_value() && *bstar <= BigInt(w.horizon) &&
                    (!last_coprime || successor.has_value());
    if (out.certified) out.certificate_bound = bstar;
    return out;
}

}  // namespace stn
