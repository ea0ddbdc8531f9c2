// Command-line front end: sieve-backed queries about sparsely totient
// numbers, family constructions, interval scans, and the acceptance suite.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stn/errors.hpp"
#include "stn/families.hpp"
#include "stn/primes.hpp"
#include "stn/sparse.hpp"
#include "stn/structure.hpp"
#include "stn/totient.hpp"
#include "stn/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSieveLimit = 2'500'000;

struct RunConfig {
    std::uint64_t sieve_limit = kDefaultSieveLimit;
    std::string format = "plain";
    std::string out_path;
    std::uint64_t seed = 1;
    unsigned parallelism = 1;
};

// Tables plus the oracle that borrows them, built once per invocation.
struct Session {
    stn::PrimeTable primes;
    stn::TotientTable totients;
    stn::SparseOracle oracle;

    explicit Session(std::uint64_t limit)
        : primes(limit), totients(limit), oracle(primes, totients) {}
};

void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw stn::UsageError("cannot open output file " + cfg.out_path);
    f << payload;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string json_payload(const json& j) { return j.dump(2) + "\n"; }

json rational_json(const stn::Rational& r) {
    return json{{"num", stn::numerator_of(r).str()}, {"den", stn::denominator_of(r).str()}};
}

json factorization_json(const stn::Factorization& f) {
    json arr = json::array();
    for (const auto& pp : f.pairs()) {
        arr.push_back(json{{"prime", pp.prime}, {"exp", pp.exp}});
    }
    return arr;
}

std::string factorization_str(const stn::Factorization& f) {
    if (f.pairs().empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& pp : f.pairs()) {
        if (!first) os << " * ";
        first = false;
        os << pp.prime;
        if (pp.exp > 1) os << "^" << pp.exp;
    }
    return os.str();
}

// ---------------------------------------------------------------- list-n1
int cmd_list_n1(const RunConfig& cfg, std::uint64_t up_to) {
    Session s(cfg.sieve_limit);
    const auto recs = s.oracle.enumerate_n1(up_to);
    if (cfg.format == "json") {
        json arr = json::array();
        std::uint64_t k = 0;
        for (const auto& r : recs) {
            arr.push_back(json{
                {"k", ++k}, {"n", r.n}, {"phi", r.phi_n}, {"block_start", r.block_start}});
        }
        emit(cfg, json_payload(arr));
        return 0;
    }
    std::ostringstream os;
    os << "k,n,phi,block_start\n";
    std::uint64_t k = 0;
    for (const auto& r : recs) {
        os << ++k << ',' << r.n << ',' << r.phi_n << ',' << r.block_start << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

// ------------------------------------------------------------------ check
int cmd_check(const RunConfig& cfg, std::uint64_t n) {
    Session s(cfg.sieve_limit);
    const auto blocker = s.oracle.smallest_blocker(n);
    if (cfg.format == "json") {
        json j{{"n", n}, {"member", !blocker.has_value()}};
        j["blocker"] = blocker ? json(*blocker) : json(nullptr);
        emit(cfg, json_payload(j));
        return 0;
    }
    if (blocker) {
        emit(cfg, "not sparsely totient (blocked by " + std::to_string(*blocker) + ")\n");
    } else {
        emit(cfg, "sparsely totient\n");
    }
    return 0;
}

// --------------------------------------------------------------------- n1
int cmd_n1(const RunConfig& cfg, std::uint64_t m) {
    Session s(cfg.sieve_limit);
    const std::uint64_t v = s.oracle.n1_of(m);
    if (cfg.format == "json") {
        emit(cfg, json_payload(json{{"m", m}, {"value", v}}));
    } else {
        emit(cfg, std::to_string(v) + "\n");
    }
    return 0;
}

// -------------------------------------------------------------------- bn1
int cmd_bn1(const RunConfig& cfg, std::uint64_t up_to) {
    Session s(cfg.sieve_limit);
    const auto entries = s.oracle.enumerate_bn1(up_to);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& e : entries) {
            arr.push_back(json{{"k", e.k}, {"m", e.m_k}, {"n1", e.n1_value}});
        }
        emit(cfg, json_payload(arr));
        return 0;
    }
    std::ostringstream os;
    os << "k,m,n1\n";
    for (const auto& e : entries) {
        os << e.k << ',' << e.m_k << ',' << e.n1_value << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

// -------------------------------------------------------------------- tn1
int cmd_tn1(const RunConfig& cfg, std::uint64_t p) {
    Session s(cfg.sieve_limit);
    const stn::Tn1Result r = s.oracle.tn1(p);
    if (cfg.format == "json") {
        json j{{"p", r.p}, {"value", r.value}, {"certified", r.certified}};
        j["certificate_bound"] =
            r.certificate_bound ? json(r.certificate_bound->str()) : json(nullptr);
        emit(cfg, json_payload(j));
        return 0;
    }
    emit(cfg, std::to_string(r.value) + (r.certified ? " CERTIFIED" : " UNCERTIFIED") + "\n");
    return 0;
}

// --------------------------------------------------------------- preimage
int cmd_preimage(const RunConfig& cfg, std::uint64_t m) {
    Session s(cfg.sieve_limit);
    const auto xs = s.oracle.phi_preimage(m);
    if (cfg.format == "json") {
        emit(cfg, json_payload(json{{"m", m}, {"values", xs}}));
        return 0;
    }
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "x\n";
        for (std::uint64_t x : xs) os << x << '\n';
        emit(cfg, os.str());
        return 0;
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
    os << '\n';
    emit(cfg, os.str());
    return 0;
}

// ----------------------------------------------------------------- family
int cmd_family(const RunConfig& cfg, const stn::FamilyElement& el) {
    // The oracle verdict is best effort: values beyond the table stay unknown.
    std::optional<bool> verdict;
    std::string unknown_reason;
    try {
        Session s(cfg.sieve_limit);
        verdict = s.oracle.is_sparsely_totient(stn::to_u64(el.value.value()));
    } catch (const stn::LimitError& e) {
        unknown_reason = e.what();
    } catch (const stn::UsageError& e) {
        unknown_reason = e.what();  // value too wide for 64 bits
    }
    if (cfg.format == "json") {
        json j;
        j["kind"] = el.kind == stn::FamilyKind::X   ? "x"
                    : el.kind == stn::FamilyKind::Y ? "y"
                                                    : "primorial";
        if (el.param_n) j["n"] = el.param_n;
        if (el.param_p) j["p"] = el.param_p;
        if (el.param_k) j["k"] = el.param_k;
        j["value"] = el.value.value().str();
        j["factorization"] = factorization_json(el.value);
        j["structural"] = el.structural_member;
        j["oracle"] = verdict ? json(*verdict) : json(nullptr);
        emit(cfg, json_payload(j));
        return 0;
    }
    std::ostringstream os;
    os << "value: " << el.value.value().str() << '\n'
       << "factorization: " << factorization_str(el.value) << '\n'
       << "structural: " << bool_str(el.structural_member) << '\n';
    if (verdict) {
        os << "oracle: " << bool_str(*verdict) << '\n';
    } else {
        os << "oracle: unknown (" << unknown_reason << ")\n";
    }
    emit(cfg, os.str());
    return 0;
}

// ------------------------------------------------------------------- scan
int cmd_scan_frac(const RunConfig& cfg, std::uint64_t max_p) {
    const auto rows = stn::scan_fractional(max_p, cfg.parallelism);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back(json{{"p", r.p},
                               {"p1", r.p1},
                               {"p2", r.p2},
                               {"frac", rational_json(r.frac)},
                               {"frac_decimal", stn::to_decimal_string(r.frac)}});
        }
        emit(cfg, json_payload(arr));
        return 0;
    }
    std::ostringstream os;
    os << "p,p1,p2,frac_num,frac_den,frac_decimal\n";
    for (const auto& r : rows) {
        os << r.p << ',' << r.p1 << ',' << r.p2 << ',' << stn::numerator_of(r.frac).str()
           << ',' << stn::denominator_of(r.frac).str() << ','
           << stn::to_decimal_string(r.frac) << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_scan_e2(const RunConfig& cfg, std::uint64_t max_p) {
    const auto rows = stn::scan_e2(max_p, cfg.parallelism);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back(json{{"p", r.p},
                               {"in_set", r.in_e2},
                               {"blocking_prime",
                                r.blocking_prime ? json(*r.blocking_prime) : json(nullptr)}});
        }
        emit(cfg, json_payload(arr));
        return 0;
    }
    std::ostringstream os;
    os << "p,in_set,blocking_prime\n";
    for (const auto& r : rows) {
        os << r.p << ',' << bool_str(r.in_e2) << ',';
        if (r.blocking_prime) os << *r.blocking_prime;
        os << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_scan_e3(const RunConfig& cfg, std::uint64_t max_p) {
    const auto rows = stn::scan_e3(max_p, cfg.parallelism);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back(
                json{{"p", r.p},
                     {"in_set", r.result.member},
                     {"blocking_prime",
                      r.result.blocker ? json(r.result.blocker->second) : json(nullptr)}});
        }
        emit(cfg, json_payload(arr));
        return 0;
    }
    std::ostringstream os;
    os << "p,in_set,blocking_prime\n";
    for (const auto& r : rows) {
        os << r.p << ',' << bool_str(r.result.member) << ',';
        if (r.result.blocker) os << r.result.blocker->second;
        os << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_scan_thm3(const RunConfig& cfg, std::uint64_t max_p) {
    const auto rows = stn::scan_gap_criteria(max_p, cfg.parallelism);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json j{{"p", r.p}, {"p1", r.criteria.p1}, {"p2", r.criteria.p2}};
            j["small_gap"] = r.criteria.small_gap ? json(*r.criteria.small_gap) : json(nullptr);
            j["twin_then_six"] = r.criteria.twin_then_six;
            j["bounded_pair"] =
                r.criteria.bounded_pair
                    ? json{{"a", r.criteria.bounded_pair->first},
                           {"b", r.criteria.bounded_pair->second}}
                    : json(nullptr);
            arr.push_back(std::move(j));
        }
        emit(cfg, json_payload(arr));
        return 0;
    }
    std::ostringstream os;
    os << "p,p1,p2,small_gap,twin_then_six,bounded_a,bounded_b\n";
    for (const auto& r : rows) {
        os << r.p << ',' << r.criteria.p1 << ',' << r.criteria.p2 << ',';
        if (r.criteria.small_gap) os << *r.criteria.small_gap;
        os << ',' << bool_str(r.criteria.twin_then_six) << ',';
        if (r.criteria.bounded_pair) os << r.criteria.bounded_pair->first;
        os << ',';
        if (r.criteria.bounded_pair) os << r.criteria.bounded_pair->second;
        os << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

// ------------------------------------------------------------- verify-all
int cmd_verify_all(const RunConfig& cfg, std::uint64_t limit, bool corrupt) {
    Session s(limit);
    if (corrupt) s.totients.corrupt_phi_for_testing(6, 1);
    const stn::AcceptanceReport report = stn::run_acceptance(s.primes, s.totients, cfg.seed);

    int passed = 0, failed = 0, skipped = 0;
    for (const auto& r : report.results) {
        switch (r.status) {
            case stn::CriterionStatus::Pass: ++passed; break;
            case stn::CriterionStatus::Fail: ++failed; break;
            case stn::CriterionStatus::Skip: ++skipped; break;
        }
    }
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : report.results) {
            arr.push_back(json{{"id", r.id},
                               {"name", r.name},
                               {"status", r.status == stn::CriterionStatus::Pass   ? "pass"
                                          : r.status == stn::CriterionStatus::Fail ? "fail"
                                                                                   : "skipped"},
                               {"detail", r.detail},
                               {"seconds", r.seconds}});
        }
        json j{{"sieve_limit", limit}, {"seed", cfg.seed},     {"results", std::move(arr)},
               {"passed", passed},     {"failed", failed},     {"skipped", skipped}};
        emit(cfg, json_payload(j));
    } else {
        std::ostringstream os;
        for (const auto& r : report.results) {
            const char* status = r.status == stn::CriterionStatus::Pass   ? "PASS"
                                 : r.status == stn::CriterionStatus::Fail ? "FAIL"
                                                                          : "SKIPPED";
            os << '[' << (r.id < 10 ? " " : "") << r.id << "] " << status << ' ' << r.name
               << " — " << r.detail << '\n';
        }
        os << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
        emit(cfg, os.str());
    }
    return report.all_passed() ? 0 : 1;
}

std::uint64_t env_sieve_limit() {
    const char* env = std::getenv("STN_SIEVE_LIMIT");
    if (env == nullptr) return kDefaultSieveLimit;
    try {
        const unsigned long long v = std::stoull(env);
        if (v >= 100) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid STN_SIEVE_LIMIT=" << env << "\n";
    return kDefaultSieveLimit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparsely totient number toolkit"};
    app.fallthrough();
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.sieve_limit = env_sieve_limit();
    app.add_option("--sieve-limit", cfg.sieve_limit,
                   "totient/prime table limit (env STN_SIEVE_LIMIT overrides the default)")
        ->check(CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 32))
        ->capture_default_str();
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"plain", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out_path, "write output to this file instead of stdout");
    app.add_option("--seed", cfg.seed, "seed for randomized batches")->capture_default_str();
    app.add_option("--parallelism", cfg.parallelism, "worker threads for scans")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();

    std::function<int()> action;

    std::uint64_t list_up_to = 0;
    auto* list_cmd = app.add_subcommand("list-n1", "enumerate members up to a bound");
    list_cmd->add_option("--up-to", list_up_to, "inclusive upper bound")->required();
    list_cmd->callback([&] { action = [&] { return cmd_list_n1(cfg, list_up_to); }; });

    std::uint64_t check_n = 0;
    auto* check_cmd = app.add_subcommand("check", "test membership of one number");
    check_cmd->add_option("n", check_n, "number to test")->required();
    check_cmd->callback([&] { action = [&] { return cmd_check(cfg, check_n); }; });

    std::uint64_t n1_m = 0;
    auto* n1_cmd = app.add_subcommand("n1", "largest x with phi(x) <= m");
    n1_cmd->add_option("m", n1_m, "totient bound")->required();
    n1_cmd->callback([&] { action = [&] { return cmd_n1(cfg, n1_m); }; });

    std::uint64_t bn1_up_to = 0;
    auto* bn1_cmd = app.add_subcommand("bn1", "totient image of the member sequence");
    bn1_cmd->add_option("--up-to", bn1_up_to, "largest totient value to include")->required();
    bn1_cmd->callback([&] { action = [&] { return cmd_bn1(cfg, bn1_up_to); }; });

    std::uint64_t tn1_p = 0;
    auto* tn1_cmd = app.add_subcommand("tn1", "divisibility threshold for a prime");
    tn1_cmd->add_option("p", tn1_p, "prime")->required();
    tn1_cmd->callback([&] { action = [&] { return cmd_tn1(cfg, tn1_p); }; });

    std::uint64_t pre_m = 0;
    auto* pre_cmd = app.add_subcommand("preimage", "all x with phi(x) = m");
    pre_cmd->add_option("m", pre_m, "totient value")->required();
    pre_cmd->callback([&] { action = [&] { return cmd_preimage(cfg, pre_m); }; });

    auto* family_cmd = app.add_subcommand("family", "explicit family constructions");
    family_cmd->require_subcommand(1);
    std::uint64_t fam_n = 0, fam_p = 0, fam_k = 0;
    auto* fam_x = family_cmd->add_subcommand("x", "squarefree-part times primorial");
    fam_x->add_option("--n", fam_n, "parameter n")->required();
    fam_x->add_option("--p", fam_p, "prime p")->required();
    fam_x->callback([&] { action = [&] { return cmd_family(cfg, stn::x_np(fam_n, fam_p)); }; });
    auto* fam_y = family_cmd->add_subcommand("y", "primorial with one prime removed");
    fam_y->add_option("--p", fam_p, "prime p to remove")->required();
    fam_y->add_option("--k", fam_k, "reach: k-th prime after p")->required();
    fam_y->callback([&] { action = [&] { return cmd_family(cfg, stn::y_pk(fam_p, fam_k)); }; });

    auto* scan_cmd = app.add_subcommand("scan", "bulk scans over primes");
    scan_cmd->require_subcommand(1);
    std::uint64_t max_p = 0;
    auto add_scan = [&](const char* name, const char* help, auto fn) {
        auto* sub = scan_cmd->add_subcommand(name, help);
        sub->add_option("--max-p", max_p, "scan primes in [11, max-p]")->required();
        sub->callback([&, fn] { action = [&, fn] { return fn(cfg, max_p); }; });
        return sub;
    };
    add_scan("e2", "two-prime interval condition", cmd_scan_e2);
    add_scan("e3", "three-prime interval condition", cmd_scan_e3);
    add_scan("frac", "fractional parts of p1*p2/p", cmd_scan_frac);
    add_scan("thm3", "gap criteria classification", cmd_scan_thm3);

    std::uint64_t verify_limit = 0;
    bool corrupt = false;
    auto* verify_cmd = app.add_subcommand("verify-all", "run the acceptance suite");
    verify_cmd->add_option("--limit", verify_limit, "table limit for this run")
        ->check(CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 32));
    auto* corrupt_opt = verify_cmd->add_flag("--corrupt-table", corrupt,
                                             "test hook: break the totient table on purpose");
    corrupt_opt->group("");  // hidden
    verify_cmd->callback([&] {
        action = [&] {
            return cmd_verify_all(cfg, verify_limit ? verify_limit : cfg.sieve_limit, corrupt);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const stn::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const stn::UnsupportedInputError& e) {
        std::cerr << "unsupported input: " << e.what() << "\n";
        return 2;
    } catch (const stn::LimitError& e) {
        std::cerr << "limit error: " << e.what() << "\n";
        return 3;
    } catch (const stn::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
