#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "json.hpp"

// Full end-to-end runs of the installed binary (path injected by CMake).
namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + "\"" + STN_CLI_PATH + "\" " + args + " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) {
        r.out.append(buf, got);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("list-n1 prints the first thirteen members as csv") {
    const auto r = run_cli("list-n1 --up-to 220 --sieve-limit 1000");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 14);
    CHECK(ls[0] == "k,n,phi,block_start");
    CHECK(ls[1] == "1,2,1,1");
    CHECK(ls[13] == "13,210,48,48");
}

TEST_CASE("list-n1 emits json on request") {
    const auto r = run_cli("list-n1 --up-to 10 --sieve-limit 1000 --format json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["n"] == 2);
    CHECK(j[1]["n"] == 6);
    CHECK(j[1]["phi"] == 2);
}

TEST_CASE("check names the blocker for non-members") {
    const auto bad = run_cli("check 10 --sieve-limit 1000");
    CHECK(bad.exit_code == 0);
    CHECK(bad.out == "not sparsely totient (blocked by 12)\n");

    const auto good = run_cli("check 12 --sieve-limit 1000");
    CHECK(good.exit_code == 0);
    CHECK(good.out == "sparsely totient\n");

    const auto j = nlohmann::json::parse(run_cli("check 10 --sieve-limit 1000 --format json").out);
    CHECK(j["member"] == false);
    CHECK(j["blocker"] == 12);
    const auto j2 = nlohmann::json::parse(run_cli("check 12 --sieve-limit 1000 --format json").out);
    CHECK(j2["member"] == true);
    CHECK(j2["blocker"].is_null());
}

TEST_CASE("n1 maps block starts to members") {
    const auto r = run_cli("n1 12 --sieve-limit 1000");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "42\n");
}

TEST_CASE("bn1 tabulates the totient image") {
    const auto r = run_cli("bn1 --up-to 48 --sieve-limit 1000");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 14);
    CHECK(ls[0] == "k,m,n1");
    CHECK(ls[1] == "1,1,2");
    CHECK(ls[13] == "13,48,210");
}

TEST_CASE("tn1 reports certified thresholds") {
    CHECK(run_cli("tn1 2 --sieve-limit 5000").out == "1 CERTIFIED\n");
    CHECK(run_cli("tn1 3 --sieve-limit 5000").out == "2 CERTIFIED\n");

    const auto j = nlohmann::json::parse(run_cli("tn1 3 --sieve-limit 5000 --format json").out);
    CHECK(j["value"] == 2);
    CHECK(j["certified"] == true);
    CHECK(j["certificate_bound"] == "10");
}

TEST_CASE("tn1 is honest about uncertified values") {
    const auto r = run_cli("tn1 5 --sieve-limit 100000");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "128 UNCERTIFIED\n");
    const auto j = nlohmann::json::parse(run_cli("tn1 5 --sieve-limit 100000 --format json").out);
    CHECK(j["certified"] == false);
    CHECK(j["certificate_bound"].is_null());
}

TEST_CASE("preimage lists the full inverse image") {
    CHECK(run_cli("preimage 4 --sieve-limit 1000").out == "5 8 10 12\n");
    CHECK(run_cli("preimage 14 --sieve-limit 1000").out == "\n");

    const auto j = nlohmann::json::parse(run_cli("preimage 4 --sieve-limit 1000 --format json").out);
    CHECK(j["m"] == 4);
    CHECK(j["values"] == nlohmann::json::array({5, 8, 10, 12}));
}

TEST_CASE("family subcommands report value, structure and oracle verdict") {
    const auto y = run_cli("family y --p 11 --k 2 --sieve-limit 60000");
    CHECK(y.exit_code == 0);
    CHECK(y.out.find("value: 46410") != std::string::npos);
    CHECK(y.out.find("structural: true") != std::string::npos);
    CHECK(y.out.find("oracle: true") != std::string::npos);

    const auto x = run_cli("family x --n 100 --p 3 --sieve-limit 1000");
    CHECK(x.exit_code == 0);
    CHECK(x.out.find("value: 60") != std::string::npos);
    CHECK(x.out.find("structural: false") != std::string::npos);
    CHECK(x.out.find("oracle: true") != std::string::npos);
}

TEST_CASE("family reports unknown when the oracle cannot decide") {
    const auto r = run_cli("family x --n 1 --p 13 --sieve-limit 100");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("value: 30030") != std::string::npos);
    CHECK(r.out.find("oracle: unknown") != std::string::npos);
}

TEST_CASE("scan frac reproduces the fractional-part table") {
    const auto r = run_cli("scan frac --max-p 100");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 22);
    CHECK(ls[0] == "p,p1,p2,frac_num,frac_den,frac_decimal");
    CHECK(ls[14] == "61,67,71,60,61,0.983606557377049");
}

TEST_CASE("scan output is byte-identical across runs and thread counts") {
    const auto a = run_cli("scan e3 --max-p 500");
    const auto b = run_cli("scan e3 --max-p 500");
    const auto c = run_cli("scan e3 --max-p 500 --parallelism 2");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.exit_code == 0);
}

TEST_CASE("scan e2 marks members and leaves the blocker column empty") {
    const auto r = run_cli("scan e2 --max-p 100");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("p,in_set,blocking_prime\n") == 0);
    CHECK(r.out.find("11,true,\n") != std::string::npos);
}

TEST_CASE("scan thm3 tabulates the gap criteria") {
    const auto r = run_cli("scan thm3 --max-p 50");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    CHECK(ls[0] == "p,p1,p2,small_gap,twin_then_six,bounded_a,bounded_b");
    CHECK(ls[1] == "11,13,17,2,true,,");
    // p = 41 satisfies the bounded-pair criterion with (a, b) = (2, 6).
    bool found41 = false;
    for (const auto& l : ls) {
        if (l.rfind("41,", 0) == 0) {
            CHECK(l == "41,43,47,2,true,2,6");
            found41 = true;
        }
    }
    CHECK(found41);
}

TEST_CASE("scan json round-trips exact fractions") {
    const auto r = run_cli("scan frac --max-p 100 --format json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    bool found = false;
    for (const auto& row : j) {
        if (row["p"] == 61) {
            CHECK(row["frac"]["num"] == "60");
            CHECK(row["frac"]["den"] == "61");
            CHECK(row["frac_decimal"] == "0.983606557377049");
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("--out writes the payload to a file") {
    namespace fs = std::filesystem;
    const fs::path target = fs::temp_directory_path() / "stn_cli_out_test.csv";
    fs::remove(target);
    const auto r = run_cli("scan frac --max-p 50 --out " + target.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in(target);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "p,p1,p2,frac_num,frac_den,frac_decimal");
    in.close();
    fs::remove(target);
}

TEST_CASE("verify-all skips honestly at a small limit and still exits zero") {
    const auto r = run_cli("verify-all --limit 1000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("SKIPPED") != std::string::npos);
    CHECK(r.out.find(" 0 failed") != std::string::npos);
}

TEST_CASE("verify-all detects a corrupted totient table") {
    const auto r = run_cli("verify-all --limit 1000 --corrupt-table");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("limit errors exit with status 3") {
    const auto r = run_cli("n1 999999999 --sieve-limit 2000");
    CHECK(r.exit_code == 3);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("nope").exit_code == 2);
    CHECK(run_cli("n1").exit_code == 2);
    CHECK(run_cli("family y --p 7 --k 5 --sieve-limit 1000").exit_code == 2);
    CHECK(run_cli("list-n1 --up-to 10 --format yaml").exit_code == 2);
    CHECK(run_cli("list-n1 --up-to 10 --sieve-limit 7").exit_code == 2);
}

TEST_CASE("the environment variable sets the default sieve limit") {
    const auto blocked = run_cli("n1 48", "STN_SIEVE_LIMIT=120 ");
    CHECK(blocked.exit_code == 3);  // bound 210 exceeds the env limit

    const auto overridden = run_cli("n1 48 --sieve-limit 300", "STN_SIEVE_LIMIT=120 ");
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.out == "210\n");

    const auto ignored = run_cli("n1 1 --sieve-limit 1000", "STN_SIEVE_LIMIT=junk ");
    CHECK(ignored.exit_code == 0);
    CHECK(ignored.out == "2\n");
}
