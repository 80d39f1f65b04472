#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ehfdr/validation.hpp"

// Acceptance gate: runs every validation criterion at full scale and prints
// one pass/fail line per criterion.  Criterion 6a is a known red: the
// literal concavity bound cannot hold for the e-SINR's convex tail, and
// criterion 10's window clause sits below the published drop because the
// stated error model carries half the error power the published figures
// imply; both carry their analysis in the printed detail.

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const ehfdr::validation::Report& full_report() {
    static const ehfdr::validation::Report rep = [] {
        ehfdr::validation::Options o;
        o.n_blocks = 100000;
        o.seed = 1;
        auto r = ehfdr::validation::run_acceptance(o);
        for (const auto& c : r.criteria)
            std::printf("[%s] %-4s %s -- %s\n", c.pass ? "PASS" : "FAIL",
                        c.id.c_str(), c.description.c_str(), c.detail.c_str());
        std::fflush(stdout);
        return r;
    }();
    return rep;
}

const ehfdr::validation::CriterionResult& criterion(const std::string& id) {
    for (const auto& c : full_report().criteria)
        if (c.id == id) return c;
    static ehfdr::validation::CriterionResult missing;
    REQUIRE(false);
    return missing;
}

}  // namespace

TEST_CASE("criterion 1: first-hop SNR reference point") {
    CHECK(criterion("1").pass);
}

TEST_CASE("criterion 2: outage analytic vs Monte Carlo") {
    CHECK(criterion("2").pass);
}

TEST_CASE("criterion 3: ergodic capacity analytic vs Monte Carlo") {
    CHECK(criterion("3").pass);
}

TEST_CASE("criterion 4: high-SNR outage convergence") {
    CHECK(criterion("4").pass);
}

TEST_CASE("criterion 5: scheme dominance") {
    CHECK(criterion("5").pass);
}

TEST_CASE("criterion 6a: verbatim concavity bound") {
    // Implemented exactly as stated; fails for a structural reason recorded
    // in the printed detail (convex tail of gamma_max past its peak).
    CHECK(criterion("6a").pass);
}

TEST_CASE("criterion 6bc: bisection against grid search") {
    CHECK(criterion("6bc").pass);
}

TEST_CASE("criterion 7: Dinkelbach behaviour") {
    CHECK(criterion("7").pass);
}

TEST_CASE("criterion 8: combined-path outage bound") {
    CHECK(criterion("8").pass);
}

TEST_CASE("criterion 9: relay placement trend") {
    CHECK(criterion("9").pass);
}

TEST_CASE("criterion 10: CSI-error throughput degradation") {
    // The SINR >= maximum ordering clause holds; the [0.1, 0.4] window sits
    // 2.5% above the maximum relay's drop under the stated error model (the
    // published figures imply doubled error power; see the printed detail).
    CHECK(criterion("10").pass);
}

TEST_CASE("criterion 11: determinism across worker counts") {
    CHECK(criterion("11").pass);

    // End-to-end form: a `validate --quick` CSV is byte-identical for
    // different EHFDR_THREADS values.
    const std::string base = std::string(EHFDR_CLI_PATH) +
                             " validate --quick --n-blocks 8000 --seed 11";
    const int rc1 = std::system(
        (std::string("EHFDR_THREADS=1 ") + base +
         " --out acc_v1.csv --manifest acc_v1.json > /dev/null 2>&1")
            .c_str());
    const int rc2 = std::system(
        (std::string("EHFDR_THREADS=3 ") + base +
         " --out acc_v3.csv --manifest acc_v3.json > /dev/null 2>&1")
            .c_str());
    // exit status reflects the two known-red criteria; the CSVs must match
    CHECK(WEXITSTATUS(rc1) == WEXITSTATUS(rc2));
    CHECK(slurp("acc_v1.csv") == slurp("acc_v3.csv"));
}
