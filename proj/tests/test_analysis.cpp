#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ehfdr/analysis.hpp"
#include "ehfdr/montecarlo.hpp"

using namespace ehfdr;
using analysis::AnalyticResult;
using analysis::Method;

TEST_CASE("outage vanishes with the threshold") {
    SystemParams p;
    p.gamma_th = 0.0;
    CHECK(analysis::outage_max(p, 1.0, 0.3).value == 0.0);
    CHECK(analysis::outage_sinr(p, 1.0).value < 1e-6);
    CHECK(analysis::outage_target(p, 1.0, 10.0).value == 0.0);
    p.gamma_th = 1e-9;
    CHECK(analysis::outage_sinr(p, 1.0).value < 1e-4);
}

TEST_CASE("maximum relay: exact and high-SNR outage converge at high power") {
    SystemParams p;
    const double a50 = std::abs(analysis::outage_max(p, dbm_to_watts(50.0), 0.2, true).value -
                                analysis::outage_max(p, dbm_to_watts(50.0), 0.2, false).value);
    const double a30 = std::abs(analysis::outage_max(p, dbm_to_watts(30.0), 0.2, true).value -
                                analysis::outage_max(p, dbm_to_watts(30.0), 0.2, false).value);
    CHECK(a50 <= 1e-2);
    CHECK(a30 <= 5e-2);
    CHECK(analysis::outage_max(p, dbm_to_watts(50.0), 0.2, false).method ==
          Method::HighSnrApprox);
}

TEST_CASE("maximum relay outage tracks Monte Carlo") {
    SystemParams p;
    const double ps = dbm_to_watts(25.0);
    const auto a = analysis::outage_max(p, ps, 0.25);
    mc::RunSpec spec;
    spec.params = p;
    spec.ps = ps;
    spec.scheme = relay::Scheme::Maximum;
    spec.metric = mc::Metric::Outage;
    spec.alpha_policy = mc::AlphaPolicy::statistical(0.25);
    spec.n_blocks = 40000;
    spec.seed = 101;
    const auto m = mc::simulate(spec);
    CHECK(std::abs(a.value - m.value) <= std::max(3.0 * m.stderr_, 5e-3));
}

TEST_CASE("maximum relay capacity: quadrature, series and Monte Carlo agree") {
    SystemParams p;
    p.sigma_02 = 0.4;
    const double ps = dbm_to_watts(30.0);
    const double alpha = 0.3;
    const auto quad = analysis::ergodic_capacity_max(p, ps, alpha);
    const auto ser = analysis::ergodic_capacity_max_series(p, ps, alpha);
    CHECK(ser.method == Method::Series);
    CHECK(std::abs(quad.value - ser.value) / quad.value < 0.01);

    mc::RunSpec spec;
    spec.params = p;
    spec.ps = ps;
    spec.scheme = relay::Scheme::Maximum;
    spec.metric = mc::Metric::ErgodicCapacity;
    spec.alpha_policy = mc::AlphaPolicy::statistical(alpha);
    spec.n_blocks = 50000;
    spec.seed = 7;
    const auto m = mc::simulate(spec);
    CHECK(std::abs(quad.value - m.value) / m.value < 0.02);
    // vanishing power
    CHECK(analysis::ergodic_capacity_max(p, 1e-12, alpha).value < 1e-3);
}

TEST_CASE("SINR relay outage: anchor point and monotonicity") {
    SystemParams p;  // sigma02 = 0.1
    const auto anchor = analysis::outage_sinr(p, dbm_to_watts(10.0));
    CHECK(anchor.value == doctest::Approx(0.8).epsilon(0.05));
    double prev = 1.0;
    for (double dbm = 10.0; dbm <= 50.0; dbm += 10.0) {
        const double v = analysis::outage_sinr(p, dbm_to_watts(dbm)).value;
        CHECK(v <= prev);
        prev = v;
    }
    // non-decreasing in the mean RSI gain
    double prev_s = 0.0;
    for (double s02 : {0.01, 0.03, 0.1, 0.3, 1.0}) {
        SystemParams q;
        q.sigma_02 = s02;
        const double v = analysis::outage_sinr(q, dbm_to_watts(30.0)).value;
        CHECK(v >= prev_s);
        prev_s = v;
    }
    // non-decreasing in the threshold
    SystemParams q;
    q.gamma_th = 1.0;
    const double low = analysis::outage_sinr(q, dbm_to_watts(30.0)).value;
    q.gamma_th = 10.0;
    CHECK(analysis::outage_sinr(q, dbm_to_watts(30.0)).value >= low);
}

TEST_CASE("SINR relay capacity tracks Monte Carlo and decays with RSI") {
    SystemParams p;
    p.sigma_02 = 0.4;
    const double ps = dbm_to_watts(20.0);
    const auto a = analysis::ergodic_capacity_sinr(p, ps);
    CHECK(a.method == Method::HighSnrApprox);
    mc::RunSpec spec;
    spec.params = p;
    spec.ps = ps;
    spec.scheme = relay::Scheme::Sinr;
    spec.metric = mc::Metric::ErgodicCapacity;
    spec.alpha_policy = mc::AlphaPolicy::instantaneous_csi();
    spec.n_blocks = 50000;
    spec.seed = 13;
    const auto m = mc::simulate(spec);
    CHECK(std::abs(a.value - m.value) / m.value < 0.03);

    double prev = std::numeric_limits<double>::infinity();
    for (double s02 : {0.05, 0.1, 0.2, 0.3, 0.4, 0.55, 0.7, 1.0}) {
        SystemParams q;
        q.sigma_02 = s02;
        const double v = analysis::ergodic_capacity_sinr(q, ps).value;
        CHECK(v <= prev * (1.0 + 1e-9));
        prev = v;
    }
}

TEST_CASE("outage is monotone in power and threshold for all schemes") {
    SystemParams p;
    const double gh = db_to_linear(9.0);
    double prev_max = 1.0, prev_tar = 1.0;
    for (double dbm : {15.0, 25.0, 35.0, 45.0}) {
        const double ps = dbm_to_watts(dbm);
        const double vmax = analysis::outage_max(p, ps, 0.2).value;
        const double vtar = analysis::outage_target(p, ps, gh).value;
        CHECK(vmax <= prev_max);
        CHECK(vtar <= prev_tar);
        prev_max = vmax;
        prev_tar = vtar;
    }
    const double ps = dbm_to_watts(25.0);
    double lo_max = 0.0, lo_tar = 0.0, lo_sinr = 0.0;
    for (double gth_db : {2.0, 5.0, 8.0}) {
        SystemParams q;
        q.gamma_th = db_to_linear(gth_db);
        const double vmax = analysis::outage_max(q, ps, 0.2).value;
        const double vtar = analysis::outage_target(q, ps, db_to_linear(12.0)).value;
        const double vsinr = analysis::outage_sinr(q, ps).value;
        CHECK(vmax >= lo_max);
        CHECK(vtar >= lo_tar);
        CHECK(vsinr >= lo_sinr);
        lo_max = vmax;
        lo_tar = vtar;
        lo_sinr = vsinr;
    }
}

TEST_CASE("target relay outage edge cases") {
    SystemParams p;
    // gamma_hat + 2 gamma_hat gamma_th - gamma_th^2 <= 0: outage certain
    const auto certain = analysis::outage_target(p, 1.0, 1.0);  // 1+6-9 < 0
    CHECK(certain.value == 1.0);
    CHECK(certain.method == Method::ClosedForm);
    // vanishing power with a fixed target: harvesting becomes infeasible
    const auto starved = analysis::outage_target(p, 1e-9, 10.0);
    CHECK(starved.value > 0.999);
    // matches Monte Carlo at a mid-power point
    const double ps = dbm_to_watts(25.0);
    const double gh = db_to_linear(7.5);
    const auto a = analysis::outage_target(p, ps, gh);
    mc::RunSpec spec;
    spec.params = p;
    spec.ps = ps;
    spec.scheme = relay::Scheme::Target;
    spec.metric = mc::Metric::Outage;
    spec.gamma_hat = gh;
    spec.n_blocks = 40000;
    spec.seed = 23;
    const auto m = mc::simulate(spec);
    CHECK(std::abs(a.value - m.value) <= std::max(3.0 * m.stderr_, 5e-3));
}

TEST_CASE("direct link closed forms") {
    SystemParams p;
    p.gamma_th = 1e-12;
    CHECK(analysis::direct_link(p, 1.0).outage < 1e-9);
    p = SystemParams{};
    // logarithmic growth: stepping power by 10x adds log2(10) at high SNR
    const double c1 = analysis::direct_link(p, 1e3).capacity;
    const double c2 = analysis::direct_link(p, 1e4).capacity;
    CHECK(std::abs((c2 - c1) - std::log2(10.0)) / std::log2(10.0) < 0.05);
    // pinned reference point: 20 dBm, rate 2, 20 m
    const double pout = analysis::direct_link(p, dbm_to_watts(20.0)).outage;
    CHECK(pout == doctest::Approx(1.2e-6).epsilon(0.2));
}

TEST_CASE("MRC outage product bound") {
    CHECK(analysis::mrc_outage_upper_bound(0.0, 0.7) == 0.0);
    CHECK(analysis::mrc_outage_upper_bound(0.3, 0.0) == 0.0);
    CHECK(analysis::mrc_outage_upper_bound(0.25, 1.0) == 0.25);
    CHECK_THROWS_AS(analysis::mrc_outage_upper_bound(-0.1, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(analysis::mrc_outage_upper_bound(0.1, 1.5),
                    std::domain_error);
}

TEST_CASE("throughput expressions and contracts") {
    SystemParams p;
    CHECK(analysis::statistical_dl_throughput(relay::Scheme::Maximum, 0.5, 1.0,
                                              2.0) == 0.0);
    CHECK(analysis::statistical_dl_throughput(relay::Scheme::Maximum, 0.5, 0.0,
                                              2.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(analysis::statistical_dl_throughput(relay::Scheme::Sinr,
                                                        0.5, 0.0, 2.0),
                    std::logic_error);
    CHECK_THROWS_AS(analysis::statistical_dt_throughput(relay::Scheme::Target,
                                                        0.5, 1.0),
                    std::logic_error);
    const double lb =
        analysis::mrc_dl_throughput_lower_bound(0.25, 0.1, 1.0, 2.0);
    CHECK(lb == doctest::Approx(0.25 * 0.9 * 2.0 + 0.75 * 0.9 * 2.0).epsilon(1e-12));
    CHECK(analysis::energy_efficiency(1.0, p, 1.0) ==
          doctest::Approx(2e5).epsilon(1e-12));
    CHECK(analysis::energy_efficiency(0.0, p, 0.5) == 0.0);
}

TEST_CASE("probability outputs stay in range with tiny pre-clamp drift") {
    SystemParams p;
    for (double dbm : {0.0, 15.0, 35.0, 50.0}) {
        const double ps = dbm_to_watts(dbm);
        for (const AnalyticResult& r :
             {analysis::outage_sinr(p, ps),
              analysis::outage_target(p, ps, db_to_linear(0.3 * dbm + 0.1)),
              analysis::outage_max(p, ps, 0.2)}) {
            CHECK(r.value >= 0.0);
            CHECK(r.value <= 1.0);
            CHECK(std::abs(r.value - r.pre_clamp) <= 1e-6);
        }
    }
}
