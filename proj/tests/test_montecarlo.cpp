#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ehfdr/analysis.hpp"
#include "ehfdr/montecarlo.hpp"

using namespace ehfdr;
using mc::AlphaPolicy;
using mc::Metric;
using mc::MetricEstimate;
using mc::RunSpec;

namespace {

RunSpec base_spec() {
    RunSpec s;
    s.params = SystemParams{};
    s.ps = dbm_to_watts(20.0);
    s.scheme = relay::Scheme::Sinr;
    s.metric = Metric::Outage;
    s.alpha_policy = AlphaPolicy::instantaneous_csi();
    s.n_blocks = 20000;
    s.seed = 5;
    return s;
}

}  // namespace

TEST_CASE("zero threshold means zero outage, exactly") {
    RunSpec s = base_spec();
    s.params.gamma_th = 0.0;
    const auto r = mc::simulate(s);
    CHECK(r.value == 0.0);
    CHECK(r.n == s.n_blocks);
}

TEST_CASE("fixed seed is bit-reproducible and thread-count invariant") {
    RunSpec s = base_spec();
    s.metric = Metric::ThroughputDT;
    s.threads = 1;
    const auto a = mc::simulate(s);
    const auto b = mc::simulate(s);
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);
    s.threads = 7;
    const auto c = mc::simulate(s);
    CHECK(a.value == c.value);
    CHECK(a.stderr_ == c.stderr_);
}

TEST_CASE("SINR relay outage near 0.8 at 10 dBm") {
    RunSpec s = base_spec();
    s.ps = dbm_to_watts(10.0);
    const auto r = mc::simulate(s);
    CHECK(r.value == doctest::Approx(0.8).epsilon(0.05));
}

TEST_CASE("standard error shrinks like sqrt(2) when blocks double") {
    RunSpec s = base_spec();
    s.metric = Metric::ThroughputDT;
    s.n_blocks = 30000;
    const auto half = mc::simulate(s);
    s.n_blocks = 60000;
    const auto full = mc::simulate(s);
    const double ratio = half.stderr_ / full.stderr_;
    CHECK(ratio > std::sqrt(2.0) * 0.9);
    CHECK(ratio < std::sqrt(2.0) * 1.1);
}

TEST_CASE("scheme/alpha-policy contract violations are rejected") {
    RunSpec s = base_spec();
    s.scheme = relay::Scheme::Maximum;
    s.alpha_policy = AlphaPolicy::instantaneous_csi();
    CHECK_THROWS_AS(mc::simulate(s), std::logic_error);
    s.scheme = relay::Scheme::Sinr;
    s.alpha_policy = AlphaPolicy::statistical(0.3);
    CHECK_THROWS_AS(mc::simulate(s), std::logic_error);
    s = base_spec();
    s.scheme = relay::Scheme::Target;
    s.gamma_hat.reset();
    CHECK_THROWS_AS(mc::simulate(s), std::logic_error);
    s = base_spec();
    s.metric = Metric::MrcOutage;
    CHECK_THROWS_AS(mc::simulate(s), std::logic_error);
    s.metric = Metric::Outage;
    CHECK_THROWS_AS(mc::simulate_mrc(s), std::logic_error);
    s = base_spec();
    s.scheme = relay::Scheme::Maximum;
    s.alpha_policy = AlphaPolicy::statistical(1.2);
    CHECK_THROWS_AS(mc::simulate(s), std::domain_error);
}

TEST_CASE("unreachable target counts as outage and earns nothing") {
    RunSpec s = base_spec();
    s.scheme = relay::Scheme::Target;
    s.gamma_hat = 1e15;  // far above any realized first-hop SNR
    s.n_blocks = 5000;
    const auto out = mc::simulate(s);
    CHECK(out.value == 1.0);
    s.metric = Metric::ThroughputDL;
    CHECK(mc::simulate(s).value == 0.0);
    s.metric = Metric::EE;
    s.mode = mc::Mode::DelayLimited;
    CHECK(mc::simulate(s).value == 0.0);
}

TEST_CASE("throughput metrics are consistent with their definitions") {
    RunSpec s = base_spec();
    s.n_blocks = 20000;
    s.metric = Metric::ThroughputDL;
    const auto dl = mc::simulate(s);
    s.metric = Metric::Outage;
    const auto out = mc::simulate(s);
    // DL throughput <= (1 - P_out) * R since (1-alpha) <= 1
    CHECK(dl.value <= (1.0 - out.value) * s.params.rate_bps_hz + 1e-12);
    s.metric = Metric::EE;
    s.mode = mc::Mode::DelayLimited;
    const auto ee = mc::simulate(s);
    CHECK(ee.value == doctest::Approx(dl.value * s.params.bandwidth_hz / s.ps)
                          .epsilon(1e-12));
}

TEST_CASE("dead direct link reduces MRC to the relay path") {
    RunSpec s = base_spec();
    s.params.lambda3 = 1e-12;
    s.metric = Metric::MrcOutage;
    const auto mrc = mc::simulate_mrc(s);
    s.metric = Metric::Outage;
    const auto relay_only = mc::simulate(s);
    CHECK(std::abs(mrc.value - relay_only.value) <=
          3.0 * (mrc.stderr_ + relay_only.stderr_) + 1e-9);
}

TEST_CASE("MRC outage respects the product upper bound") {
    RunSpec s = base_spec();
    s.ps = dbm_to_watts(0.0);
    s.metric = Metric::MrcOutage;
    s.n_blocks = 100000;
    const auto mrc = mc::simulate_mrc(s);
    const double p_sd = analysis::direct_link(s.params, s.ps).outage;
    const double p_srd = analysis::outage_sinr(s.params, s.ps).value;
    CHECK(mrc.value <= analysis::mrc_outage_upper_bound(p_sd, p_srd) +
                           3.0 * mrc.stderr_);
}

TEST_CASE("rare events are flagged as underresolved") {
    RunSpec s = base_spec();
    s.ps = dbm_to_watts(20.0);
    s.metric = Metric::MrcOutage;
    s.n_blocks = 20000;  // expect zero events at this power
    const auto r = mc::simulate_mrc(s);
    CHECK(r.underresolved);
    CHECK(r.value < 1e-5);
}

TEST_CASE("SINR relay capacity dominates the bisected maximum relay") {
    RunSpec s = base_spec();
    s.ps = dbm_to_watts(25.0);
    s.metric = Metric::ErgodicCapacity;
    s.n_blocks = 30000;
    const auto sinr = mc::simulate(s);
    const double alpha = analysis::optimal_alpha_dt(s.params, s.ps);
    s.scheme = relay::Scheme::Maximum;
    s.alpha_policy = AlphaPolicy::statistical(alpha);
    const auto maxi = mc::simulate(s);
    CHECK(sinr.value >= maxi.value - 2.0 * (sinr.stderr_ + maxi.stderr_));
}

TEST_CASE("combined-path delay-limited throughput sits above its lower bound") {
    RunSpec s = base_spec();
    s.scheme = relay::Scheme::Maximum;
    s.metric = Metric::MrcThroughputDL;
    s.n_blocks = 30000;
    for (double dbm : {0.0, 10.0, 20.0}) {
        s.ps = dbm_to_watts(dbm);
        const double alpha = analysis::optimal_alpha_dl(s.params, s.ps);
        s.alpha_policy = AlphaPolicy::statistical(alpha);
        const auto m = mc::simulate_mrc(s);
        const double p_sd = analysis::direct_link(s.params, s.ps).outage;
        const double p_srd = analysis::outage_max(s.params, s.ps, alpha).value;
        const double lb = analysis::mrc_dl_throughput_lower_bound(
            alpha, p_sd, p_srd, s.params.rate_bps_hz);
        CHECK(m.value >= lb - 3.0 * m.stderr_);
    }
}

TEST_CASE("delay-limited EE rises then falls across the power sweep") {
    RunSpec s = base_spec();
    s.metric = Metric::EE;
    s.mode = mc::Mode::DelayLimited;
    s.n_blocks = 30000;
    double ee[3];
    int i = 0;
    for (double dbm : {0.0, 10.0, 30.0}) {
        s.ps = dbm_to_watts(dbm);
        ee[i++] = mc::simulate(s).value;
    }
    CHECK(ee[1] > ee[0]);
    CHECK(ee[1] > ee[2]);
}

TEST_CASE("CSI error degrades fixed-channel throughput") {
    SystemParams p;
    ChannelSample frame;
    frame.h0 = std::sqrt(0.342);
    frame.h1 = std::sqrt(1.898);
    frame.h2 = std::sqrt(0.986);
    frame.cache_magnitudes();
    const double ps = dbm_to_watts(30.0);
    for (relay::Scheme sch :
         {relay::Scheme::Maximum, relay::Scheme::Sinr, relay::Scheme::Target}) {
        CAPTURE(static_cast<int>(sch));
        const auto clean = mc::csi_error_run(p, frame, ps, sch,
                                             db_to_linear(12.0), 0.0, 200, 3);
        const auto noisy = mc::csi_error_run(p, frame, ps, sch,
                                             db_to_linear(12.0), 0.1, 4000, 3);
        CHECK(clean.stderr_ < 1e-6 * clean.mean_throughput);
        CHECK(noisy.mean_throughput < clean.mean_throughput);
        CHECK(noisy.mean_throughput > 0.0);
    }
}

TEST_CASE("fading-averaged CSI error keeps estimates sane") {
    RunSpec s = base_spec();
    s.kappa = 0.1;
    s.metric = Metric::ThroughputDT;
    const auto noisy = mc::simulate(s);
    s.kappa = 0.0;
    const auto clean = mc::simulate(s);
    CHECK(noisy.value > 0.0);
    CHECK(noisy.value < clean.value);
}
