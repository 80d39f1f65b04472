#pragma once

// Block-fading Monte Carlo engine.  Every metric is estimated independently
// of the analysis module, which makes this the oracle side of every
// analytic-vs-simulation check.
//
// Determinism: draws are counter-based per (seed, stream, block) and partial
// sums are accumulated per fixed-size chunk, then reduced in chunk order, so
// results are bit-identical for any worker count.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ehfdr/channel.hpp"
#include "ehfdr/optimize.hpp"
#include "ehfdr/relay_control.hpp"

namespace ehfdr::mc {

enum class Metric {
    Outage,
    ErgodicCapacity,
    ThroughputDL,
    ThroughputDT,
    ThroughputInst,
    EE,
    MrcOutage,
    MrcThroughputDL,
    MrcThroughputDT
};

enum class Mode { Instantaneous, DelayLimited, DelayTolerant };

struct AlphaPolicy {
    enum class Kind { Statistical, InstantaneousCsi } kind;
    double alpha = 0.0;  // used by Statistical

    static AlphaPolicy statistical(double a) {
        return {Kind::Statistical, a};
    }
    static AlphaPolicy instantaneous_csi() {
        return {Kind::InstantaneousCsi, 0.0};
    }
};

struct RunSpec {
    SystemParams params;
    double ps = 1.0;
    relay::Scheme scheme = relay::Scheme::Sinr;
    Mode mode = Mode::DelayLimited;
    Metric metric = Metric::Outage;
    long n_blocks = 100000;
    std::uint64_t seed = 1;
    double kappa = 0.0;
    std::optional<double> gamma_hat;
    AlphaPolicy alpha_policy = AlphaPolicy::instantaneous_csi();
    int threads = 0;  // 0: EHFDR_THREADS env var, then hardware concurrency
};

struct MetricEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long n = 0;
    Metric metric = Metric::Outage;
    bool underresolved = false;  // rare event; estimate needs more blocks
};

namespace detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("EHFDR_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

inline void validate(const RunSpec& spec, bool mrc) {
    spec.params.validate();
    if (!(spec.ps > 0.0)) throw std::domain_error("simulate: ps must be positive");
    if (spec.n_blocks < 1) throw std::domain_error("simulate: n_blocks must be >= 1");
    if (spec.kappa < 0.0) throw std::domain_error("simulate: kappa must be >= 0");
    const bool statistical =
        spec.alpha_policy.kind == AlphaPolicy::Kind::Statistical;
    if (spec.scheme == relay::Scheme::Maximum && !statistical)
        throw std::logic_error(
            "simulate: the maximum relay optimizes alpha statistically; "
            "instantaneous-CSI alpha applies to the SINR and target relays");
    if (spec.scheme != relay::Scheme::Maximum && statistical)
        throw std::logic_error(
            "simulate: statistical alpha applies to the maximum relay only");
    if (statistical &&
        (!(spec.alpha_policy.alpha > 0.0) || !(spec.alpha_policy.alpha < 1.0)))
        throw std::domain_error("simulate: statistical alpha must be in (0,1)");
    if (spec.scheme == relay::Scheme::Target && !spec.gamma_hat)
        throw std::logic_error("simulate: target relay requires gamma_hat");
    const bool metric_is_mrc = spec.metric == Metric::MrcOutage ||
                               spec.metric == Metric::MrcThroughputDL ||
                               spec.metric == Metric::MrcThroughputDT;
    if (mrc != metric_is_mrc)
        throw std::logic_error(mrc ? "simulate_mrc: metric is not an MRC metric"
                                   : "simulate: use simulate_mrc for MRC metrics");
}

struct BlockOutcome {
    double alpha = 1.0;
    double esinr = 0.0;     // realized end-to-end SINR on the true channel
    double gamma_sd = 0.0;  // true direct-link SNR
    bool relaying = false;  // false: infeasible or oscillating under CSI error
};

inline BlockOutcome run_block(const RunSpec& spec, std::uint64_t block) {
    const SystemParams& p = spec.params;
    const ChannelSample truth = sample_channels(p, spec.seed, block);
    const LinkSNRs strue = link_snrs(p, truth, spec.ps);
    const ChannelSample est =
        spec.kappa > 0.0 ? perturb_csi(truth, spec.kappa, spec.seed, block)
                         : truth;
    const LinkSNRs sest =
        spec.kappa > 0.0 ? link_snrs(p, est, spec.ps) : strue;

    relay::RelayDecision d;
    switch (spec.scheme) {
        case relay::Scheme::Maximum:
            d = relay::max_relay(sest, est.g0, p, spec.alpha_policy.alpha);
            break;
        case relay::Scheme::Sinr:
            d = relay::sinr_relay(sest, est.g0, p);
            break;
        default:
            d = relay::target_relay(sest, est.g0, p, {*spec.gamma_hat});
            break;
    }

    BlockOutcome out;
    out.gamma_sd = strue.gamma_sd;
    out.alpha = d.alpha;
    if (!d.feasible) return out;
    if (spec.kappa == 0.0) {
        out.esinr = d.esinr;
        out.relaying = true;
        return out;
    }
    // decisions were made on estimated CSI; the channel realizes the truth
    if (!(d.beta * p.ant_gain_relay * truth.g0 < 1.0)) return out;  // oscillates
    out.esinr = relay::esinr(strue, truth.g0, p, d.beta);
    out.relaying = true;
    return out;
}

inline double relay_metric_value(const RunSpec& spec, const BlockOutcome& o) {
    const SystemParams& p = spec.params;
    const bool served = o.relaying && o.esinr >= p.gamma_th;
    switch (spec.metric) {
        case Metric::Outage:
            return served ? 0.0 : 1.0;
        case Metric::ErgodicCapacity:
            return o.relaying ? std::log2(1.0 + o.esinr) : 0.0;
        case Metric::ThroughputDL:
            return served ? (1.0 - o.alpha) * p.rate_bps_hz : 0.0;
        case Metric::ThroughputDT:
        case Metric::ThroughputInst:
            return o.relaying ? (1.0 - o.alpha) * std::log2(1.0 + o.esinr) : 0.0;
        case Metric::EE: {
            double thr;
            switch (spec.mode) {
                case Mode::DelayLimited:
                    thr = served ? (1.0 - o.alpha) * p.rate_bps_hz : 0.0;
                    break;
                default:
                    thr = o.relaying
                              ? (1.0 - o.alpha) * std::log2(1.0 + o.esinr)
                              : 0.0;
                    break;
            }
            return p.bandwidth_hz * thr / spec.ps;
        }
        default:
            throw std::logic_error("relay_metric_value: MRC metric");
    }
}

inline double mrc_metric_value(const RunSpec& spec, const BlockOutcome& o) {
    const SystemParams& p = spec.params;
    const double gmrc = o.gamma_sd + (o.relaying ? o.esinr : 0.0);
    switch (spec.metric) {
        case Metric::MrcOutage:
            return gmrc < p.gamma_th ? 1.0 : 0.0;
        case Metric::MrcThroughputDL: {
            const double c1 = o.gamma_sd > p.gamma_th ? 1.0 : 0.0;
            const double c2 = gmrc > p.gamma_th ? 1.0 : 0.0;
            return c1 * o.alpha * p.rate_bps_hz +
                   c2 * (1.0 - o.alpha) * p.rate_bps_hz;
        }
        case Metric::MrcThroughputDT:
            return o.alpha * std::log2(1.0 + o.gamma_sd) +
                   (1.0 - o.alpha) * std::log2(1.0 + gmrc);
        default:
            throw std::logic_error("mrc_metric_value: relay-only metric");
    }
}

template <class ValueFn>
MetricEstimate accumulate(const RunSpec& spec, ValueFn&& value_of) {
    constexpr long chunk_size = 8192;
    const long n = spec.n_blocks;
    const long n_chunks = (n + chunk_size - 1) / chunk_size;
    struct Acc {
        double sum = 0.0, sumsq = 0.0;
    };
    std::vector<Acc> chunks(static_cast<std::size_t>(n_chunks));
    std::atomic<long> next{0};
    const int workers =
        static_cast<int>(std::min<long>(resolve_threads(spec.threads), n_chunks));
    auto work = [&] {
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const long lo = c * chunk_size;
            const long hi = std::min(n, lo + chunk_size);
            Acc acc;
            for (long b = lo; b < hi; ++b) {
                const double v =
                    value_of(spec, run_block(spec, static_cast<std::uint64_t>(b)));
                acc.sum += v;
                acc.sumsq += v * v;
            }
            chunks[static_cast<std::size_t>(c)] = acc;
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    double sum = 0.0, sumsq = 0.0;
    for (const Acc& a : chunks) {  // fixed reduction order
        sum += a.sum;
        sumsq += a.sumsq;
    }
    MetricEstimate est;
    est.metric = spec.metric;
    est.n = n;
    est.value = sum / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (sumsq - n * est.value * est.value) / (n - 1.0));
        est.stderr_ = std::sqrt(var / static_cast<double>(n));
    }
    if ((spec.metric == Metric::Outage || spec.metric == Metric::MrcOutage) &&
        est.value < 1e-5)
        est.underresolved = true;
    return est;
}

}  // namespace detail

/// Estimate one relay-path metric over n_blocks fading blocks.
inline MetricEstimate simulate(const RunSpec& spec) {
    detail::validate(spec, false);
    return detail::accumulate(spec, [](const RunSpec& s,
                                       const detail::BlockOutcome& o) {
        return detail::relay_metric_value(s, o);
    });
}

/// Estimate one combined direct+relay metric (maximum ratio combining).
inline MetricEstimate simulate_mrc(const RunSpec& spec) {
    detail::validate(spec, true);
    return detail::accumulate(spec, [](const RunSpec& s,
                                       const detail::BlockOutcome& o) {
        return detail::mrc_metric_value(s, o);
    });
}

struct CsiErrorResult {
    double mean_throughput = 0.0;
    double stderr_ = 0.0;
    long n = 0;
};

/// Fixed-channel CSI-error experiment: the true channel stays pinned while
/// estimation errors are redrawn; decisions use the estimate, the realized
/// e-SINR uses the truth.  The maximum relay re-bisects its TS factor on
/// every draw (instantaneous transmission).
inline CsiErrorResult csi_error_run(const SystemParams& p,
                                    const ChannelSample& truth, double ps,
                                    relay::Scheme scheme,
                                    std::optional<double> gamma_hat,
                                    double kappa, long n_draws,
                                    std::uint64_t seed) {
    p.validate();
    if (scheme == relay::Scheme::Target && !gamma_hat)
        throw std::logic_error("csi_error_run: target relay requires gamma_hat");
    const LinkSNRs strue = link_snrs(p, truth, ps);
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n_draws; ++i) {
        const ChannelSample est =
            kappa > 0.0 ? perturb_csi(truth, kappa, seed, static_cast<std::uint64_t>(i))
                        : truth;
        relay::RelayDecision d;
        if (scheme == relay::Scheme::Target) {
            const LinkSNRs sest = link_snrs(p, est, ps);
            d = relay::target_relay(sest, est.g0, p, {*gamma_hat});
        } else {
            d = opt::instantaneous_decision(p, est, ps, scheme);
        }
        double value = 0.0;
        if (d.feasible && d.beta * p.ant_gain_relay * truth.g0 < 1.0) {
            const double realized = relay::esinr(strue, truth.g0, p, d.beta);
            value = (1.0 - d.alpha) * std::log2(1.0 + realized);
        }
        sum += value;
        sumsq += value * value;
    }
    CsiErrorResult r;
    r.n = n_draws;
    r.mean_throughput = sum / static_cast<double>(n_draws);
    if (n_draws > 1) {
        const double var = std::max(
            0.0, (sumsq - n_draws * r.mean_throughput * r.mean_throughput) /
                     (n_draws - 1.0));
        r.stderr_ = std::sqrt(var / static_cast<double>(n_draws));
    }
    return r;
}

}  // namespace ehfdr::mc
