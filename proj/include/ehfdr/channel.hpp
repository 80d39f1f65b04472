#pragma once

// System parameters, unit conversions, link budgets, block-fading channel
// sampling and the CSI-error perturbation model.
//
// Everything downstream of the configuration boundary works in linear units:
// watts, ratios, meters.  dB/dBm/dBi appear only when parsing or printing.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "ehfdr/random.hpp"

namespace ehfdr {

inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double p_w) { return 10.0 * std::log10(p_w) + 30.0; }

/// gamma_th tied to the fixed rate: R = log2(1 + gamma_th).
inline double gamma_th_from_rate(double rate_bps_hz) {
    return std::exp2(rate_bps_hz) - 1.0;
}

struct SystemParams {
    double eta = 0.8;                    // energy conversion efficiency
    double pathloss_ref = 1e-3;          // path loss at the 1 m reference (-30 dB)
    double ant_gain_src = 63.09573444801933;   // 18 dBi
    double ant_gain_relay = 6.309573444801933; // 8 dBi
    double m = 3.0;                      // path loss exponent
    double d1 = 10.0;                    // source-relay distance, reference-normalized
    double d2 = 10.0;                    // relay-destination distance
    double d3 = 20.0;                    // source-destination distance
    double lambda1 = 1.0;                // E{|h1|^2}
    double lambda2 = 1.0;                // E{|h2|^2}
    double lambda3 = 1.0;                // E{|h3|^2}
    double sigma_r2 = 3.1622776601683794e-13;  // relay noise power (-95 dBm)
    double sigma_d2 = 3.1622776601683794e-13;  // destination noise power (-95 dBm)
    double sigma_02 = 0.1;               // mean residual self-interference gain
    double rician_k = 3.9810717055349722;      // RSI K-factor (6 dB)
    double bandwidth_hz = 200e3;
    double rate_bps_hz = 2.0;
    double gamma_th = 3.0;               // = 2^rate - 1 unless overridden
    double block_time = 1.0;

    double l1() const { return ant_gain_src * pathloss_ref; }
    double l2() const { return ant_gain_relay * pathloss_ref; }

    void validate() const {
        if (!(eta > 0.0) || eta > 1.0)
            throw std::invalid_argument("SystemParams: eta must be in (0,1]");
        if (!(m >= 2.0))
            throw std::invalid_argument("SystemParams: path loss exponent must be >= 2");
        if (!(d1 > 0.0) || !(d2 > 0.0) || !(d3 > 0.0))
            throw std::invalid_argument("SystemParams: distances must be positive");
        if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !(lambda3 > 0.0))
            throw std::invalid_argument("SystemParams: channel gains must be positive");
        if (!(sigma_r2 > 0.0) || !(sigma_d2 > 0.0) || !(sigma_02 > 0.0))
            throw std::invalid_argument("SystemParams: variances must be positive");
        if (!(rician_k > 0.0))
            throw std::invalid_argument("SystemParams: Rician K must be positive");
        if (!(pathloss_ref > 0.0) || !(ant_gain_src > 0.0) || !(ant_gain_relay > 0.0))
            throw std::invalid_argument("SystemParams: gains must be positive");
        if (!(gamma_th >= 0.0) || !(bandwidth_hz > 0.0) || !(rate_bps_hz > 0.0))
            throw std::invalid_argument("SystemParams: rate parameters must be positive");
    }
};

/// One block's channel coefficients and cached squared magnitudes.
/// h0: residual self-interference (Rician); h1, h2, h3: Rayleigh links.
struct ChannelSample {
    std::complex<double> h0, h1, h2, h3;
    double g0 = 0.0, g1 = 0.0, g2 = 0.0, g3 = 0.0;

    void cache_magnitudes() {
        g0 = std::norm(h0);
        g1 = std::norm(h1);
        g2 = std::norm(h2);
        g3 = std::norm(h3);
    }
};

struct LinkSNRs {
    double gamma_sr = 0.0;  // first hop
    double gamma_rd = 0.0;  // second hop (relay power factored out)
    double gamma_sd = 0.0;  // direct link
};

// Stream ids within a seed; CSI-error streams are offset by 4.
enum : std::uint64_t {
    stream_h0 = 0,
    stream_h1 = 1,
    stream_h2 = 2,
    stream_h3 = 3,
    stream_err_offset = 4
};

/// Draw one block's channels.  Each (seed, block) pair maps to fixed
/// counters, so the sample is independent of evaluation order.
inline ChannelSample sample_channels(const SystemParams& p, std::uint64_t seed,
                                     std::uint64_t block) {
    ChannelSample ch;
    const std::uint64_t c = 4 * block;
    ch.h1 = num::CounterStream(seed, stream_h1).complex_gaussian(c, p.lambda1);
    ch.h2 = num::CounterStream(seed, stream_h2).complex_gaussian(c, p.lambda2);
    ch.h3 = num::CounterStream(seed, stream_h3).complex_gaussian(c, p.lambda3);
    const num::CounterStream s0(seed, stream_h0);
    const double k = p.rician_k;
    const double specular = std::sqrt(k * p.sigma_02 / (k + 1.0));
    const double theta = 2.0 * M_PI * s0.uniform(c + 2);
    ch.h0 = std::polar(specular, theta) +
            s0.complex_gaussian(c, p.sigma_02 / (k + 1.0));
    ch.cache_magnitudes();
    return ch;
}

/// Per-hop SNRs for source power ps.
///   gamma_SR = L1 ps g1 / (d1^m sr2)
///   gamma_RD = L1 L2 ps g1 g2 / (d1^m d2^m sd2)
///   gamma_SD = L1 ps g3 / (d3^m sd2)
inline LinkSNRs link_snrs(const SystemParams& p, const ChannelSample& ch, double ps) {
    if (!(ps > 0.0)) throw std::domain_error("link_snrs: ps must be positive");
    LinkSNRs s;
    const double d1m = std::pow(p.d1, p.m);
    const double d2m = std::pow(p.d2, p.m);
    const double d3m = std::pow(p.d3, p.m);
    s.gamma_sr = p.l1() * ps * ch.g1 / (d1m * p.sigma_r2);
    s.gamma_rd = p.l1() * p.l2() * ps * ch.g1 * ch.g2 / (d1m * d2m * p.sigma_d2);
    s.gamma_sd = p.l1() * ps * ch.g3 / (d3m * p.sigma_d2);
    return s;
}

inline double mu_from_alpha(double alpha, double eta) {
    return alpha * eta / (1.0 - alpha);
}

/// Energy harvested at the relay over the first phase of one block.
inline double harvested_energy(const SystemParams& p, const ChannelSample& ch,
                               double ps, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("harvested_energy: alpha must be in (0,1)");
    return p.eta * p.l1() * std::pow(p.d1, -p.m) * ps * ch.g1 * alpha * p.block_time;
}

/// Maximum relay transmission power P_E = mu L1 d1^-m ps g1.
inline double max_relay_power(const SystemParams& p, const ChannelSample& ch,
                              double ps, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("max_relay_power: alpha must be in (0,1)");
    return mu_from_alpha(alpha, p.eta) * p.l1() * std::pow(p.d1, -p.m) * ps * ch.g1;
}

/// CSI estimation error: h~_i = h_i + e_i with e_i ~ CN(0, kappa |h_i|^2),
/// independent of h_i.  kappa = 0 returns the input bit-exactly.
inline ChannelSample perturb_csi(const ChannelSample& ch, double kappa,
                                 std::uint64_t seed, std::uint64_t block) {
    if (kappa < 0.0) throw std::domain_error("perturb_csi: kappa must be >= 0");
    if (kappa == 0.0) return ch;
    ChannelSample out = ch;
    const std::uint64_t c = 4 * block;
    out.h0 += num::CounterStream(seed, stream_err_offset + stream_h0)
                  .complex_gaussian(c, kappa * ch.g0);
    out.h1 += num::CounterStream(seed, stream_err_offset + stream_h1)
                  .complex_gaussian(c, kappa * ch.g1);
    out.h2 += num::CounterStream(seed, stream_err_offset + stream_h2)
                  .complex_gaussian(c, kappa * ch.g2);
    out.h3 += num::CounterStream(seed, stream_err_offset + stream_h3)
                  .complex_gaussian(c, kappa * ch.g3);
    out.cache_magnitudes();
    return out;
}

}  // namespace ehfdr
