#pragma once

// Per-block relay gain / time-switching factor / e-SINR computation for the
// three relay control schemes, plus the maximum-ratio combiner.
//
// Conventions: S = gamma_SR, D = gamma_RD (relay power factored out),
// A = relay antenna gain times |h0|^2.  The relay gain must satisfy the
// non-oscillation bound beta < 1/A.

#include <cmath>
#include <stdexcept>

#include "ehfdr/channel.hpp"

namespace ehfdr::relay {

enum class Scheme { Maximum, Sinr, Target };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Maximum: return "maximum";
        case Scheme::Sinr: return "sinr";
        default: return "target";
    }
}

struct RelayDecision {
    Scheme scheme = Scheme::Maximum;
    double alpha = 0.0;   // time-switching factor
    double mu = 0.0;      // alpha*eta/(1-alpha)
    double beta = 0.0;    // relay gain
    double esinr = 0.0;   // end-to-end SINR at the destination
    bool feasible = true; // false only for the target relay when gamma_hat >= gamma_SR
};

struct TargetConfig {
    double gamma_hat;  // target e-SINR, linear
};

/// End-to-end SINR for relay gain beta (independent of the harvesting split):
///   S D / ( S/beta + D + (S+1) D A / (1/beta - A) )
inline double esinr(const LinkSNRs& s, double g0, const SystemParams& p,
                    double beta) {
    const double a = p.ant_gain_relay * g0;
    if (!(beta > 0.0) || !(beta * a < 1.0))
        throw std::domain_error("esinr: relay gain violates the non-oscillation bound");
    const double S = s.gamma_sr, D = s.gamma_rd;
    return S * D / (S / beta + D + (S + 1.0) * D * a / (1.0 / beta - a));
}

/// Relay transmission power for gain beta:
///   beta (L1 d1^-m ps g1 + sr2) / (1 - A beta)
inline double relay_tx_power(const SystemParams& p, const ChannelSample& ch,
                             double ps, double beta) {
    const double a = p.ant_gain_relay * ch.g0;
    if (!(beta > 0.0) || !(beta * a < 1.0))
        throw std::domain_error("relay_tx_power: relay gain violates the non-oscillation bound");
    const double pin = p.l1() * std::pow(p.d1, -p.m) * ps * ch.g1 + p.sigma_r2;
    return beta * pin / (1.0 - a * beta);
}

/// Maximum relay: spend the full harvested power.
///   beta_max = mu S / (1 + S + mu S A)
///   gamma_max = mu S D / (S + (mu S A + 1)(mu D + 1))
inline RelayDecision max_relay(const LinkSNRs& s, double g0,
                               const SystemParams& p, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("max_relay: alpha must be in (0,1)");
    const double mu = mu_from_alpha(alpha, p.eta);
    const double S = s.gamma_sr, D = s.gamma_rd;
    const double a = p.ant_gain_relay * g0;
    RelayDecision d;
    d.scheme = Scheme::Maximum;
    d.alpha = alpha;
    d.mu = mu;
    d.beta = mu * S / (1.0 + S + mu * S * a);
    d.esinr = mu * S * D / (S + (mu * S * a + 1.0) * (mu * D + 1.0));
    d.feasible = true;
    return d;
}

/// SINR relay: gain at the single interior maximum of the e-SINR, with the
/// smallest time-switching factor that harvests just enough energy for it.
///   beta_sinr  = S / (S A + sqrt(S (S+1) D A))
///   gamma_sinr = S D / (S A + D + 2 sqrt(S (S+1) D A))
///   alpha_sinr = sqrt(S+1) / (sqrt(S+1) + eta sqrt(S D A))
inline RelayDecision sinr_relay(const LinkSNRs& s, double g0,
                                const SystemParams& p) {
    const double S = s.gamma_sr, D = s.gamma_rd;
    const double a = p.ant_gain_relay * g0;
    if (!(S > 0.0) || !(D > 0.0) || !(g0 > 0.0))
        throw std::domain_error("sinr_relay: degenerate channel (zero SNR or RSI)");
    const double root = std::sqrt(S * (S + 1.0) * D * a);
    RelayDecision d;
    d.scheme = Scheme::Sinr;
    d.beta = S / (S * a + root);
    d.esinr = S * D / (S * a + D + 2.0 * root);
    const double sq = std::sqrt(S + 1.0);
    d.alpha = sq / (sq + p.eta * std::sqrt(S * D * a));
    d.mu = mu_from_alpha(d.alpha, p.eta);
    d.feasible = true;
    return d;
}

/// Target relay: achieve a preset e-SINR from first-hop and RSI knowledge
/// only.  Infeasible when gamma_hat >= gamma_SR (relaying fails; the whole
/// block is spent harvesting).  The achieved e-SINR is evaluated from the
/// realized second hop, so it equals gamma_hat only when the channel matches
/// the one implied by the design equations.
inline RelayDecision target_relay(const LinkSNRs& s, double g0,
                                  const SystemParams& p,
                                  const TargetConfig& cfg) {
    if (!(cfg.gamma_hat > 0.0))
        throw std::domain_error("target_relay: gamma_hat must be positive");
    const double S = s.gamma_sr, D = s.gamma_rd;
    const double gh = cfg.gamma_hat;
    RelayDecision d;
    d.scheme = Scheme::Target;
    if (gh >= S) {
        d.alpha = 1.0;
        d.mu = 0.0;
        d.beta = 0.0;
        d.esinr = 0.0;
        d.feasible = false;
        return d;
    }
    const double a = p.ant_gain_relay * g0;
    // mu_tar = (S+1)(S-gh) / ( S A (gh (S+1) + sqrt(gh (gh+1) S (S+1))) )
    const double mu = (S + 1.0) * (S - gh) /
                      (S * a * (gh * (S + 1.0) +
                                std::sqrt(gh * (gh + 1.0) * S * (S + 1.0))));
    d.mu = mu;
    d.alpha = mu / (p.eta + mu);
    d.beta = mu * S / (1.0 + S + mu * S * a);
    d.esinr = mu * S * D / (S + (mu * S * a + 1.0) * (mu * D + 1.0));
    d.feasible = true;
    return d;
}

/// gamma_MRC = gamma_SD + gamma_SRD
inline double mrc_esinr(double gamma_sd, double relay_esinr) {
    if (gamma_sd < 0.0 || relay_esinr < 0.0)
        throw std::domain_error("mrc_esinr: SINRs must be non-negative");
    return gamma_sd + relay_esinr;
}

/// Instantaneous throughput (1-alpha) log2(1+gamma); 0 for an infeasible
/// decision (no relaying happens).
inline double instantaneous_throughput(const RelayDecision& d) {
    if (!d.feasible) return 0.0;
    return (1.0 - d.alpha) * std::log2(1.0 + d.esinr);
}

/// Direct-link-assisted variant: the destination decodes the direct signal
/// during harvesting and the combined signal during relaying.
inline double instantaneous_throughput_mrc(const RelayDecision& d,
                                           double gamma_sd) {
    if (!d.feasible) return std::log2(1.0 + gamma_sd);
    const double gmrc = mrc_esinr(gamma_sd, d.esinr);
    return d.alpha * std::log2(1.0 + gamma_sd) +
           (1.0 - d.alpha) * std::log2(1.0 + gmrc);
}

}  // namespace ehfdr::relay
