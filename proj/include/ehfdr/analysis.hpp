#pragma once

// Outage probability, ergodic capacity and direct-link expressions for the
// three relay control schemes, evaluated by adaptive quadrature (with a
// series route as an independent cross-check for the maximum relay's
// delay-tolerant capacity).
//
// Shared symbols: S = first-hop SNR at |h1|^2 = z, D = second-hop SNR,
// A = relay antenna gain (|h0|^2 kept separate as the integration variable w).

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "ehfdr/channel.hpp"
#include "ehfdr/optimize.hpp"
#include "ehfdr/quadrature.hpp"
#include "ehfdr/relay_control.hpp"
#include "ehfdr/special_functions.hpp"

namespace ehfdr::analysis {

enum class Method { ExactIntegral, HighSnrApprox, Series, ClosedForm };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::ExactIntegral: return "exact-integral";
        case Method::HighSnrApprox: return "high-snr-approx";
        case Method::Series: return "series";
        default: return "closed-form";
    }
}

struct AnalyticResult {
    double value = 0.0;
    Method method = Method::ExactIntegral;
    double error_bound = 0.0;
    double pre_clamp = 0.0;  // value before clamping to its domain
};

/// Thrown when an integrand hits the pole of the residual-self-interference
/// moment generating function.
class SingularIntegrandError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Probability density of the squared Rician RSI gain w = |h0|^2 with mean
// sigma02 and K-factor k.  Evaluated in scaled form so the I0 factor cannot
// overflow in distribution tails probed by the quadrature transform.
inline double rician_power_pdf(double w, double sigma02, double k) {
    if (w < 0.0) return 0.0;
    const double arg = 2.0 * std::sqrt(k * (k + 1.0) * w / sigma02);
    const double expo = -k - (k + 1.0) * w / sigma02 + arg;
    return (k + 1.0) / sigma02 * std::exp(expo) * num::bessel_i0_scaled(arg);
}

struct Scales {
    double l1, l2, d1m, d2m, d3m, a;  // a: relay antenna gain
    explicit Scales(const SystemParams& p)
        : l1(p.l1()),
          l2(p.l2()),
          d1m(std::pow(p.d1, p.m)),
          d2m(std::pow(p.d2, p.m)),
          d3m(std::pow(p.d3, p.m)),
          a(p.ant_gain_relay) {}
};

inline AnalyticResult clamp_probability(double raw, Method method, double err) {
    AnalyticResult r;
    r.pre_clamp = raw;
    r.value = std::clamp(raw, 0.0, 1.0);
    r.method = method;
    r.error_bound = err;
    return r;
}

inline AnalyticResult clamp_capacity(double raw, Method method, double err) {
    AnalyticResult r;
    r.pre_clamp = raw;
    r.value = std::max(raw, 0.0);
    r.method = method;
    r.error_bound = err;
    return r;
}

// default tolerances: inner integrals tight, outer integrals 10x looser
inline constexpr double inner_abs = 1e-9, inner_rel = 1e-7;
inline constexpr double outer_abs = 1e-8, outer_rel = 1e-6;

}  // namespace detail

/// Outage probability of the maximum relay at time-switching factor alpha.
/// exact = true evaluates the full double integral; exact = false uses the
/// high-SNR reduction through the K1 kernel.
inline AnalyticResult outage_max(const SystemParams& p, double ps, double alpha,
                                 bool exact = true) {
    if (!(ps > 0.0)) throw std::domain_error("outage_max: ps must be positive");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("outage_max: alpha must be in (0,1)");
    if (p.gamma_th <= 0.0)
        return detail::clamp_probability(0.0, Method::ClosedForm, 0.0);
    const detail::Scales sc(p);
    const double mu = mu_from_alpha(alpha, p.eta);
    const double gth = p.gamma_th;
    const double k = p.rician_k;
    // The non-outage region requires c > 0, i.e. w < 1/(mu gamma_th A);
    // beyond it the relay loop gain forces outage for every |h1|,|h2|.
    // Intersect with the numerical tail of the RSI density so a huge limit
    // (tiny mu) cannot hide the concentrated mass from the adaptive rule.
    const double tail = p.sigma_02 * std::pow(std::sqrt(k) + 7.5, 2) / (k + 1.0);
    const double w_hi = std::min(1.0 / (mu * gth * sc.a), tail);
    const double b = sc.d1m * sc.d1m * sc.d2m * p.sigma_r2 * p.sigma_d2 * gth;
    const double d = sc.l1 * sc.l2 * ps * sc.d1m * p.sigma_r2 * mu * gth;
    const double inf = std::numeric_limits<double>::infinity();

    auto inner_exact = [&](double w) {
        const double a = sc.l1 * ps * sc.d1m * sc.d2m * p.sigma_d2 * gth *
                         (1.0 + mu * sc.a * w);
        const double c = sc.l1 * sc.l1 * sc.l2 * ps * ps * mu *
                         (1.0 - mu * gth * sc.a * w);
        const double zlo = d / c;
        auto f = [&](double z) {
            const double quad = c * z * z - d * z;
            if (quad <= 0.0) return 0.0;
            return std::exp(-z / p.lambda1 - (a * z + b) / (quad * p.lambda2));
        };
        return num::integrate(f, zlo, inf, detail::inner_abs, detail::inner_rel)
                   .value / p.lambda1;
    };
    auto inner_highsnr = [&](double w) {
        const double a = sc.l1 * ps * sc.d1m * sc.d2m * p.sigma_d2 * gth *
                         (1.0 + mu * sc.a * w);
        const double c = sc.l1 * sc.l1 * sc.l2 * ps * ps * mu *
                         (1.0 - mu * gth * sc.a * w);
        const double rho = std::sqrt(4.0 * a / (c * p.lambda1 * p.lambda2));
        const double k1 = rho > 0.0 ? num::bessel_k1(rho) : 0.0;
        return rho * k1 * std::exp(-d / (c * p.lambda1));
    };

    double err = 0.0;
    double nonout;
    if (exact) {
        const auto r = num::integrate(
            [&](double w) {
                return detail::rician_power_pdf(w, p.sigma_02, k) * inner_exact(w);
            },
            0.0, w_hi, detail::outer_abs, detail::outer_rel, 4000);
        nonout = r.value;
        err = r.abs_error_estimate;
    } else {
        const auto r = num::integrate(
            [&](double w) {
                return detail::rician_power_pdf(w, p.sigma_02, k) *
                       inner_highsnr(w);
            },
            0.0, w_hi, detail::outer_abs, detail::outer_rel, 4000);
        nonout = r.value;
        err = r.abs_error_estimate;
    }
    return detail::clamp_probability(
        1.0 - nonout, exact ? Method::ExactIntegral : Method::HighSnrApprox, err);
}

/// Delay-tolerant ergodic capacity of the maximum relay at fixed alpha,
/// evaluated by nested quadrature of
///   E{log2((1+mu A w)(1+mu D))} - E{log2(1+mu A w + mu^2 A w D)}
/// over the Rician RSI density and the product-exponential density of
/// x = |h1|^2 |h2|^2 (kernel K0).  Exact in the high-first-hop-SNR regime.
inline AnalyticResult ergodic_capacity_max(const SystemParams& p, double ps,
                                           double alpha) {
    if (!(ps > 0.0))
        throw std::domain_error("ergodic_capacity_max: ps must be positive");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("ergodic_capacity_max: alpha must be in (0,1)");
    const detail::Scales sc(p);
    const double mu = mu_from_alpha(alpha, p.eta);
    const double cd = sc.l1 * sc.l2 * ps / (sc.d1m * sc.d2m * p.sigma_d2);
    const double lam = p.lambda1 * p.lambda2;
    const double k = p.rician_k;
    const double inf = std::numeric_limits<double>::infinity();

    // x = lam t^2 removes the K0 log singularity at the origin.
    auto outer = [&](double t) {
        const double x = lam * t * t;
        const double mucdx = mu * cd * x;
        auto wlog = [&](double w) {
            const double maw = mu * sc.a * w;
            // log of (1+a)(1+b)/(1+b+ab) with a = mu cd x, b = mu A w,
            // written to stay finite as a grows without bound
            const double gain = std::log1p(mucdx / (1.0 + maw + maw * mucdx));
            return detail::rician_power_pdf(w, p.sigma_02, k) * gain;
        };
        const double h =
            num::integrate(wlog, 0.0, inf, detail::inner_abs, detail::inner_rel)
                .value;
        return 4.0 * t * num::bessel_k0(2.0 * t) * h;
    };
    const auto r = num::integrate(outer, 0.0, inf, detail::outer_abs,
                                  detail::outer_rel, 4000);
    return detail::clamp_capacity(r.value / std::log(2.0), Method::ExactIntegral,
                                  r.abs_error_estimate);
}

/// Series cross-check of ergodic_capacity_max: the Rician density is expanded
/// through the I0 power series (Poisson-weighted gamma terms in w) and the
/// inner expectation is taken against the complementary CDF of x, which is
/// the K1 kernel 2 sqrt(t/lam) K1(2 sqrt(t/lam)).  Falls back to the
/// quadrature route when 500 terms do not converge.
inline AnalyticResult ergodic_capacity_max_series(const SystemParams& p,
                                                  double ps, double alpha) {
    if (!(ps > 0.0))
        throw std::domain_error("ergodic_capacity_max_series: ps must be positive");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("ergodic_capacity_max_series: alpha must be in (0,1)");
    const detail::Scales sc(p);
    const double mu = mu_from_alpha(alpha, p.eta);
    const double cd = sc.l1 * sc.l2 * ps / (sc.d1m * sc.d2m * p.sigma_d2);
    const double lam = p.lambda1 * p.lambda2;
    const double k = p.rician_k;
    const double c = (k + 1.0) / p.sigma_02;
    const double inf = std::numeric_limits<double>::infinity();

    // E_x{ ln(1+p x) - ln(1+q x) } through the CCDF kernel, t = lam s^2.
    auto log_gap = [&](double pp, double qq) {
        auto f = [&](double s) {
            const double t = lam * s * s;
            const double diff = pp / (1.0 + pp * t) - qq / (1.0 + qq * t);
            return 4.0 * lam * s * s * num::bessel_k1(2.0 * s) * diff;
        };
        return num::integrate(f, 0.0, inf, detail::inner_abs, detail::inner_rel)
            .value;
    };
    auto q_of_w = [&](double w) {
        const double maw = mu * sc.a * w;
        const double theta = maw * mu * cd / (1.0 + maw);
        return log_gap(mu * cd, theta);
    };

    // sum_n e^{-K} K^n/(n!)^2 * c^{n+1} int w^n e^{-cw} q(w) dw
    double sum = 0.0;
    double log_weight = -k;  // ln of e^{-K} K^n / (n!)^2 ... kept in log form
    bool converged = false;
    int tiny_streak = 0;
    for (int n = 0; n < 500; ++n) {
        if (n > 0) log_weight += std::log(k) - 2.0 * std::log(n);
        auto f = [&](double w) {
            const double lw = log_weight + (n + 1.0) * std::log(c) +
                              n * std::log(w) - c * w;
            return std::exp(lw) * q_of_w(w);
        };
        // the gamma kernel peaks near w = n/c; integrate over the half line
        const double term =
            num::integrate(f, 0.0, inf, detail::inner_abs, detail::inner_rel, 4000)
                .value;
        sum += term;
        if (std::abs(term) < 1e-12 * std::abs(sum) && n >= 2) {
            if (++tiny_streak >= 2) {
                converged = true;
                break;
            }
        } else {
            tiny_streak = 0;
        }
    }
    if (!converged) {
        AnalyticResult fallback = ergodic_capacity_max(p, ps, alpha);
        fallback.method = Method::ExactIntegral;  // flagged: series did not converge
        return fallback;
    }
    return detail::clamp_capacity(sum / std::log(2.0), Method::Series, 0.0);
}

/// Outage probability of the SINR relay (single integral over |h1|^2 = z,
/// the RSI average folded in through its moment generating function).
inline AnalyticResult outage_sinr(const SystemParams& p, double ps) {
    if (!(ps > 0.0)) throw std::domain_error("outage_sinr: ps must be positive");
    const detail::Scales sc(p);
    const double gth = p.gamma_th;
    const double k = p.rician_k;
    const double zlo = sc.d1m * gth * p.sigma_r2 / (sc.l1 * ps);
    const double snr_scale = sc.l1 * ps / (sc.d1m * p.sigma_r2);  // S = scale * z
    const double inf = std::numeric_limits<double>::infinity();
    auto f = [&](double z) {
        const double S = snr_scale * z;
        if (S <= gth) return 0.0;
        const double num =
            gth + S * (1.0 + 2.0 * gth) +
            2.0 * std::sqrt(gth * (1.0 + gth) * S * (1.0 + S));
        const double rho = gth * sc.d2m * p.sigma_d2 * num /
                           (sc.l2 * p.lambda2 * p.sigma_r2 * (S - gth) * (S - gth));
        const double arho = sc.a * p.sigma_02 * rho;
        return (1.0 + k) / (1.0 + k + arho) *
               std::exp(-z / p.lambda1 - k * arho / (1.0 + k + arho));
    };
    const auto r = num::integrate(f, zlo, inf, detail::outer_abs,
                                  detail::outer_rel, 4000);
    return detail::clamp_probability(1.0 - r.value / p.lambda1,
                                     Method::ExactIntegral,
                                     r.abs_error_estimate);
}

/// Delay-tolerant ergodic capacity of the SINR relay from its high-SNR
/// density (K0, K1 kernels).
inline AnalyticResult ergodic_capacity_sinr(const SystemParams& p, double ps) {
    if (!(ps > 0.0))
        throw std::domain_error("ergodic_capacity_sinr: ps must be positive");
    const detail::Scales sc(p);
    const double k = p.rician_k;
    const double b = 2.0 * sc.d1m * p.sigma_r2 / (ps * p.lambda1);
    const double q = sc.a * sc.d1m * sc.d2m * p.sigma_d2 /
                     (sc.l1 * sc.l2 * ps * p.lambda1 * p.lambda2);
    const double inf = std::numeric_limits<double>::infinity();
    auto density_given_w = [&](double g, double w) {
        const double root = std::sqrt(g * (g + 1.0));
        const double v = 2.0 * std::sqrt(q * w) * (g + root);
        if (v <= 0.0) return 0.0;
        if (!(v < 700.0)) return 0.0;  // K0, K1 underflow past this point
        const double k1 = num::bessel_k1(v);
        const double k0 = num::bessel_k0(v);
        const double tail = v * k0 / (2.0 * g * (g + 1.0 - root));
        const double dens = v * std::exp(-b * g) * (b * k1 + tail);
        return std::max(dens, 0.0);  // clip floating-point noise
    };
    auto outer = [&](double g) {
        auto f = [&](double w) {
            return detail::rician_power_pdf(w, p.sigma_02, k) *
                   density_given_w(g, w);
        };
        const double inner =
            num::integrate(f, 0.0, inf, detail::inner_abs, detail::inner_rel,
                           4000)
                .value;
        return inner * std::log2(1.0 + g);
    };
    const auto r = num::integrate(outer, 0.0, inf, detail::outer_abs,
                                  detail::outer_rel, 4000);
    return detail::clamp_capacity(r.value, Method::HighSnrApprox,
                                  r.abs_error_estimate);
}

/// Outage probability of the target relay aiming at gamma_hat.
inline AnalyticResult outage_target(const SystemParams& p, double ps,
                                    double gamma_hat) {
    if (!(ps > 0.0)) throw std::domain_error("outage_target: ps must be positive");
    if (!(gamma_hat > 0.0))
        throw std::domain_error("outage_target: gamma_hat must be positive");
    if (p.gamma_th <= 0.0)
        return detail::clamp_probability(0.0, Method::ClosedForm, 0.0);
    const detail::Scales sc(p);
    const double gth = p.gamma_th;
    const double gh = gamma_hat;
    const double k = p.rician_k;
    const double denom = gh + 2.0 * gh * gth - gth * gth;
    if (denom <= 0.0)
        // even unlimited second-hop SNR cannot lift the achieved e-SINR
        // above the threshold
        return detail::clamp_probability(1.0, Method::ClosedForm, 0.0);
    const double z1 =
        sc.d1m * gth * gth * p.sigma_r2 * (gh + 1.0) / (sc.l1 * ps * denom);
    // relaying is infeasible below S = gamma_hat, which counts as outage
    const double z_feas = gh * sc.d1m * p.sigma_r2 / (sc.l1 * ps);
    const double zlo = std::max(z1, z_feas);
    const double snr_scale = sc.l1 * ps / (sc.d1m * p.sigma_r2);
    const double inf = std::numeric_limits<double>::infinity();
    auto f = [&](double z) {
        const double S = snr_scale * z;
        const double omega = std::sqrt((gh + 1.0) * (S + 1.0) / (gh * S));
        const double rho =
            sc.d1m * sc.d2m * gth * p.sigma_d2 * omega /
            (sc.l2 * p.lambda2 * ((omega - 1.0) * gth - 1.0) *
             ((omega - 1.0) * sc.l1 * ps * z - sc.d1m * p.sigma_r2));
        const double arho = sc.a * p.sigma_02 * rho;
        const double mgf_denom = 1.0 + k - arho;
        if (mgf_denom <= 0.0)
            throw SingularIntegrandError(
                "outage_target: RSI moment generating function pole");
        return (1.0 + k) / mgf_denom *
               std::exp(-z / p.lambda1 + k * arho / mgf_denom);
    };
    const auto r = num::integrate(f, zlo, inf, detail::outer_abs,
                                  detail::outer_rel, 4000);
    return detail::clamp_probability(1.0 - r.value / p.lambda1,
                                     Method::ExactIntegral,
                                     r.abs_error_estimate);
}

struct DirectLink {
    double outage;
    double capacity;
};

/// Direct source-destination transmission: Rayleigh outage and the
/// exponential-integral ergodic capacity.
inline DirectLink direct_link(const SystemParams& p, double ps) {
    if (!(ps > 0.0)) throw std::domain_error("direct_link: ps must be positive");
    const detail::Scales sc(p);
    const double x0 = sc.d3m * p.sigma_d2 / (sc.l1 * ps * p.lambda3);
    DirectLink d;
    d.outage = -std::expm1(-x0 * p.gamma_th);
    d.capacity = std::exp(x0) * num::upper_incomplete_gamma_zero(x0) /
                 std::log(2.0);
    return d;
}

/// Corollary bound: the combined outage is at most the product of the
/// direct-link and relay-path outage probabilities.
inline double mrc_outage_upper_bound(double p_sd, double p_srd) {
    if (p_sd < 0.0 || p_sd > 1.0 || p_srd < 0.0 || p_srd > 1.0)
        throw std::domain_error("mrc_outage_upper_bound: inputs must be probabilities");
    return p_sd * p_srd;
}

/// Delay-limited throughput for a statistically chosen alpha (maximum relay
/// only; the instantaneous-CSI schemes average (1-alpha) inside the Monte
/// Carlo estimator instead).
inline double statistical_dl_throughput(relay::Scheme scheme, double alpha,
                                        double outage, double rate) {
    if (scheme != relay::Scheme::Maximum)
        throw std::logic_error(
            "statistical_dl_throughput: instantaneous-CSI schemes take their "
            "alpha per block; use the Monte Carlo estimator");
    return (1.0 - alpha) * (1.0 - outage) * rate;
}

/// Delay-tolerant throughput for a statistically chosen alpha.
inline double statistical_dt_throughput(relay::Scheme scheme, double alpha,
                                        double ergodic_capacity) {
    if (scheme != relay::Scheme::Maximum)
        throw std::logic_error(
            "statistical_dt_throughput: instantaneous-CSI schemes take their "
            "alpha per block; use the Monte Carlo estimator");
    return (1.0 - alpha) * ergodic_capacity;
}

/// Lower bound on the delay-limited throughput of the direct transmission
/// assisted by the maximum relay.
inline double mrc_dl_throughput_lower_bound(double alpha, double p_sd,
                                            double p_srd, double rate) {
    const double p_ub = mrc_outage_upper_bound(p_sd, p_srd);
    return alpha * (1.0 - p_sd) * rate + (1.0 - alpha) * (1.0 - p_ub) * rate;
}

/// Bits per joule delivered at source power ps.
inline double energy_efficiency(double throughput_bps_hz,
                                const SystemParams& p, double ps) {
    if (!(ps > 0.0))
        throw std::domain_error("energy_efficiency: ps must be positive");
    return p.bandwidth_hz * throughput_bps_hz / ps;
}

/// Statistically optimal TS factor of the maximum relay in delay-limited
/// transmission: bisection of (1-alpha)(1-P_out(alpha)).
inline double optimal_alpha_dl(const SystemParams& p, double ps) {
    auto objective = [&](double a) {
        return (1.0 - a) * (1.0 - outage_max(p, ps, a).value);
    };
    return opt::bisect_alpha(objective, 1e-5, 1e-4).argmax;
}

/// Delay-tolerant counterpart: bisection of (1-alpha) C_E(alpha).
inline double optimal_alpha_dt(const SystemParams& p, double ps) {
    auto objective = [&](double a) {
        return (1.0 - a) * ergodic_capacity_max(p, ps, a).value;
    };
    return opt::bisect_alpha(objective, 1e-5, 1e-4).argmax;
}

}  // namespace ehfdr::analysis
