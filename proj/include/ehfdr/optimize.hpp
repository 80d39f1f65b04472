#pragma once

// Time-switching-factor bisection for the maximum relay, Dinkelbach iteration
// over source power, and generic sweep orchestration.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehfdr/relay_control.hpp"

namespace ehfdr::opt {

struct OptResult {
    double argmax = 0.0;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double tolerance = 0.0;
    bool at_boundary = false;       // maximizer pinned at a search limit
    bool warning = false;           // gradient sign pattern violated; fell back
    std::vector<double> lambdas;    // Dinkelbach ratio sequence, when applicable
};

// The search domain stays clear of alpha -> 1 where mu diverges.
inline constexpr double alpha_search_lo = 1e-4;
inline constexpr double alpha_search_hi = 1.0 - 1e-4;

/// Golden-section maximization of a unimodal f on [lo, hi].
inline OptResult golden_section_max(const std::function<double(double)>& f,
                                    double lo, double hi, double tol,
                                    int max_iter = 400) {
    if (!(tol > 0.0)) throw std::domain_error("golden_section_max: tol must be positive");
    if (!(lo < hi)) throw std::domain_error("golden_section_max: empty interval");
    const double lo0 = lo, hi0 = hi;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    int it = 0;
    while (hi - lo > tol && it < max_iter) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
        ++it;
    }
    OptResult r;
    r.argmax = 0.5 * (lo + hi);
    r.value = f(r.argmax);
    r.iterations = it;
    r.converged = hi - lo <= tol;
    r.tolerance = tol;
    r.at_boundary =
        (r.argmax - lo0 <= 2.0 * tol) || (hi0 - r.argmax <= 2.0 * tol);
    // endpoints can dominate when f is monotone on the interval
    const double fl = f(lo0), fh = f(hi0);
    if (fl > r.value) {
        r.argmax = lo0;
        r.value = fl;
        r.at_boundary = true;
    }
    if (fh > r.value) {
        r.argmax = hi0;
        r.value = fh;
        r.at_boundary = true;
    }
    return r;
}

/// Maximize a unimodal objective over the time-switching factor by bisecting
/// the sign of its central-difference gradient.  A violated sign pattern
/// (no interior maximum bracketing) falls back to golden section with the
/// warning flag set.
inline OptResult bisect_alpha(const std::function<double(double)>& objective,
                              double tol = 1e-6, double grad_step = 1e-7) {
    if (!(tol > 0.0)) throw std::domain_error("bisect_alpha: tol must be positive");
    double lo = alpha_search_lo, hi = alpha_search_hi;
    const double h = grad_step;
    auto grad = [&](double a) {
        return (objective(a + h) - objective(a - h)) / (2.0 * h);
    };
    const double glo = grad(lo + h), ghi = grad(hi - h);
    if (!(glo > 0.0) || !(ghi < 0.0)) {
        OptResult r = golden_section_max(objective, lo, hi, tol);
        r.warning = true;
        return r;
    }
    const int max_iter =
        static_cast<int>(std::ceil(std::log2((hi - lo) / tol))) + 8;
    int it = 0;
    while (hi - lo > tol && it < max_iter) {
        const double mid = 0.5 * (lo + hi);
        if (grad(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        ++it;
    }
    OptResult r;
    r.argmax = 0.5 * (lo + hi);
    r.value = objective(r.argmax);
    r.iterations = it;
    r.converged = hi - lo <= tol;
    r.tolerance = tol;
    return r;
}

/// Dinkelbach iteration maximizing numerator(ps)/ps over (ps_min, ps_max].
/// The returned value is the optimal ratio (energy efficiency when the
/// numerator already carries the bandwidth factor); lambdas records the
/// non-decreasing ratio sequence.
inline OptResult dinkelbach_ps(const std::function<double(double)>& numerator,
                               double ps_max, double tol,
                               double ps_min = 0.0) {
    if (!(ps_max > 0.0)) throw std::domain_error("dinkelbach_ps: ps_max must be positive");
    if (!(tol > 0.0)) throw std::domain_error("dinkelbach_ps: tol must be positive");
    if (ps_min <= 0.0) ps_min = 1e-9 * ps_max;
    OptResult r;
    r.tolerance = tol;
    double ps = 0.5 * (ps_min + ps_max);
    double lambda = numerator(ps) / ps;
    r.lambdas.push_back(lambda);
    const double inner_tol = 1e-6 * (ps_max - ps_min);
    for (int k = 0; k < 100; ++k) {
        auto sub = [&](double q) { return numerator(q) - lambda * q; };
        const OptResult inner =
            golden_section_max(sub, ps_min, ps_max, inner_tol);
        ps = inner.argmax;
        const double gap = numerator(ps) - lambda * ps;
        r.iterations = k + 1;
        r.at_boundary = inner.at_boundary;
        if (std::abs(gap) <= tol) {
            r.converged = true;
            break;
        }
        lambda = numerator(ps) / ps;
        r.lambdas.push_back(lambda);
    }
    r.argmax = ps;
    r.value = numerator(ps) / ps;
    return r;
}

/// Closed-form TS factor and throughput for one channel in instantaneous
/// transmission; the maximum relay bisects (1-alpha) log2(1+gamma_max(alpha)).
inline relay::RelayDecision instantaneous_decision(
    const SystemParams& p, const ChannelSample& ch, double ps,
    relay::Scheme scheme, double gamma_hat = 0.0, double tol = 1e-6) {
    const LinkSNRs s = link_snrs(p, ch, ps);
    switch (scheme) {
        case relay::Scheme::Sinr:
            return relay::sinr_relay(s, ch.g0, p);
        case relay::Scheme::Target:
            return relay::target_relay(s, ch.g0, p, {gamma_hat});
        default: {
            auto objective = [&](double a) {
                return (1.0 - a) *
                       std::log2(1.0 + relay::max_relay(s, ch.g0, p, a).esinr);
            };
            const OptResult r = bisect_alpha(objective, tol);
            return relay::max_relay(s, ch.g0, p, r.argmax);
        }
    }
}

enum class SweepAxis { Ps, Sigma02, GammaHat, PlacementRatio, Kappa };

inline const char* axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::Ps: return "ps_dbm";
        case SweepAxis::Sigma02: return "sigma02";
        case SweepAxis::GammaHat: return "gamma_hat_db";
        case SweepAxis::PlacementRatio: return "placement_ratio";
        default: return "kappa";
    }
}

/// Parameter mutation for sweep axes that live inside SystemParams.
/// Placement sweeps move the relay along the source-destination line:
/// d1 = r d3, d2 = (1-r) d3.
inline SystemParams apply_axis(SystemParams base, SweepAxis axis, double v) {
    switch (axis) {
        case SweepAxis::Sigma02:
            base.sigma_02 = v;
            break;
        case SweepAxis::PlacementRatio:
            if (!(v > 0.0) || !(v < 1.0))
                throw std::domain_error("placement ratio must be in (0,1)");
            base.d1 = v * base.d3;
            base.d2 = (1.0 - v) * base.d3;
            break;
        default:
            break;  // Ps / GammaHat / Kappa are not SystemParams fields
    }
    return base;
}

/// The placement-dependent scale of the end-to-end SINR, (d1 d2)^-m with
/// d1 = r d3, d2 = (1-r) d3; symmetric under r <-> 1-r.
inline double placement_snr_scale(double r, double d3, double m) {
    return std::pow(r * (1.0 - r) * d3 * d3, -m);
}

struct SweepRow {
    double axis_value = 0.0;
    double analytic = std::numeric_limits<double>::quiet_NaN();
    std::string method;
    double mc = std::numeric_limits<double>::quiet_NaN();
    double mc_stderr = std::numeric_limits<double>::quiet_NaN();
    long n = 0;
    std::string error;  // per-point failure, recorded without aborting the sweep
};

/// Evaluate `point` on every grid value; failures are recorded in the row and
/// the sweep continues.
template <class PointFn>
std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& grid,
                            PointFn&& point) {
    if (grid.empty()) throw std::domain_error("sweep: empty grid");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double v : grid) {
        SweepRow row;
        row.axis_value = v;
        try {
            row = point(axis, v);
            row.axis_value = v;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ehfdr::opt
