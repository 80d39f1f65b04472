#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature with largest-error-first
// subdivision.  Semi-infinite upper limits are mapped through the rational
// transform t = lo + u/(1-u), u in [0,1); the integrands this library cares
// about decay exponentially, which keeps that transform stable.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ehfdr::num {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

/// Thrown when the subdivision budget runs out before the tolerance is met.
/// Carries the best estimate obtained so far.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, QuadratureResult best)
        : std::runtime_error(what), best_estimate(best) {}
    QuadratureResult best_estimate;
};

namespace detail {

// QUADPACK dqk15 nodes and weights (positive half).
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F&& f, double a, double b, long& evaluations) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    double resk = 0.0, resg = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw std::domain_error("integrate: non-finite integrand value");
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        resk += gk_wk[i] * (f1 + f2);
        resabs += gk_wk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) resg += gk_wg[i / 2] * (f1 + f2);
    }
    const double fc = f(mid);
    if (!std::isfinite(fc))
        throw std::domain_error("integrate: non-finite integrand value");
    fv[14] = fc;
    resk += gk_wk[7] * fc;
    resabs += gk_wk[7] * std::abs(fc);
    resg += gk_wg[3] * fc;
    evaluations += 15;

    const double reskh = 0.5 * resk;
    double resasc = gk_wk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += gk_wk[i] *
                  (std::abs(fv[2 * i] - reskh) + std::abs(fv[2 * i + 1] - reskh));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    err = std::max(err, 50.0 * eps * resabs);
    return {a, b, value, err};
}

template <class F>
QuadratureResult integrate_finite(F&& f, double lo, double hi, double abs_tol,
                                  double rel_tol, int max_segments) {
    long evals = 0;
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, lo, hi, evals);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int segments = 1;
    const double min_width =
        1e-14 * (std::abs(hi - lo) + std::abs(lo) + std::abs(hi));
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        const Segment worst = heap.top();
        if (worst.b - worst.a < min_width || worst.error <= 0.0)
            break;  // refinement is below floating-point resolution
        if (segments >= max_segments)
            throw ConvergenceError("integrate: subdivision budget exhausted",
                                   {total, total_err, evals});
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid, evals);
        const Segment right = gk15(f, mid, worst.b, evals);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    return {total, total_err, evals};
}

}  // namespace detail

/// Adaptive quadrature of f over (lo, hi); hi may be +infinity.
/// Succeeds with abs_error_estimate <= max(abs_tol, rel_tol*|value|) unless
/// refinement hits floating-point resolution first; throws ConvergenceError
/// carrying the best estimate when the subdivision budget runs out.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, double abs_tol = 1e-9,
                           double rel_tol = 1e-7, int max_segments = 2000) {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("integrate: tolerances must be positive");
    if (std::isinf(hi)) {
        auto g = [&f, lo](double u) {
            const double om = 1.0 - u;
            const double t = lo + u / om;
            const double fv = f(t);
            if (fv == 0.0) return 0.0;
            return fv / (om * om);
        };
        return detail::integrate_finite(g, 0.0, 1.0, abs_tol, rel_tol,
                                        max_segments);
    }
    if (!(lo < hi)) {
        if (lo == hi) return {0.0, 0.0, 1};
        throw std::domain_error("integrate: lo must not exceed hi");
    }
    return detail::integrate_finite(f, lo, hi, abs_tol, rel_tol, max_segments);
}

}  // namespace ehfdr::num
