#pragma once

// Modified Bessel functions I0, I1, K0, K1 and the upper incomplete gamma
// function at zero order, Gamma(0,x).  Implemented in-repo so the library
// carries no external math dependency.
//
// Regimes:
//   I0, I1  - ascending power series (all-positive terms, converges for any
//             finite argument); scaled asymptotic form above x = 40.
//   K0, K1  - ascending series for x <= 1.5, where cancellation against the
//             log term is still benign; the integral representation
//             K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt evaluated by
//             adaptive quadrature for 1.5 < x < 15; asymptotic series with
//             adaptive truncation for x >= 15.
//   Gamma(0,x) - alternating series for x <= 1, modified-Lentz continued
//             fraction above.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ehfdr/quadrature.hpp"

namespace ehfdr::num {

inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

namespace detail {

inline void require_finite(double x, const char* who) {
    if (!std::isfinite(x))
        throw std::domain_error(std::string(who) + ": non-finite argument");
}

// Ascending series for I0; every term is positive so there is no
// cancellation.  Term recurrence t_{k+1} = t_k * (x^2/4) / (k+1)^2.
inline double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 4000; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

inline double i1_series(double x) {
    const double q = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int k = 1; k < 4000; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Scaled asymptotic expansion: e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k c_k x^{-k}
// with c_k = prod_{j<=k} (2j-1)^2 / (8^k k!).  Truncated at the smallest term.
inline double i0_scaled_asymptotic(double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (8.0 * k * x);
        if (next >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < sum * 1e-17) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

// Asymptotic series for K_nu, nu in {0,1}:
//   K_nu(x) ~ sqrt(pi/(2x)) e^{-x} [1 + sum_k prod_{j<=k}(4nu^2-(2j-1)^2) / (k! (8x)^k)]
inline double k_asymptotic(int order, double x) {
    const double mu = 4.0 * order * order;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * sum;
}

// K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt.  The integrand decays
// double-exponentially; truncating where x(cosh t - 1) = 60 leaves a tail
// below e^{-60} relative to the peak.
inline double k_integral(int order, double x) {
    const double upper = std::acosh(1.0 + 60.0 / x);
    auto f = [order, x](double t) {
        const double e = std::exp(-x * std::cosh(t));
        return order == 0 ? e : e * std::cosh(t);
    };
    const QuadratureResult r =
        integrate(f, 0.0, upper, 1e-300, 1e-12, 4000);
    return r.value;
}

// Ascending series, x <= 1.5.
//   K0(x) = -(ln(x/2)+gamma) I0(x) + sum_{k>=1} (x^2/4)^k H_k / (k!)^2
//   K1(x) = 1/x + ln(x/2) I1(x)
//           - (x/4) sum_{k>=0} [psi(k+1)+psi(k+2)] (x^2/4)^k / (k! (k+1)!)
inline double k0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, hk = 0.0, sum = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        sum += term * hk;
        if (term * hk < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return -(std::log(0.5 * x) + euler_gamma) * i0_series(x) + sum;
}

inline double k1_series(double x) {
    const double q = 0.25 * x * x;
    // psi(1) = -gamma, psi(n) = -gamma + H_{n-1}
    double term = 1.0;           // (x^2/4)^k / (k! (k+1)!)
    double hk = 0.0, hk1 = 1.0;  // H_k, H_{k+1}
    double sum = term * (-2.0 * euler_gamma + hk + hk1);
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1);
        const double add = term * (-2.0 * euler_gamma + hk + hk1);
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return 1.0 / x + std::log(0.5 * x) * i1_series(x) - 0.25 * x * sum;
}

}  // namespace detail

/// I0(x), relative error <= 1e-12 for x >= 0.
inline double bessel_i0(double x) {
    detail::require_finite(x, "bessel_i0");
    if (x < 0.0) throw std::domain_error("bessel_i0: negative argument");
    if (x < 40.0) return detail::i0_series(x);
    return detail::i0_scaled_asymptotic(x) * std::exp(x);
}

/// e^{-x} I0(x); never overflows, usable deep in distribution tails.
inline double bessel_i0_scaled(double x) {
    detail::require_finite(x, "bessel_i0_scaled");
    if (x < 0.0) throw std::domain_error("bessel_i0_scaled: negative argument");
    if (x < 40.0) return detail::i0_series(x) * std::exp(-x);
    return detail::i0_scaled_asymptotic(x);
}

inline double bessel_i1(double x) {
    detail::require_finite(x, "bessel_i1");
    if (x < 0.0) throw std::domain_error("bessel_i1: negative argument");
    if (x < 40.0) return detail::i1_series(x);
    // e^{-x} I1(x) asymptotic with mu = 4
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (4.0 - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
    }
    return std::exp(x) * sum / std::sqrt(2.0 * M_PI * x);
}

/// K0(x) or K1(x) for x > 0, relative error <= 1e-10.
inline double bessel_k(int order, double x) {
    if (order != 0 && order != 1)
        throw std::domain_error("bessel_k: order must be 0 or 1");
    detail::require_finite(x, "bessel_k");
    if (x <= 0.0) throw std::domain_error("bessel_k: argument must be positive");
    if (x >= 15.0) return detail::k_asymptotic(order, x);
    if (x <= 1.5) return order == 0 ? detail::k0_series(x) : detail::k1_series(x);
    return detail::k_integral(order, x);
}

inline double bessel_k0(double x) { return bessel_k(0, x); }
inline double bessel_k1(double x) { return bessel_k(1, x); }

/// Gamma(0,x) = int_x^inf e^{-t}/t dt = E1(x), x > 0, relative error <= 1e-10.
inline double upper_incomplete_gamma_zero(double x) {
    detail::require_finite(x, "upper_incomplete_gamma_zero");
    if (x <= 0.0)
        throw std::domain_error("upper_incomplete_gamma_zero: argument must be positive");
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double term = 1.0, sum = 0.0;
        for (int k = 1; k < 50; ++k) {
            term *= -x / k;
            sum -= term / k;
            if (std::abs(term) < 1e-18 * (std::abs(sum) + 1.0)) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    // Modified Lentz for E1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 400; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-x) * h;
}

}  // namespace ehfdr::num
