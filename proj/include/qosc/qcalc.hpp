#pragma once

// q-arithmetic, q-series with controlled truncation, and the q-lattice
// calculus (deformed derivative, bilateral lattice integral, integration by
// parts). Everything here is a pure function of its inputs.

#include <functional>
#include <limits>

#include "qosc/common.hpp"

namespace qosc {

/// [n]_q = 1 + q + ... + q^{n-1}, evaluated as the explicit sum so the
/// value stays accurate for q near 1.
inline double q_number(const QBase& base, int n) {
    if (n < 0) throw std::invalid_argument("q_number: n must be >= 0");
    double sum = 0.0, pw = 1.0;
    for (int k = 0; k < n; ++k) {
        sum += pw;
        pw *= base.q;
    }
    return sum;
}

/// Finite q-shifted factorial (a; q)_n = prod_{k=0}^{n-1} (1 - a q^k).
inline double q_pochhammer(double a, const QBase& base, int n) {
    if (n < 0) throw std::invalid_argument("q_pochhammer: n must be >= 0");
    double prod = 1.0, aq = a;
    for (int k = 0; k < n; ++k) {
        prod *= (1.0 - aq);
        aq *= base.q;
    }
    return prod;
}

/// (a; q)_infty for q < 1. The product is cut once |a q^k| < rel_tol and the
/// dropped factors are folded back in through the first-order tail
/// exp(-sum_{j>=k} a q^j), which bounds the relative truncation error by
/// O(rel_tol^2 / (1-q)).
inline double q_pochhammer_inf(double a, const QBase& base, const SeriesPolicy& policy = {}) {
    policy.validate();
    if (!base.convergent())
        throw divergence_error("q_pochhammer_inf: requires q < 1");
    double prod = 1.0, aq = a;
    for (std::size_t k = 0; k < policy.max_terms; ++k) {
        if (std::abs(aq) < policy.rel_tol)
            return prod * std::exp(-aq / (1.0 - base.q));
        prod *= (1.0 - aq);
        aq *= base.q;
    }
    throw nonconvergence_error("q_pochhammer_inf: max_terms reached before tail bound met");
}

/// log (-x; q)_infty for x >= 0, q < 1. Safe for arguments far beyond
/// double overflow of the plain product.
inline double log_eq_product(double x, const QBase& base) {
    if (!base.convergent())
        throw divergence_error("log_eq_product: requires q < 1");
    if (x < 0.0) throw std::invalid_argument("log_eq_product: x must be >= 0");
    double sum = 0.0, t = x;
    while (t > 1e-20) {
        sum += std::log1p(t);
        t *= base.q;
    }
    return sum + t / (1.0 - base.q);
}

/// e_q(x) = sum_n q^{n(n-1)/2} x^n / (q;q)_n = (-x; q)_infty.
/// Both routes are evaluated; they must agree within 10*rel_tol or the
/// truncation machinery itself is broken (consistency_error).
inline double q_exponential(double x, const QBase& base, const SeriesPolicy& policy = {}) {
    policy.validate();
    if (!base.convergent())
        throw divergence_error("q_exponential: requires q < 1");
    double sum = 1.0, term = 1.0, qn = 1.0, peak = 1.0;
    std::size_t small_run = 0;
    std::size_t n = 0;
    for (; n < policy.max_terms; ++n) {
        term *= qn * x / (1.0 - base.q * qn);  // t_{n+1}/t_n = q^n x / (1 - q^{n+1})
        qn *= base.q;
        sum += term;
        peak = std::max({peak, std::abs(term), std::abs(sum)});
        if (std::abs(term) <= policy.rel_tol * (std::abs(sum) + 1.0)) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    if (n == policy.max_terms)
        throw nonconvergence_error("q_exponential: series did not converge within max_terms");
    const double prod = q_pochhammer_inf(-x, base, policy);
    // For alternating x the summation cancels down from `peak`; the series
    // route cannot beat ~n*eps*peak in absolute terms, so the agreement
    // tolerance carries that term on top of the truncation budget.
    const double tol = 10.0 * policy.rel_tol * std::max({1.0, std::abs(sum), std::abs(prod)}) +
                       2.0 * static_cast<double>(n + 1) *
                           std::numeric_limits<double>::epsilon() * peak;
    if (std::abs(sum - prod) > tol)
        throw consistency_error("q_exponential: series and product evaluations disagree");
    return prod;
}

/// The 0-phi-0 basic hypergeometric specialization (-x; q)_infty.
inline double phi00(double x, const QBase& base, const SeriesPolicy& policy = {}) {
    return q_pochhammer_inf(-x, base, policy);
}

/// Deformed derivative [d/dx]_q f = (f(q^{-1}x) - f(x)) / (q^{-1}x).
/// On monomials this gives [d/dx]_q x^n = q^{-(n-1)}(1 - q^n) x^{n-1}.
inline double jackson_derivative(const std::function<double(double)>& f, double x,
                                 const QBase& base) {
    if (x == 0.0) throw std::domain_error("jackson_derivative: x must be != 0");
    const double xq = x / base.q;
    return (f(xq) - f(x)) / xq;
}

/// Eigenvalue of [d/dx]_q on x^{n+1}: c_n^2 = q^{-n}(1 - q^{n+1}).
inline double jackson_monomial_factor(const QBase& base, int n) {
    return std::pow(base.q, -n) * (1.0 - std::pow(base.q, n + 1));
}

/// c_{n-1}^2! = prod_{k=1}^{n} c_{k-1}^2 = q^{-n(n-1)/2} (q;q)_n.
inline double jackson_factorial(const QBase& base, int n) {
    if (n < 0) throw std::invalid_argument("jackson_factorial: n must be >= 0");
    double prod = 1.0;
    for (int k = 1; k <= n; ++k) prod *= jackson_monomial_factor(base, k - 1);
    return prod;
}

/// The lattice underlying the bilateral integral: atom q^k carries weight
/// q^{k-1}, for k_lo <= k <= k_hi.
inline DiscreteMeasure jackson_lattice(const QBase& base, int k_lo, int k_hi) {
    if (k_lo > k_hi) throw std::invalid_argument("jackson_lattice: k_lo > k_hi");
    std::vector<double> pts, wts;
    pts.reserve(k_hi - k_lo + 1);
    wts.reserve(k_hi - k_lo + 1);
    // ascending points: k decreasing when q < 1
    if (base.q < 1.0) {
        for (int k = k_hi; k >= k_lo; --k) {
            pts.push_back(std::pow(base.q, k));
            wts.push_back(std::pow(base.q, k - 1));
        }
    } else {
        for (int k = k_lo; k <= k_hi; ++k) {
            pts.push_back(std::pow(base.q, k));
            wts.push_back(std::pow(base.q, k - 1));
        }
    }
    return DiscreteMeasure(std::move(pts), std::move(wts));
}

/// Bilateral lattice integral: int_0^infty f dt_q = sum_{k in Z} q^{k-1} f(q^k).
/// Both tails are monitored; terms must fall below rel_tol persistently
/// before max_terms lattice sites, else nonconvergence_error.
inline double jackson_integral(const std::function<double(double)>& f, const QBase& base,
                               const SeriesPolicy& policy = {}) {
    policy.validate();
    if (!base.convergent())
        throw divergence_error("jackson_integral: requires q < 1");
    const auto scan = [&](int dir) {
        double sum = 0.0;
        std::size_t small_run = 0;
        int k = (dir > 0) ? 0 : -1;
        for (std::size_t i = 0; i < policy.max_terms; ++i, k += dir) {
            const double term = std::pow(base.q, k - 1) * f(std::pow(base.q, k));
            if (!std::isfinite(term))
                throw nonconvergence_error("jackson_integral: integrand not finite on lattice");
            sum += term;
            if (std::abs(term) <= policy.rel_tol * (std::abs(sum) + 1.0)) {
                if (++small_run >= 4) return sum;
            } else {
                small_run = 0;
            }
        }
        throw nonconvergence_error("jackson_integral: lattice tail did not converge");
    };
    return scan(+1) + scan(-1);
}

}  // namespace qosc
