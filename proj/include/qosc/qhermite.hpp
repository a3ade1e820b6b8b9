#pragma once

// q^{-1}-Hermite polynomials h_n(x; q): the orthogonal system attached to
// the q > 1 Arik-Coon oscillator in its q < 1 presentation, with structure
// function f(n) = q^{-n+1}(1-q^n)/(1-q).
//
//   2x h_n = h_{n+1} + q^{-n}(1 - q^n) h_{n-1},   h_0 = 1, h_1 = 2x.
//
// The moment functional is induced by the three-term recurrence through the
// truncated Jacobi matrix; the underlying moment problem is indeterminate,
// so the recurrence is the only unambiguous source of moments.

#include <Eigen/Dense>

#include "qosc/catalog.hpp"

namespace qosc {

/// Ladder coefficients r_n = q^{-n/2} ((1-q^{n+1})/(1-q))^{1/2} of the
/// position operator Q = a + a+, and the h_n -> psi_n normalizers.
struct OrthoSystem {
    QBase base;

    explicit OrthoSystem(QBase b) : base(b) {
        if (!base.convergent())
            throw std::invalid_argument("OrthoSystem: requires q < 1");
    }

    double r(int n) const {
        if (n < 0) throw std::invalid_argument("OrthoSystem::r: n must be >= 0");
        const double q = base.q;
        return std::pow(q, -0.5 * n) * std::sqrt((1.0 - std::pow(q, n + 1)) / (1.0 - q));
    }

    /// q^{-n(n+1)/4} (q;q)_n^{1/2}
    double normalizer(int n) const {
        const double q = base.q;
        return std::pow(q, -0.25 * n * (n + 1)) * std::sqrt(q_pochhammer(q, base, n));
    }
};

/// Monomial coefficients of h_n. Coefficient arithmetic is trusted up to
/// n = 15; past that the q^{k(k-n)} factors leave the well-conditioned
/// range for small q.
inline constexpr int kHermiteCoeffCap = 15;

using PolyCoeffs = std::vector<double>;

/// h_n by the three-term recurrence on coefficient vectors. Reference
/// implementation for the explicit form.
inline PolyCoeffs hermite_recurrence(int n, const QBase& base) {
    if (n < 0) throw std::invalid_argument("hermite_recurrence: n must be >= 0");
    if (n > kHermiteCoeffCap)
        throw std::invalid_argument("hermite_recurrence: coefficient form capped at n = 15");
    PolyCoeffs prev{1.0};
    if (n == 0) return prev;
    PolyCoeffs cur{0.0, 2.0};
    for (int m = 1; m < n; ++m) {
        PolyCoeffs next(cur.size() + 1, 0.0);
        for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] = 2.0 * cur[k];
        const double c = std::pow(base.q, -m) * (1.0 - std::pow(base.q, m));
        for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= c * prev[k];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// h_n(x) by the same recurrence on values; stable for any n.
inline double hermite_eval(int n, const QBase& base, double x) {
    if (n < 0) throw std::invalid_argument("hermite_eval: n must be >= 0");
    double prev = 1.0, cur = 2.0 * x;
    if (n == 0) return prev;
    for (int m = 1; m < n; ++m) {
        const double c = std::pow(base.q, -m) * (1.0 - std::pow(base.q, m));
        const double next = 2.0 * x * cur - c * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Explicit k-sum with x = sinh(theta):
///   h_n(x) = sum_k [n choose k]_q (-1)^k q^{k(k-n)} e^{(n-2k) theta}.
inline double hermite_explicit(int n, const QBase& base, double x) {
    if (n < 0) throw std::invalid_argument("hermite_explicit: n must be >= 0");
    if (n > kHermiteCoeffCap)
        throw std::invalid_argument("hermite_explicit: capped at n = 15");
    // negative-x-stable branch of theta = ln(x + sqrt(x^2+1))
    const double root = std::sqrt(x * x + 1.0);
    const double theta = (x >= 0.0) ? std::log(x + root) : -std::log(-x + root);
    std::vector<double> qq(n + 1);  // (q;q)_k
    qq[0] = 1.0;
    for (int k = 1; k <= n; ++k) qq[k] = qq[k - 1] * (1.0 - std::pow(base.q, k));
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double binom = qq[n] / (qq[k] * qq[n - k]);
        sum += binom * parity_sign(k) * std::pow(base.q, k * (k - n)) *
               std::exp((n - 2.0 * k) * theta);
    }
    return sum;
}

/// psi_n(x) = h_n(x) / (q^{-n(n+1)/4} (q;q)_n^{1/2})
inline double psi_normalized(int n, const QBase& base, double x) {
    return hermite_eval(n, base, x) / OrthoSystem(base).normalizer(n);
}

/// L[x^k] for k <= 2 n_max, read off as the (0,0) entries of powers of the
/// truncated Jacobi matrix in the h_n normalization: zero diagonal,
/// off-diagonal b_j = sqrt(q^{-(j+1)}(1 - q^{j+1}))/2. Truncation at
/// n_max + 2 keeps all requested moments exact (Krylov exactness; see the
/// dimension-bump test).
struct MomentFunctional {
    std::vector<double> moments;

    double operator()(int k) const {
        if (k < 0 || k >= static_cast<int>(moments.size()))
            throw std::out_of_range("MomentFunctional: moment order out of range");
        return moments[static_cast<std::size_t>(k)];
    }

    double apply(const PolyCoeffs& poly) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < poly.size(); ++k)
            sum += poly[k] * (*this)(static_cast<int>(k));
        return sum;
    }
};

inline MomentFunctional moment_functional(const QBase& base, int n_max, int extra_dim = 0) {
    if (n_max < 0) throw std::invalid_argument("moment_functional: n_max must be >= 0");
    const int dim = n_max + 2 + extra_dim;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j + 1 < dim; ++j) {
        const double b = 0.5 * std::sqrt(std::pow(base.q, -(j + 1)) *
                                         (1.0 - std::pow(base.q, j + 1)));
        J(j, j + 1) = J(j + 1, j) = b;
    }
    MomentFunctional L;
    L.moments.resize(static_cast<std::size_t>(2 * n_max + 1));
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(0) = 1.0;
    L.moments[0] = 1.0;
    for (int k = 1; k <= 2 * n_max; ++k) {
        v = J * v;
        L.moments[static_cast<std::size_t>(k)] = v(0);
    }
    return L;
}

/// Gram matrix L[h_m h_n] for m, n <= n_max. Diagonal must equal
/// q^{-n(n+1)/2}(q;q)_n, off-diagonals vanish.
inline Eigen::MatrixXd orthogonality_check(const QBase& base, int n_max) {
    if (n_max < 0 || n_max > 12)
        throw std::invalid_argument("orthogonality_check: n_max must be in [0, 12]");
    const MomentFunctional L = moment_functional(base, n_max);
    std::vector<PolyCoeffs> h(static_cast<std::size_t>(n_max + 1));
    for (int n = 0; n <= n_max; ++n) h[static_cast<std::size_t>(n)] = hermite_recurrence(n, base);
    Eigen::MatrixXd gram(n_max + 1, n_max + 1);
    for (int m = 0; m <= n_max; ++m)
        for (int n = m; n <= n_max; ++n) {
            const double v = L.apply(poly_mul(h[static_cast<std::size_t>(m)],
                                              h[static_cast<std::size_t>(n)]));
            gram(m, n) = gram(n, m) = v;
        }
    return gram;
}

}  // namespace qosc
