#pragma once

// Annihilation-operator eigenstates of the q > 1 Arik-Coon oscillator (in
// its q < 1 presentation with ladder coefficients r_n), their closed-form
// normalization, and the discrete measure that solves the attached
// Stieltjes moment problem, giving the resolution of unity.
//
// All radial integrals are exact finite sums over the q-lattice; angular
// integrals reduce to a Kronecker delta and are handled symbolically. The
// moment problem is indeterminate: what is verified is that the constructed
// lattice measure solves it, not uniqueness.

#include <complex>

#include "qosc/qhermite.hpp"

namespace qosc {

/// r_{n-1}! = prod_{k=0}^{n-1} r_k, cross-checked against the closed form
/// (q/(1-q))^{n/2} q^{-n(n+1)/4} (q;q)_n^{1/2} to 1e-12.
inline double r_factorial(int n, const QBase& base) {
    if (n < 0) throw std::invalid_argument("r_factorial: n must be >= 0");
    OrthoSystem sys(base);
    double prod = 1.0;
    for (int k = 0; k < n; ++k) prod *= sys.r(k);
    const double q = base.q;
    const double closed = std::pow(q / (1.0 - q), 0.5 * n) *
                          std::pow(q, -0.25 * n * (n + 1)) *
                          std::sqrt(q_pochhammer(q, base, n));
    if (std::abs(prod - closed) > 1e-12 * std::max(1.0, std::abs(closed)))
        throw consistency_error("r_factorial: product and closed form disagree");
    return prod;
}

/// N^2(x) = sum_n q^{n(n-1)/2} (1-q)^n x^n / (q;q)_n = (-(1-q)x; q)_infty,
/// for x = |z|^2 >= 0. Series and product must agree to 1e-12.
inline double normalization_sq(double x, const QBase& base, const SeriesPolicy& policy = {}) {
    if (x < 0.0) throw std::invalid_argument("normalization_sq: x must be >= 0");
    if (!base.convergent()) throw divergence_error("normalization_sq: requires q < 1");
    policy.validate();
    const double q = base.q;
    double sum = 1.0, term = 1.0, qn = 1.0;
    for (std::size_t n = 0; n < policy.max_terms; ++n) {
        term *= qn * (1.0 - q) * x / (1.0 - q * qn);
        qn *= q;
        sum += term;
        if (term <= 0.01 * policy.rel_tol * sum && n > 2) break;
    }
    const double prod = q_pochhammer_inf(-(1.0 - q) * x, base, policy);
    if (std::abs(sum - prod) > 1e-12 * std::max(1.0, std::abs(prod)))
        throw consistency_error("normalization_sq: series and product disagree");
    return prod;
}

/// Eigenstate a|z> = z|z>, truncated adaptively and normalized.
struct CoherentState {
    std::complex<double> z;
    double q = 0.5;
    std::vector<std::complex<double>> coeffs;  // <n|z>, unit norm
    double norm_sq = 1.0;                      // N^2(|z|^2) before normalization
};

/// Coefficients z^n / r_{n-1}!, cut once the squared tail of the norm series
/// drops below tol times the partial sum (the q^{n^2/4}-type decay of
/// 1/r_{n-1}! makes this unconditional for q < 1).
inline CoherentState coherent_state(std::complex<double> z, const QBase& base,
                                    double tol = 1e-24) {
    if (!base.convergent()) throw divergence_error("coherent_state: requires q < 1");
    if (!(tol > 0.0)) throw std::invalid_argument("coherent_state: tol must be > 0");
    OrthoSystem sys(base);
    const double zz = std::norm(z);
    std::vector<double> inv_rfact{1.0};  // 1 / r_{n-1}!
    double weight = 1.0, sum = 1.0;
    int small_run = 0;
    for (int n = 1; n < 10000; ++n) {
        const double r = sys.r(n - 1);
        inv_rfact.push_back(inv_rfact.back() / r);
        weight *= zz / (r * r);
        sum += weight;
        if (weight <= tol * sum) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    if (small_run < 3)
        throw nonconvergence_error("coherent_state: tail did not fall below tol");
    CoherentState st;
    st.z = z;
    st.q = base.q;
    st.norm_sq = sum;
    st.coeffs.resize(inv_rfact.size());
    const double inv_norm = 1.0 / std::sqrt(sum);
    std::complex<double> zn = 1.0;
    for (std::size_t n = 0; n < inv_rfact.size(); ++n) {
        st.coeffs[n] = zn * inv_rfact[n] * inv_norm;
        zn *= z;
    }
    return st;
}

/// || (a - z)|z> || computed on the truncated coefficients with the ladder
/// action a|n> = r_{n-1}|n-1>.
inline double coherent_eigen_residual(const CoherentState& st) {
    OrthoSystem sys{QBase(st.q)};
    const int top = static_cast<int>(st.coeffs.size()) - 1;
    double acc = 0.0;
    for (int n = 0; n <= top; ++n) {
        std::complex<double> comp = -st.z * st.coeffs[static_cast<std::size_t>(n)];
        if (n < top) comp += sys.r(n) * st.coeffs[static_cast<std::size_t>(n + 1)];
        acc += std::norm(comp);
    }
    return std::sqrt(acc);
}

/// <z1|z2>; never zero for distinct z (the family is overcomplete, not
/// orthogonal).
inline std::complex<double> coherent_overlap(const CoherentState& a, const CoherentState& b) {
    std::complex<double> sum = 0.0;
    const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
    for (std::size_t k = 0; k < n; ++k) sum += std::conj(a.coeffs[k]) * b.coeffs[k];
    return sum;
}

/// Position-space value of |z> for real z through the psi_n sum
/// N^{-1} sum_n (1-q)^{n/2} q^{n^2/2} z^n h_n(x;q) / (q;q)_n.
inline double coherent_position_series(double z, const QBase& base, double x) {
    const double q = base.q;
    double sum = 0.0, scale = 1.0, qq = 1.0;
    int small_run = 0;
    for (int n = 0; n < 400; ++n) {
        if (n > 0) {
            scale *= std::sqrt(1.0 - q) * std::pow(q, n - 0.5) * z;
            qq *= (1.0 - std::pow(q, n));
        }
        // scale = (1-q)^{n/2} q^{n^2/2} z^n after n steps
        const double term = scale * hermite_eval(n, base, x) / qq;
        sum += term;
        // h_n vanishes identically at parity-symmetric points, so a single
        // small term is not a stopping signal
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1.0)) {
            if (++small_run >= 4) break;
        } else {
            small_run = 0;
        }
    }
    return sum / std::sqrt(normalization_sq(z * z, base));
}

/// The same value through the generating-function product
/// (-t e^theta; q)_inf (t e^{-theta}; q)_inf / (-(1-q) z^2; q)_inf^{1/2}
/// with t = z sqrt(q(1-q)) and x = sinh(theta).
inline double coherent_position_product(double z, const QBase& base, double x) {
    const double q = base.q;
    const double root = std::sqrt(x * x + 1.0);
    const double ep = (x >= 0.0) ? x + root : 1.0 / (root - x);
    const double t = z * std::sqrt(q * (1.0 - q));
    const double num = q_pochhammer_inf(-t * ep, base) * q_pochhammer_inf(t / ep, base);
    return num / std::sqrt(normalization_sq(z * z, base));
}

/// Target moments m_n = q^{-n(n-1)/2} (q;q)_n of the radial problem.
struct MomentTarget {
    QBase base;

    double operator()(int n) const {
        return std::pow(base.q, -0.5 * n * (n - 1)) * q_pochhammer(base.q, base, n);
    }

    /// m_n / m_{n-1} = q^{-(n-1)}(1 - q^n), positive for q < 1
    double ratio(int n) const {
        if (n < 1) throw std::invalid_argument("MomentTarget::ratio: n must be >= 1");
        return std::pow(base.q, -(n - 1)) * (1.0 - std::pow(base.q, n));
    }
};

/// The q-lattice measure solving the moment problem: atoms at q^k / scale
/// with masses proportional to q^{k-1} / e_q(q^{k-1}), normalized so the
/// zeroth moment is one. With scale = 1 the moments are m_n; with the
/// default scale = 1 - q they are r_{n-1}^2! as required by the resolution
/// of unity.
struct WeightSolution {
    DiscreteMeasure measure;
    double I0 = 0.0;  // raw lattice mass before normalization
};

/// k_range bounds the large-point side (k = -k_range), where the masses die
/// super-geometrically; the small-point side decays only geometrically and
/// is extended automatically until its tail is below 1e-18 of the peak.
/// Throws nonconvergence_error if either tail is still fat at the cut.
inline WeightSolution weight_measure(const QBase& base, double scale, int k_range) {
    if (!base.convergent()) throw divergence_error("weight_measure: requires q < 1");
    if (!(scale > 0.0)) throw std::invalid_argument("weight_measure: scale must be > 0");
    if (k_range < 1) throw std::invalid_argument("weight_measure: k_range must be >= 1");
    const double q = base.q;
    const double lnq = std::log(q);

    const auto log_mass = [&](int k) {
        return (k - 1) * lnq - log_eq_product(std::pow(q, k - 1), base);
    };

    std::vector<double> lw;
    std::vector<int> ks;
    double lw_max = -std::numeric_limits<double>::infinity();
    for (int k = -k_range; k <= k_range; ++k) {
        ks.push_back(k);
        lw.push_back(log_mass(k));
        lw_max = std::max(lw_max, lw.back());
    }
    const double cutoff = lw_max + std::log(1e-18);
    if (lw.front() > cutoff)
        throw nonconvergence_error("weight_measure: k_range too small for the large-point tail");
    int k = k_range;
    while (lw.back() > cutoff) {
        ++k;
        if (k > k_range + 100000)
            throw nonconvergence_error("weight_measure: small-point tail did not converge");
        ks.push_back(k);
        lw.push_back(log_mass(k));
    }

    double raw_mass = 0.0;
    for (double v : lw) raw_mass += std::exp(v);

    // ascending points: k descending
    const std::size_t m = ks.size();
    std::vector<double> pts(m), wts(m), lws(m);
    const double log_norm = std::log(raw_mass);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = m - 1 - i;
        pts[i] = std::pow(q, ks[j]) / scale;
        lws[i] = lw[j] - log_norm;
        wts[i] = std::exp(lws[i]);
    }
    WeightSolution sol;
    sol.measure = DiscreteMeasure(std::move(pts), std::move(wts));
    sol.measure.log_weights = std::move(lws);
    sol.I0 = raw_mass;
    return sol;
}

inline WeightSolution weight_measure(const QBase& base, int k_range) {
    return weight_measure(base, 1.0 - base.q, k_range);
}

/// Resolution-of-unity Gram matrix: G_nn = (radial moment n) / r_{n-1}^2!
/// with the default-scale measure; the angular integral kills m != n
/// exactly, so off-diagonals are zero by construction. G must be the
/// identity.
inline Eigen::MatrixXd completeness_check(const QBase& base, int n_max, int k_range) {
    if (n_max < 0 || n_max > 15)
        throw std::invalid_argument("completeness_check: n_max must be in [0, 15]");
    const WeightSolution sol = weight_measure(base, k_range);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double rf = r_factorial(n, base);
        gram(n, n) = sol.measure.moment(n) / (rf * rf);
    }
    return gram;
}

}  // namespace qosc
