#pragma once

// Dense matrix realizations of the unified oscillator on truncated weight
// bases, numerical verification of the defining relations and of the cubic
// Casimir, and the coordinate realization of the two-parameter family on
// polynomial coefficient vectors.
//
// Matrices are dense on purpose: every operator here is diagonal or
// tridiagonal and the dimensions stay at desk scale, so dense keeps the
// verification code auditable.

#include <Eigen/Dense>
#include <map>

#include "qosc/repclass.hpp"

namespace qosc {

/// a, a+, N, K on a dim-dimensional weight basis. a+ is the exact transpose
/// of a; N and K are diagonal, K carrying the alternating grading
/// (-1)^n B/(2 nu) (or the bare parity (-1)^n when nu = 0).
struct OperatorQuadruple {
    int dim = 0;
    double kappa0 = 0.0;
    int n_offset = 0;  // basis state j represents level n_offset + j
    Eigen::MatrixXd a, a_dag, N, K;
};

/// Truncated lowest-weight module from a weight table: a|n> = sqrt(lambda_n)|n-1>.
/// lambda must cover indices 0..dim-1; k0_scale is the K eigenvalue on |0>.
inline OperatorQuadruple build_lowest_weight(const std::vector<double>& lambda, double kappa0,
                                             double k0_scale, int dim) {
    if (dim < 2) throw std::invalid_argument("build_lowest_weight: dim must be >= 2");
    if (static_cast<int>(lambda.size()) < dim)
        throw std::invalid_argument("build_lowest_weight: weight table shorter than dim");
    for (int n = 0; n < dim; ++n)
        if (lambda[n] < 0.0)
            throw std::invalid_argument("build_lowest_weight: negative weight lambda_" +
                                        std::to_string(n) + " = " + std::to_string(lambda[n]));
    OperatorQuadruple quad;
    quad.dim = dim;
    quad.kappa0 = kappa0;
    quad.a = Eigen::MatrixXd::Zero(dim, dim);
    quad.N = Eigen::MatrixXd::Zero(dim, dim);
    quad.K = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) quad.a(n - 1, n) = std::sqrt(lambda[n]);
    for (int n = 0; n < dim; ++n) {
        quad.N(n, n) = kappa0 + n;
        quad.K(n, n) = parity_sign(n) * k0_scale;
    }
    quad.a_dag = quad.a.transpose();
    return quad;
}

inline OperatorQuadruple build_lowest_weight(const StructureSeq& seq, int dim) {
    return build_lowest_weight(seq.table(dim - 1), 0.0, 1.0, dim);
}

inline OperatorQuadruple build_lowest_weight(const RepParams& p, int dim) {
    const double k0 = (p.unified.nu != 0.0) ? p.B / (2.0 * p.unified.nu) : 1.0;
    return build_lowest_weight(lambda_recurrence(p, 0, dim).values, p.kappa0, k0, dim);
}

/// Exact finite modules (the one- and two-dimensional cases). The relations
/// hold on the full matrices, no truncation edge. K^2 = I additionally
/// requires |B| = 2|nu|, which the caller controls through nu.
inline OperatorQuadruple build_finite(const RepClassification& cls) {
    const RepParams& p = cls.params;
    const UnifiedParams& u = p.unified;
    if (u.nu == 0.0)
        throw std::invalid_argument("build_finite: nu must be != 0 to realize K");
    if (cls.rep_case == RepCase::OneDim) {
        OperatorQuadruple quad;
        quad.dim = 1;
        quad.kappa0 = p.kappa0;
        quad.n_offset = cls.window.lo.value_or(0);
        quad.a = quad.a_dag = Eigen::MatrixXd::Zero(1, 1);
        quad.N = Eigen::MatrixXd::Constant(1, 1, p.kappa0 + quad.n_offset);
        quad.K = Eigen::MatrixXd::Constant(
            1, 1, parity_sign(quad.n_offset) * p.B / (2.0 * u.nu));
        return quad;
    }
    if (cls.rep_case != RepCase::TwoDim_iii && cls.rep_case != RepCase::TwoDim_iv)
        throw std::invalid_argument("build_finite: classification is not a finite 1- or 2-dim case");

    const int lo = cls.window.lo.value();
    const double lam = cls.lambda.at(lo + 1);  // the single interior weight
    if (lam <= 0.0)
        throw std::invalid_argument("build_finite: nonpositive radicand for the off-diagonal");
    OperatorQuadruple quad;
    quad.dim = 2;
    quad.kappa0 = p.kappa0;
    quad.n_offset = lo;
    quad.a = Eigen::MatrixXd::Zero(2, 2);
    quad.a(0, 1) = std::sqrt(lam);
    quad.a_dag = quad.a.transpose();
    quad.N = Eigen::MatrixXd::Zero(2, 2);
    quad.K = Eigen::MatrixXd::Zero(2, 2);
    for (int j = 0; j < 2; ++j) {
        quad.N(j, j) = p.kappa0 + lo + j;
        quad.K(j, j) = parity_sign(lo + j) * p.B / (2.0 * u.nu);
    }
    return quad;
}

/// Max-norm residuals of the defining relations. On truncated modules the
/// top basis vector's image under a+ leaves the space, so everything is
/// evaluated on the interior block 0..dim-2; exact finite modules are
/// checked on the full matrices.
struct ResidualReport {
    double relation_residual = 0.0;
    std::map<std::string, double> commutator_residuals;
    std::map<std::string, double> casimir_residuals;
    int block_dim = 0;
};

namespace detail {

inline double block_max_norm(const Eigen::MatrixXd& m, int block) {
    return m.topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

inline Eigen::MatrixXd q_power_of_n(const OperatorQuadruple& quad, double expo_scale,
                                    double q, double shift_beta) {
    // diag q^{expo_scale * N + shift_beta}
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(quad.dim, quad.dim);
    for (int j = 0; j < quad.dim; ++j)
        out(j, j) = std::pow(q, expo_scale * quad.N(j, j) + shift_beta);
    return out;
}

}  // namespace detail

inline ResidualReport relation_residual(const OperatorQuadruple& quad, const UnifiedParams& u,
                                        bool truncated = true) {
    if (truncated && quad.dim < 3)
        throw std::invalid_argument("relation_residual: truncated check needs dim >= 3");
    const int block = truncated ? quad.dim - 1 : quad.dim;
    const double qg = std::pow(u.q, u.gamma);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(quad.dim, quad.dim);
    const Eigen::MatrixXd rhs =
        (I + 2.0 * u.nu * quad.K) * detail::q_power_of_n(quad, u.alpha, u.q, u.beta);
    const Eigen::MatrixXd main =
        quad.a * quad.a_dag - qg * quad.a_dag * quad.a - rhs;

    ResidualReport rep;
    rep.block_dim = block;
    rep.relation_residual = detail::block_max_norm(main, block);
    auto comm = [&](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
        return x * y - y * x;
    };
    rep.commutator_residuals["[N,a]+a"] =
        detail::block_max_norm(comm(quad.N, quad.a) + quad.a, block);
    rep.commutator_residuals["[N,a+]-a+"] =
        detail::block_max_norm(comm(quad.N, quad.a_dag) - quad.a_dag, block);
    rep.commutator_residuals["Ka+aK"] =
        detail::block_max_norm(quad.K * quad.a + quad.a * quad.K, block);
    rep.commutator_residuals["Ka+ + a+K"] =
        detail::block_max_norm(quad.K * quad.a_dag + quad.a_dag * quad.K, block);
    rep.commutator_residuals["K^2-I"] =
        detail::block_max_norm(quad.K * quad.K - I, block);
    return rep;
}

/// The cubic invariant C3 = q^{-gamma N} (D(N) - nu E(N) K - a+ a) as a
/// matrix. D and E are the closed forms from repclass; the K term enters
/// with the sign that makes [C3, a] vanish under the grading
/// K|n> = (-1)^n B/(2 nu)|n>.
inline Eigen::MatrixXd casimir_c3_matrix(const OperatorQuadruple& quad,
                                         const UnifiedParams& u) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(quad.dim, quad.dim);
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(quad.dim, quad.dim);
    for (int j = 0; j < quad.dim; ++j) {
        D(j, j) = casimir_d(u, quad.N(j, j));
        E(j, j) = casimir_e(u, quad.N(j, j));
    }
    const Eigen::MatrixXd inner = D - u.nu * E * quad.K - quad.a_dag * quad.a;
    return detail::q_power_of_n(quad, -u.gamma, u.q, 0.0) * inner;
}

struct CasimirResidualReport {
    double commutant_residual = 0.0;  // max of ||[C3,a]||, ||[C3,a+]|| on the interior
    double diagonal_spread = 0.0;     // constancy of C3 across the module
};

inline CasimirResidualReport casimir_commutant_residual(const OperatorQuadruple& quad,
                                                        const UnifiedParams& u,
                                                        bool truncated = true) {
    if (truncated && quad.dim < 4)
        throw std::invalid_argument("casimir_commutant_residual: needs dim >= 4");
    const int block = truncated ? quad.dim - 1 : quad.dim;
    const Eigen::MatrixXd C3 = casimir_c3_matrix(quad, u);
    CasimirResidualReport rep;
    rep.commutant_residual =
        std::max(detail::block_max_norm(C3 * quad.a - quad.a * C3, block),
                 detail::block_max_norm(C3 * quad.a_dag - quad.a_dag * C3, block));
    double lo = C3(0, 0), hi = C3(0, 0);
    for (int j = 0; j < quad.dim; ++j) {
        lo = std::min(lo, C3(j, j));
        hi = std::max(hi, C3(j, j));
    }
    rep.diagonal_spread = hi - lo;
    return rep;
}

// ---------------------------------------------------------------------------
// Coordinate realization of the two-parameter family
// ---------------------------------------------------------------------------

/// Monomial coefficient vector in z, trailing zeros trimmed.
struct PolyVector {
    std::vector<double> coeffs;

    PolyVector() = default;
    explicit PolyVector(std::vector<double> c) : coeffs(std::move(c)) { poly_trim(coeffs); }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    double operator[](int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs.size())) ? coeffs[k] : 0.0;
    }
};

/// a -> D, a+ -> multiplication by z^{l/alpha}, N -> z d/dz, acting on
/// polynomials. Requires l/alpha to be a nonnegative integer; monomials of
/// degree below l/alpha are annihilated by D, matching a|0> = 0 on the
/// lowest-weight tower.
class TwoParamRealization {
  public:
    explicit TwoParamRealization(const TwoParamParams& t) : t_(t) {
        t.validate();
        const double s_real = static_cast<double>(t.l) / t.alpha;
        const double s_round = std::round(s_real);
        if (s_round < 0.0 || std::abs(s_real - s_round) > 1e-9)
            throw std::invalid_argument(
                "TwoParamRealization: l/alpha must be a nonnegative integer");
        s_ = static_cast<int>(s_round);
    }

    int step() const { return s_; }

    PolyVector apply_a(const PolyVector& f) const {
        std::vector<double> out(f.coeffs.size(), 0.0);
        for (int n = s_; n <= f.degree(); ++n)
            out[static_cast<std::size_t>(n - s_)] = structure_two_param(t_, n) * f[n];
        return PolyVector(std::move(out));
    }

    PolyVector apply_a_dag(const PolyVector& f) const {
        if (f.is_zero()) return {};
        std::vector<double> out(f.coeffs.size() + static_cast<std::size_t>(s_), 0.0);
        for (int n = 0; n <= f.degree(); ++n) out[static_cast<std::size_t>(n + s_)] = f[n];
        return PolyVector(std::move(out));
    }

    PolyVector apply_N(const PolyVector& f) const {
        std::vector<double> out(f.coeffs.size(), 0.0);
        for (int n = 0; n <= f.degree(); ++n) out[static_cast<std::size_t>(n)] = n * f[n];
        return PolyVector(std::move(out));
    }

  private:
    TwoParamParams t_;
    int s_;
};

/// Max normalized residual of the defining relations on monomials.
/// The two q/p-relations are exact on degrees >= l/alpha (below that D
/// annihilates and the identities only survive for beta = 0); the
/// N-commutators hold from degree 0. Top degrees that would leave the
/// truncated space are excluded on both ends.
inline double coordinate_realization_residual(const TwoParamParams& t, int degree_cap) {
    TwoParamRealization real(t);
    const int s = real.step();
    if (degree_cap < s + 2)
        throw std::invalid_argument("coordinate_realization_residual: degree_cap too small");

    const double ql = std::pow(t.q, t.l), pl = std::pow(t.p, -t.l);
    double worst = 0.0;
    auto track = [&](double diff, double rhs) {
        worst = std::max(worst, std::abs(diff) / std::max(1.0, std::abs(rhs)));
    };

    for (int n = 0; n <= degree_cap - s; ++n) {
        std::vector<double> mono(static_cast<std::size_t>(n + 1), 0.0);
        mono.back() = 1.0;
        const PolyVector zn(std::move(mono));

        const PolyVector up = real.apply_a_dag(zn);
        const PolyVector aa_dag = real.apply_a(up);
        const PolyVector a_dag_a = real.apply_a_dag(real.apply_a(zn));

        if (n >= s) {
            const double lhs_q = aa_dag[n] - ql * a_dag_a[n];
            const double rhs_q = std::pow(t.p, -(t.alpha * n + t.beta));
            track(lhs_q - rhs_q, rhs_q);
            const double lhs_p = aa_dag[n] - pl * a_dag_a[n];
            const double rhs_p = std::pow(t.q, t.alpha * n + t.beta);
            track(lhs_p - rhs_p, rhs_p);
        }

        // [N, a+] = (l/alpha) a+ and [N, a] = -(l/alpha) a on every monomial
        const PolyVector n_up = real.apply_N(up);
        const PolyVector up_n = real.apply_a_dag(real.apply_N(zn));
        track(n_up[n + s] - up_n[n + s] - s * up[n + s], 1.0);

        const PolyVector an = real.apply_a(zn);
        const PolyVector n_a = real.apply_N(an);
        const PolyVector a_n = real.apply_a(real.apply_N(zn));
        if (n >= s) track(n_a[n - s] - a_n[n - s] + s * an[n - s], 1.0);
    }
    return worst;
}

/// Eigenvalues of a symmetric matrix, ascending.
inline std::vector<double> spectrum(const Eigen::MatrixXd& H) {
    if (H.rows() != H.cols())
        throw std::invalid_argument("spectrum: matrix must be square");
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("spectrum: matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace qosc
