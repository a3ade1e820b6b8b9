#pragma once

// The unified five-parameter deformed oscillator: its structure function in
// closed and recurrence form, the catalog of named one- and two-parameter
// deformations it subsumes, and the level bracket with its generating
// function.
//
// The defining relation is  a a+ - q^gamma a+ a = (1 + 2 nu K) q^(alpha N + beta)
// with K the parity involution; the structure function f obeys
//   f(n+1) - q^gamma f(n) = (1 + 2 nu (-1)^n) q^(alpha n + beta),  f(0) = 0.

#include <variant>

#include "qosc/qcalc.hpp"

namespace qosc {

struct UnifiedParams {
    double q;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double nu = 0.0;

    void validate() const {
        if (!(q > 0.0) || q == 1.0)
            throw std::invalid_argument("UnifiedParams: q must be positive and != 1");
        for (double v : {alpha, beta, gamma, nu})
            if (!std::isfinite(v))
                throw std::invalid_argument("UnifiedParams: parameters must be finite");
    }

    /// Closed forms divide by q^gamma - q^alpha; the degenerate direction is
    /// detected relatively and served by the alpha == gamma branch.
    bool equal_exponents() const {
        const double qa = std::pow(q, alpha), qg = std::pow(q, gamma);
        return std::abs(qa - qg) < 1e-12 * (qa + qg);
    }
};

struct TwoParamParams {
    double p;
    double q;
    double alpha;
    double beta;
    int l;

    void validate() const {
        if (!(p > 0.0) || !(q > 0.0))
            throw std::invalid_argument("TwoParamParams: p, q must be > 0");
        if (alpha == 0.0)
            throw std::invalid_argument("TwoParamParams: alpha must be != 0");
    }

    double denom() const { return std::pow(p, -l) - std::pow(q, l); }
};

// ---------------------------------------------------------------------------
// Named deformations
// ---------------------------------------------------------------------------

struct ArikCoon {
    double q;
};
struct BiedenharnMacfarlane {
    double q;
};
struct ChungEtAl {
    double q, alpha, beta;
};
struct BDY {
    double q, alpha, beta, gamma;
};
struct NuModified {
    double nu;
};
struct QNu {
    double q, nu;
};
struct Unified {
    UnifiedParams params;
};
struct AbcForm {
    double q, a, b, c;
};
struct TwoParam {
    TwoParamParams params;
};

using DeformationKind =
    std::variant<ArikCoon, BiedenharnMacfarlane, ChungEtAl, BDY, NuModified, QNu, Unified,
                 AbcForm, TwoParam>;

/// Reparametrization (q; a,b,c) -> (q; alpha,beta,gamma; 0):
/// alpha = 2a+c-1, beta = 2a+b, gamma = 2a, whose structure function is
/// q^{2an+b} (1 - q'^n)/(1 - q') with q' = q^{c-1}.
inline UnifiedParams abc_to_unified(double q, double a, double b, double c) {
    UnifiedParams u{q, 2.0 * a + c - 1.0, 2.0 * a + b, 2.0 * a, 0.0};
    u.validate();
    return u;
}

// ---------------------------------------------------------------------------
// Structure functions
// ---------------------------------------------------------------------------

/// f(n) in closed form. For alpha != gamma:
///   f(n) = q^beta [ (q^{gn} - q^{an})/(q^g - q^a)
///                   + 2 nu (q^{gn} - (-1)^n q^{an})/(q^g + q^a) ],
/// and for alpha == gamma:
///   f(n) = q^{g(n-1)+beta} ( n + nu (1 - (-1)^n) ).
inline double structure_unified(const UnifiedParams& u, int n) {
    if (n < 0) throw std::invalid_argument("structure_unified: n must be >= 0");
    if (n == 0) return 0.0;
    const double qb = std::pow(u.q, u.beta);
    if (u.equal_exponents()) {
        const double par = static_cast<double>(n) + u.nu * (1 - parity_sign(n));
        return std::pow(u.q, u.gamma * (n - 1)) * qb * par;
    }
    const double qa = std::pow(u.q, u.alpha), qg = std::pow(u.q, u.gamma);
    const double qan = std::pow(u.q, u.alpha * n), qgn = std::pow(u.q, u.gamma * n);
    const double sym = (qgn - qan) / (qg - qa);
    const double par = (qgn - parity_sign(n) * qan) / (qg + qa);
    return qb * (sym + 2.0 * u.nu * par);
}

/// f(0..n_max) by iterating the defining recurrence from f(0) = 0.
/// Independent of structure_unified; the two must agree.
inline std::vector<double> structure_recurrence(const UnifiedParams& u, int n_max) {
    if (n_max < 0) throw std::invalid_argument("structure_recurrence: n_max must be >= 0");
    const double qg = std::pow(u.q, u.gamma), qa = std::pow(u.q, u.alpha);
    const double qb = std::pow(u.q, u.beta);
    std::vector<double> f(n_max + 1, 0.0);
    double qan = qb;  // q^{alpha k + beta} at k = 0
    for (int k = 0; k < n_max; ++k) {
        f[k + 1] = qg * f[k] + (1.0 + 2.0 * u.nu * parity_sign(k)) * qan;
        qan *= qa;
    }
    return f;
}

/// Two-parameter structure function
/// f(n) = (p^{-alpha n - beta} - q^{alpha n + beta}) / (p^{-l} - q^{l}).
/// Does not vanish at n = 0 unless beta = 0.
inline double structure_two_param(const TwoParamParams& t, int n) {
    if (n < 0) throw std::invalid_argument("structure_two_param: n must be >= 0");
    t.validate();
    const double den = t.denom();
    if (std::abs(den) < 1e-14 * (std::pow(t.p, -t.l) + std::pow(t.q, t.l)))
        throw std::invalid_argument("structure_two_param: degenerate denominator p^-l = q^l");
    const double e = t.alpha * n + t.beta;
    return (std::pow(t.p, -e) - std::pow(t.q, e)) / den;
}

/// The published structure function of each named deformation.
inline double structure_catalog(const DeformationKind& kind, int n) {
    if (n < 0) throw std::invalid_argument("structure_catalog: n must be >= 0");
    return std::visit(
        [n](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ArikCoon>) {
                return q_number(QBase(k.q), n);
            } else if constexpr (std::is_same_v<T, BiedenharnMacfarlane>) {
                if (n == 0) return 0.0;
                return (std::pow(k.q, n) - std::pow(k.q, -n)) / (k.q - 1.0 / k.q);
            } else if constexpr (std::is_same_v<T, ChungEtAl>) {
                if (n == 0) return 0.0;
                const double qa = std::pow(k.q, k.alpha);
                const double qb = std::pow(k.q, k.beta);
                if (std::abs(qa - k.q) < 1e-12 * (qa + k.q))
                    return n * std::pow(k.q, n - 1.0) * qb;
                return qb * (std::pow(k.q, k.alpha * n) - std::pow(k.q, n)) / (qa - k.q);
            } else if constexpr (std::is_same_v<T, BDY>) {
                return structure_unified({k.q, k.alpha, k.beta, k.gamma, 0.0}, n);
            } else if constexpr (std::is_same_v<T, NuModified>) {
                // commutator form [a,a+] = 1 + 2 nu K with K|n> = (-1)^n |n>,
                // lowest-weight initial value f(0) = 0
                return n + k.nu * (1 - parity_sign(n));
            } else if constexpr (std::is_same_v<T, QNu>) {
                if (n == 0) return 0.0;
                const double qn = std::pow(k.q, n), qmn = std::pow(k.q, -n);
                return (qn - qmn) / (k.q - 1.0 / k.q) +
                       2.0 * k.nu * (qn - parity_sign(n) * qmn) / (k.q + 1.0 / k.q);
            } else if constexpr (std::is_same_v<T, Unified>) {
                return structure_unified(k.params, n);
            } else if constexpr (std::is_same_v<T, AbcForm>) {
                return structure_unified(abc_to_unified(k.q, k.a, k.b, k.c), n);
            } else {
                return structure_two_param(k.params, n);
            }
        },
        kind);
}

/// UnifiedParams under which structure_unified reproduces structure_catalog.
/// Defined for everything except the two-parameter family.
inline UnifiedParams unified_embedding(const DeformationKind& kind) {
    return std::visit(
        [](const auto& k) -> UnifiedParams {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ArikCoon>) {
                return {k.q, 0.0, 0.0, 1.0, 0.0};
            } else if constexpr (std::is_same_v<T, BiedenharnMacfarlane>) {
                return {k.q, -1.0, 0.0, 1.0, 0.0};
            } else if constexpr (std::is_same_v<T, ChungEtAl>) {
                return {k.q, k.alpha, k.beta, 1.0, 0.0};
            } else if constexpr (std::is_same_v<T, BDY>) {
                return {k.q, k.alpha, k.beta, k.gamma, 0.0};
            } else if constexpr (std::is_same_v<T, NuModified>) {
                return {0.5, 0.0, 0.0, 0.0, k.nu};  // alpha == gamma: q drops out
            } else if constexpr (std::is_same_v<T, QNu>) {
                return {k.q, -1.0, 0.0, 1.0, k.nu};
            } else if constexpr (std::is_same_v<T, Unified>) {
                return k.params;
            } else if constexpr (std::is_same_v<T, AbcForm>) {
                return abc_to_unified(k.q, k.a, k.b, k.c);
            } else {
                throw std::invalid_argument(
                    "unified_embedding: two-parameter family has no unified form");
            }
        },
        kind);
}

/// Evaluation strategy for StructureSeq.
enum class StructureMethod { closed_form, recurrence };

/// A lazily evaluable structure-function sequence that remembers which
/// evaluation route produced it.
class StructureSeq {
  public:
    StructureSeq(DeformationKind kind, StructureMethod method = StructureMethod::closed_form)
        : kind_(std::move(kind)), method_(method) {}

    double operator()(int n) const {
        if (method_ == StructureMethod::closed_form || !has_unified())
            return structure_catalog(kind_, n);
        return structure_recurrence(unified_embedding(kind_), n)[n];
    }

    std::vector<double> table(int n_max) const {
        if (method_ == StructureMethod::recurrence && has_unified())
            return structure_recurrence(unified_embedding(kind_), n_max);
        std::vector<double> out(n_max + 1);
        for (int n = 0; n <= n_max; ++n) out[n] = structure_catalog(kind_, n);
        return out;
    }

    const DeformationKind& kind() const { return kind_; }
    StructureMethod method() const { return method_; }

    bool has_unified() const { return !std::holds_alternative<TwoParam>(kind_); }

  private:
    DeformationKind kind_;
    StructureMethod method_;
};

// ---------------------------------------------------------------------------
// Level bracket [n; alpha, gamma; nu K] and its generating function
// ---------------------------------------------------------------------------

/// [n; alpha, gamma; nu K] with K replaced by its eigenvalue k_eigen = +-1.
/// On a lowest-weight module with K|0> = +|0>,  f(n) = q^beta [n; a, g; nu].
inline double bracket(const UnifiedParams& u, int n, int k_eigen) {
    if (n < 1) throw std::invalid_argument("bracket: n must be >= 1");
    if (k_eigen != 1 && k_eigen != -1)
        throw std::invalid_argument("bracket: k_eigen must be +-1");
    if (u.equal_exponents()) {
        const double lead = std::pow(u.q, u.alpha * (n - 1));
        return n * lead + 2.0 * u.nu * k_eigen * lead * 0.5 * (1 - parity_sign(n));
    }
    const double qa = std::pow(u.q, u.alpha), qg = std::pow(u.q, u.gamma);
    const double qan = std::pow(u.q, u.alpha * n), qgn = std::pow(u.q, u.gamma * n);
    return (qgn - qan) / (qg - qa) +
           2.0 * u.nu * k_eigen * (qgn - parity_sign(n) * qan) / (qg + qa);
}

/// |sum_{n<=n_terms} [n] z^n  -  closed rational form|. Test oracle only.
inline double bracket_generating_check(const UnifiedParams& u, int k_eigen, double z,
                                       int n_terms) {
    const double qa = std::pow(u.q, u.alpha), qg = std::pow(u.q, u.gamma);
    if (std::abs(qg * z) >= 1.0 || std::abs(qa * z) >= 1.0)
        throw divergence_error("bracket_generating_check: |q^a z|, |q^g z| must be < 1");
    double sum = 0.0, zn = z;
    for (int n = 1; n <= n_terms; ++n) {
        sum += bracket(u, n, k_eigen) * zn;
        zn *= z;
    }
    double closed;
    if (u.equal_exponents()) {
        closed = z / ((1.0 - qg * z) * (1.0 - qg * z)) +
                 2.0 * u.nu * k_eigen * z / (1.0 - qg * qg * z * z);
    } else {
        closed = z / (1.0 - qg * z) *
                 (1.0 / (1.0 - qa * z) + 2.0 * u.nu * k_eigen / (1.0 + qa * z));
    }
    return std::abs(sum - closed);
}

}  // namespace qosc
