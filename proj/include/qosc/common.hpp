#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qosc {

/// Deformation base. q > 0 and q != 1 always; operations that need a
/// convergent series or infinite product additionally require q < 1 and
/// throw divergence_error otherwise.
struct QBase {
    double q;

    explicit QBase(double q_) : q(q_) {
        if (!(q > 0.0) || q == 1.0 || !std::isfinite(q))
            throw std::invalid_argument("QBase: q must be finite, positive and != 1");
    }

    bool convergent() const { return q < 1.0; }
};

/// Truncation control for series and infinite products. Evaluation fails
/// loudly (nonconvergence_error) if max_terms is reached before the tail
/// bound satisfies rel_tol.
struct SeriesPolicy {
    double rel_tol = 1e-15;
    std::size_t max_terms = 10000;

    void validate() const {
        if (!(rel_tol > 0.0))
            throw std::invalid_argument("SeriesPolicy: rel_tol must be > 0");
        if (max_terms < 1)
            throw std::invalid_argument("SeriesPolicy: max_terms must be >= 1");
    }
};

struct divergence_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct nonconvergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Atoms on a positive lattice: strictly increasing points > 0, weights >= 0.
/// log_weights duplicates weights in log space so that high-order moments of
/// wide-dynamic-range measures can be accumulated without overflow.
struct DiscreteMeasure {
    std::vector<double> points;
    std::vector<double> weights;
    std::vector<double> log_weights;  // -inf where weight underflows to 0

    DiscreteMeasure() = default;

    DiscreteMeasure(std::vector<double> pts, std::vector<double> wts)
        : points(std::move(pts)), weights(std::move(wts)) {
        if (points.size() != weights.size())
            throw std::invalid_argument("DiscreteMeasure: points/weights size mismatch");
        double prev = 0.0;
        double mass = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!(points[i] > prev))
                throw std::invalid_argument("DiscreteMeasure: points must be strictly increasing and > 0");
            if (weights[i] < 0.0)
                throw std::invalid_argument("DiscreteMeasure: weights must be >= 0");
            prev = points[i];
            mass += weights[i];
        }
        if (!std::isfinite(mass))
            throw std::invalid_argument("DiscreteMeasure: total mass must be finite");
        log_weights.resize(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i)
            log_weights[i] = weights[i] > 0.0 ? std::log(weights[i])
                                              : -std::numeric_limits<double>::infinity();
    }

    std::size_t size() const { return points.size(); }

    /// n-th moment, accumulated in log space term by term.
    double moment(int n) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!std::isfinite(log_weights[i])) continue;
            sum += std::exp(log_weights[i] + n * std::log(points[i]));
        }
        return sum;
    }

    double total_mass() const { return moment(0); }
};

// Dense polynomial helpers on monomial coefficient vectors (index = degree).

inline double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline void poly_trim(std::vector<double>& c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

inline int parity_sign(long long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace qosc
