#include <catch2/catch_amalgamated.hpp>

#include "qosc/coherent.hpp"

using namespace qosc;
using Catch::Approx;

namespace {
double pochhammer_oracle(double a, double q) {
    double prod = 1.0, aq = a;
    for (int k = 0; k < 4000 && std::abs(aq) > 1e-18; ++k) {
        prod *= (1.0 - aq);
        aq *= q;
    }
    return prod;
}
}  // namespace

TEST_CASE("r_factorial") {
    QBase q(0.5);
    CHECK(r_factorial(0, q) == 1.0);
    CHECK(r_factorial(1, q) == Approx(1.0).epsilon(1e-14));
    CHECK(r_factorial(2, q) == Approx(std::sqrt(3.0)).epsilon(1e-13));
    for (double qq : {0.3, 0.8})
        for (int n = 0; n <= 25; ++n) CHECK(r_factorial(n, QBase(qq)) > 0.0);
}

TEST_CASE("normalization_sq") {
    QBase q(0.5);
    CHECK(normalization_sq(0.0, q) == Approx(1.0).epsilon(1e-15));
    CHECK(normalization_sq(1.0, q) == Approx(pochhammer_oracle(-0.5, 0.5)).epsilon(1e-12));
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        for (double x : {0.0, 0.5, 1.0, 2.5, 5.0, 10.0}) {
            const double v = normalization_sq(x, b);
            CHECK(v == Approx(pochhammer_oracle(-(1.0 - qq) * x, qq)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(normalization_sq(-1.0, q), std::invalid_argument);
    CHECK_THROWS_AS(normalization_sq(1.0, QBase(1.5)), divergence_error);
}

TEST_CASE("coherent state at z = 0 is the vacuum") {
    auto st = coherent_state(0.0, QBase(0.5));
    CHECK(std::abs(st.coeffs[0] - std::complex<double>(1.0, 0.0)) < 1e-15);
    for (std::size_t n = 1; n < st.coeffs.size(); ++n)
        CHECK(std::abs(st.coeffs[n]) == 0.0);
}

TEST_CASE("coherent state is normalized and matches the closed-form norm") {
    QBase q(0.5);
    for (std::complex<double> z : {std::complex<double>(1.0, 0.5),
                                   std::complex<double>(-2.0, 1.0),
                                   std::complex<double>(0.0, 3.0)}) {
        auto st = coherent_state(z, q);
        double mass = 0.0;
        for (auto c : st.coeffs) mass += std::norm(c);
        CHECK(mass == Approx(1.0).epsilon(1e-12));
        CHECK(st.norm_sq == Approx(normalization_sq(std::norm(z), q)).epsilon(1e-11));
    }
}

TEST_CASE("eigen-residual of the annihilation operator") {
    QBase q(0.5);
    const std::complex<double> z(1.0, 0.5);
    auto st = coherent_state(z, q);
    CHECK(coherent_eigen_residual(st) < 1e-8);

    // independent route through the truncated matrix representation
    const int dim = static_cast<int>(st.coeffs.size());
    OrthoSystem sys(q);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) A(n - 1, n) = sys.r(n - 1);
    Eigen::VectorXcd c(dim);
    for (int n = 0; n < dim; ++n) c(n) = st.coeffs[static_cast<std::size_t>(n)];
    const double res = (A * c - z * c).norm();
    CHECK(res < 1e-8);
    CHECK(res == Approx(coherent_eigen_residual(st)).margin(1e-12));

    for (std::complex<double> zz : {std::complex<double>(3.0, 0.0),
                                    std::complex<double>(0.0, 3.0),
                                    std::complex<double>(-3.0, 0.0),
                                    std::complex<double>(2.0, 2.0),
                                    std::complex<double>(0.5, -1.7)}) {
        CHECK(coherent_eigen_residual(coherent_state(zz, q)) < 1e-8);
    }
}

TEST_CASE("coherent states are never orthogonal (witness)") {
    QBase q(0.5);
    auto s1 = coherent_state({1.0, 0.0}, q);
    auto s2 = coherent_state({-1.0, 0.5}, q);
    auto s3 = coherent_state({0.0, 2.0}, q);
    CHECK(std::abs(coherent_overlap(s1, s2)) > 1e-6);
    CHECK(std::abs(coherent_overlap(s1, s3)) > 1e-6);
    CHECK(std::abs(coherent_overlap(s2, s3)) > 1e-6);
    CHECK(std::abs(coherent_overlap(s1, s1) - std::complex<double>(1.0, 0.0)) < 1e-12);
}

TEST_CASE("position representation: series equals product form") {
    QBase q(0.5);
    for (double z : {0.3, 1.0, -1.2, 2.0}) {
        for (double x : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
            const double s = coherent_position_series(z, q, x);
            const double p = coherent_position_product(z, q, x);
            CHECK(std::abs(s - p) <= 1e-8 * std::max(1.0, std::abs(p)));
        }
    }
}

TEST_CASE("moment targets") {
    MomentTarget m{QBase(0.5)};
    CHECK(m(0) == 1.0);
    CHECK(m(1) == Approx(0.5).epsilon(1e-15));
    CHECK(m(2) == Approx(0.75).epsilon(1e-14));  // q^{-1}(q;q)_2
    for (int n = 1; n <= 20; ++n) {
        CHECK(m.ratio(n) > 0.0);
        CHECK(m(n) / m(n - 1) == Approx(m.ratio(n)).epsilon(1e-12));
    }
}

TEST_CASE("lattice measure reproduces the moments") {
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        auto sol = weight_measure(b, 1.0, 60);
        MomentTarget target{b};
        CHECK(sol.measure.moment(0) == Approx(1.0).epsilon(1e-13));
        for (int n = 0; n <= 20; ++n) {
            const double got = sol.measure.moment(n);
            CHECK(std::abs(got - target(n)) <= 1e-8 * target(n));
        }
        // ratio recurrence, the integration-by-parts identity in measure form
        for (int n = 1; n <= 20; ++n) {
            const double got = sol.measure.moment(n) / sol.measure.moment(n - 1);
            CHECK(got == Approx(target.ratio(n)).epsilon(1e-9));
        }
        CHECK(sol.I0 > 0.0);
    }
}

TEST_CASE("weight_measure specific values at q = 1/2") {
    QBase q(0.5);
    auto sol = weight_measure(q, 1.0, 60);
    CHECK(sol.measure.moment(1) == Approx(0.5).epsilon(1e-10));
    CHECK(sol.measure.moment(2) == Approx(0.75).epsilon(1e-10));
}

TEST_CASE("weight_measure error paths") {
    CHECK_THROWS_AS(weight_measure(QBase(1.5), 1.0, 60), divergence_error);
    CHECK_THROWS_AS(weight_measure(QBase(0.5), -1.0, 60), std::invalid_argument);
    CHECK_THROWS_AS(weight_measure(QBase(0.5), 1.0, 0), std::invalid_argument);
    // q near 1: the large-point tail is still fat at a small k_range
    CHECK_THROWS_AS(weight_measure(QBase(0.99), 1.0, 3), nonconvergence_error);
}

TEST_CASE("resolution of unity") {
    for (double qq : {0.3, 0.5, 0.8}) {
        auto gram = completeness_check(QBase(qq), 10, 60);
        for (int n = 0; n <= 10; ++n) CHECK(std::abs(gram(n, n) - 1.0) <= 1e-6);
        for (int m = 0; m <= 10; ++m)
            for (int n = 0; n <= 10; ++n)
                if (m != n) CHECK(gram(m, n) == 0.0);
    }
    CHECK_THROWS_AS(completeness_check(QBase(0.5), 16, 60), std::invalid_argument);
}
