#include <catch2/catch_amalgamated.hpp>

#include "qosc/qhermite.hpp"

using namespace qosc;

TEST_CASE("recurrence polynomials: first members") {
    QBase q(0.5);
    CHECK(hermite_recurrence(0, q) == PolyCoeffs{1.0});
    CHECK(hermite_recurrence(1, q) == PolyCoeffs{0.0, 2.0});
    auto h2 = hermite_recurrence(2, q);
    REQUIRE(h2.size() == 3);
    CHECK(h2[0] == Catch::Approx(-1.0).epsilon(1e-15));  // -q^{-1}(1-q) = -1 at q = 1/2
    CHECK(h2[1] == 0.0);
    CHECK(h2[2] == 4.0);

    // leading coefficient 2^n, degree n
    for (int n = 0; n <= 10; ++n) {
        auto h = hermite_recurrence(n, q);
        CHECK(static_cast<int>(h.size()) == n + 1);
        CHECK(h.back() == Catch::Approx(std::pow(2.0, n)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(hermite_recurrence(16, q), std::invalid_argument);
}

TEST_CASE("explicit form agrees with the recurrence") {
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        for (int n = 0; n <= 15; ++n) {
            for (double x : {-2.0, -1.0, 0.3, 2.0}) {
                const double rec = poly_eval(hermite_recurrence(n, b), x);
                const double expl = hermite_explicit(n, b, x);
                CHECK(std::abs(rec - expl) <=
                      1e-10 * std::max({1.0, std::abs(rec), std::abs(expl)}));
            }
        }
    }
    // n = 1 reduces to e^theta - e^{-theta} = 2x
    QBase q(0.5);
    for (double x : {-1.7, 0.0, 0.4, 3.0})
        CHECK(hermite_explicit(1, q, x) == Catch::Approx(2.0 * x).margin(1e-14));
    CHECK(hermite_explicit(0, q, 1.23) == 1.0);
}

TEST_CASE("value recurrence matches coefficient evaluation") {
    QBase q(0.4);
    for (int n = 0; n <= 15; ++n)
        for (double x : {-1.1, 0.75, 2.2}) {
            const double a = hermite_eval(n, q, x);
            const double c = poly_eval(hermite_recurrence(n, q), x);
            CHECK(std::abs(a - c) <= 1e-11 * std::max(1.0, std::abs(c)));
        }
}

TEST_CASE("psi normalization") {
    QBase q(0.5);
    CHECK(psi_normalized(0, q, 0.77) == 1.0);
    // normalizer at n = 1, q = 1/2 is q^{-1/2}(1-q)^{1/2} = 1
    for (double x : {-0.5, 0.25, 1.5})
        CHECK(psi_normalized(1, q, x) == Catch::Approx(2.0 * x).margin(1e-14));
    // L[psi_n^2] = 1
    auto gram = orthogonality_check(q, 10);
    OrthoSystem sys(q);
    for (int n = 0; n <= 10; ++n) {
        const double d = sys.normalizer(n);
        CHECK(gram(n, n) / (d * d) == Catch::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("ladder coefficients tie back to the structure function") {
    for (double qq : {0.3, 0.5, 0.8}) {
        OrthoSystem sys{QBase(qq)};
        for (int n = 0; n <= 20; ++n) {
            const double f = structure_catalog(AbcForm{qq, -0.5, 1.0, 2.0}, n + 1);
            CHECK(sys.r(n) * sys.r(n) == Catch::Approx(f).epsilon(1e-12));
        }
    }
}

TEST_CASE("moment functional basics") {
    QBase q(0.5);
    auto L = moment_functional(q, 10);
    CHECK(L(0) == 1.0);
    CHECK(L(1) == 0.0);
    CHECK(L(2) == Catch::Approx(0.25).epsilon(1e-13));  // q^{-1}(1-q)/4
    for (int k = 1; k <= 10; k += 2) CHECK(L(2 * k - 1) == 0.0);
    CHECK_THROWS_AS(L(100), std::out_of_range);
}

TEST_CASE("moments are exact under dimension bumps") {
    for (double qq : {0.3, 0.8}) {
        QBase b(qq);
        auto small = moment_functional(b, 8);
        auto big = moment_functional(b, 8, 5);
        for (int k = 0; k <= 16; ++k)
            CHECK(std::abs(small(k) - big(k)) <= 1e-12 * std::max(1.0, std::abs(big(k))));
    }
}

TEST_CASE("moment functional equals the rescaled ladder-operator route") {
    // moments of the h-variable equal c^k <e0|Q^k|e0> with Q built from r_n
    // and c = q^{-1/2}(1-q)^{1/2}/2, fixing the variable-change direction
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        OrthoSystem sys(b);
        const int n_max = 8, dim = n_max + 2;
        Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(dim, dim);
        for (int j = 0; j + 1 < dim; ++j) Q(j, j + 1) = Q(j + 1, j) = sys.r(j);
        const double c = 0.5 * std::pow(qq, -0.5) * std::sqrt(1.0 - qq);
        auto L = moment_functional(b, n_max);
        Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
        v(0) = 1.0;
        double ck = 1.0;
        for (int k = 1; k <= 2 * n_max; ++k) {
            v = Q * v;
            ck *= c;
            CHECK(std::abs(L(k) - ck * v(0)) <= 1e-11 * std::max(1.0, std::abs(L(k))));
        }
    }
}

TEST_CASE("Gram matrix reproduces the orthogonality relation") {
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        auto gram = orthogonality_check(b, 10);
        CHECK(gram(0, 0) == Catch::Approx(1.0).epsilon(1e-12));
        for (int n = 0; n <= 10; ++n) {
            const double expected =
                std::pow(qq, -0.5 * n * (n + 1)) * q_pochhammer(qq, b, n);
            CHECK(std::abs(gram(n, n) - expected) <= 1e-10 * expected);
        }
        for (int m = 0; m <= 10; ++m)
            for (int n = m + 1; n <= 10; ++n)
                CHECK(std::abs(gram(m, n)) <= 1e-10 * std::sqrt(gram(m, m) * gram(n, n)));
    }
    QBase q(0.5);
    CHECK(orthogonality_check(q, 1)(1, 1) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(orthogonality_check(q, 1)(0, 1) == Catch::Approx(0.0).margin(1e-14));
    CHECK_THROWS_AS(orthogonality_check(q, 13), std::invalid_argument);
}

TEST_CASE("psi three-term recurrence in the ladder variable") {
    // x_P psi_n(x_h) = r_n psi_{n+1}(x_h) + r_{n-1} psi_{n-1}(x_h)
    // with x_h = c x_P, c = q^{-1/2}(1-q)^{1/2}/2
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        OrthoSystem sys(b);
        const double c = 0.5 * std::pow(qq, -0.5) * std::sqrt(1.0 - qq);
        for (int n = 1; n <= 10; ++n) {
            for (double xp : {-1.3, 0.4, 2.1}) {
                const double xh = c * xp;
                const double lhs = xp * psi_normalized(n, b, xh);
                const double rhs = sys.r(n) * psi_normalized(n + 1, b, xh) +
                                   sys.r(n - 1) * psi_normalized(n - 1, b, xh);
                CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}
