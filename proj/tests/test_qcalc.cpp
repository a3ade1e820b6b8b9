#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>

#include "qosc/qcalc.hpp"

using namespace qosc;

namespace {

// Independent truncated-product oracle for (a; q)_infty.
double pochhammer_oracle(double a, double q) {
    double prod = 1.0, aq = a;
    for (int k = 0; k < 4000 && std::abs(aq) > 1e-18; ++k) {
        prod *= (1.0 - aq);
        aq *= q;
    }
    return prod;
}

// Independent brute-force series for e_q(x) = sum q^{n(n-1)/2} x^n / (q;q)_n.
// Also reports the peak summand (the series' cancellation scale).
double eq_series_oracle(double x, double q, double* peak_out = nullptr) {
    double sum = 0.0, peak = 1.0, qqn = 1.0;
    for (int n = 0; n < 400; ++n) {
        qqn = (n == 0) ? 1.0 : qqn * (1.0 - std::pow(q, n));  // (q;q)_n
        const double t = std::pow(q, 0.5 * n * (n - 1)) * std::pow(x, n) / qqn;
        sum += t;
        peak = std::max(peak, std::abs(t));
        if (n > 5 && std::abs(t) < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    if (peak_out) *peak_out = peak;
    return sum;
}

}  // namespace

TEST_CASE("q_number") {
    QBase q(0.5);
    CHECK(q_number(q, 0) == 0.0);
    CHECK(q_number(q, 1) == 1.0);
    CHECK(q_number(q, 3) == Catch::Approx(1.75).epsilon(1e-15));
    // summed form stays accurate arbitrarily close to q = 1
    QBase near1(1.0 + 1e-12);
    CHECK(q_number(near1, 10) == Catch::Approx(10.0).epsilon(1e-10));
    CHECK_THROWS_AS(q_number(q, -1), std::invalid_argument);
}

TEST_CASE("q_pochhammer finite") {
    QBase q(0.5);
    CHECK(q_pochhammer(0.3, q, 0) == 1.0);
    CHECK(q_pochhammer(0.5, q, 2) == Catch::Approx(0.375).epsilon(1e-15));
    CHECK_THROWS_AS(q_pochhammer(0.5, q, -2), std::invalid_argument);
}

TEST_CASE("q_pochhammer infinite") {
    QBase q(0.5);
    CHECK(q_pochhammer_inf(0.0, q) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(q_pochhammer_inf(0.5, q) ==
          Catch::Approx(pochhammer_oracle(0.5, 0.5)).epsilon(1e-13));
    CHECK(q_pochhammer_inf(-0.25, q) ==
          Catch::Approx(pochhammer_oracle(-0.25, 0.5)).epsilon(1e-13));
    QBase q2(2.0);
    CHECK_THROWS_AS(q_pochhammer_inf(0.5, q2), divergence_error);
}

TEST_CASE("q_exponential values and Euler identity") {
    QBase q(0.5);
    CHECK(q_exponential(0.0, q) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(q_exponential(1.0, q) ==
          Catch::Approx(pochhammer_oracle(-1.0, 0.5)).epsilon(1e-13));
    // factor (1 - 1) kills the product at x = -1
    CHECK(std::abs(q_exponential(-1.0, q)) < 1e-13);

    for (double qq : {0.3, 0.5, 0.9}) {
        QBase b(qq);
        for (double x : {-2.0, -0.7, 0.0, 0.4, 1.0, 2.5, 4.0}) {
            double peak = 1.0;
            const double series = eq_series_oracle(x, qq, &peak);
            const double prod = q_exponential(x, b);
            // 10*rel_tol on the value plus the series' cancellation floor
            const double tol =
                1e-14 * std::max({1.0, std::abs(series), std::abs(prod)}) + 1e-13 * peak;
            CHECK(std::abs(series - prod) <= tol);
        }
    }
    QBase q2(1.5);
    CHECK_THROWS_AS(q_exponential(0.5, q2), divergence_error);
}

TEST_CASE("phi00") {
    QBase q(0.5);
    CHECK(phi00(0.0, q) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(phi00(0.25, q) == Catch::Approx(pochhammer_oracle(-0.25, 0.5)).epsilon(1e-13));
    CHECK(std::abs(phi00(-1.0, q)) < 1e-13);
}

TEST_CASE("jackson_derivative basics") {
    QBase q(0.5);
    auto c = [](double) { return 3.7; };
    CHECK(jackson_derivative(c, 1.3, q) == 0.0);
    auto id = [](double x) { return x; };
    CHECK(jackson_derivative(id, 1.0, q) == Catch::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(jackson_derivative(id, 0.0, q), std::domain_error);
}

TEST_CASE("jackson_derivative monomial factor is x-independent") {
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        for (int n = 1; n <= 6; ++n) {
            auto f = [n](double x) { return std::pow(x, n); };
            const double expected = (std::pow(qq, -n) - 1.0) * qq;  // = q^{1-n}(1-q^n)
            for (double x : {0.3, 1.0, 2.7}) {
                const double got = jackson_derivative(f, x, b) * x / std::pow(x, n);
                CHECK(got == Catch::Approx(expected).epsilon(1e-12));
            }
            CHECK(jackson_monomial_factor(b, n - 1) ==
                  Catch::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("jackson_derivative fixes e_q") {
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        auto eq = [&](double x) { return q_exponential(x, b); };
        for (int k = -3; k <= 6; ++k) {
            const double x = std::pow(qq, k);
            const double lhs = jackson_derivative(eq, x, b);
            const double rhs = q_exponential(x, b);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("jackson Leibniz rule") {
    std::mt19937_64 rng(20240901);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (double qq : {0.3, 0.8}) {
        QBase b(qq);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> u(5), v(6);
            for (auto& c : u) c = coef(rng);
            for (auto& c : v) c = coef(rng);
            auto fu = [&](double x) { return poly_eval(u, x); };
            auto fv = [&](double x) { return poly_eval(v, x); };
            auto fuv = [&](double x) { return poly_eval(u, x) * poly_eval(v, x); };
            for (double x : {0.9, -1.4, 2.2}) {
                const double lhs = jackson_derivative(fuv, x, b);
                const double rhs = jackson_derivative(fu, x, b) * fv(x / qq) +
                                   fu(x) * jackson_derivative(fv, x, b);
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
            }
        }
    }
}

TEST_CASE("jackson_lattice exposes points q^k with weights q^{k-1}") {
    QBase q(0.5);
    auto m = jackson_lattice(q, -3, 4);
    REQUIRE(m.size() == 8);
    for (std::size_t i = 0; i + 1 < m.size(); ++i) CHECK(m.points[i] < m.points[i + 1]);
    for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(m.weights[i] == Catch::Approx(m.points[i] / 0.5).epsilon(1e-15));
}

TEST_CASE("jackson_integral basics") {
    QBase q(0.5);
    auto zero = [](double) { return 0.0; };
    CHECK(jackson_integral(zero, q) == 0.0);

    // I_0 against an independent lattice-sum oracle in log space
    auto f0 = [&](double t) { return std::exp(-log_eq_product(t / q.q, q)); };
    double oracle = 0.0;
    for (int k = -40; k <= 200; ++k)
        oracle += std::exp((k - 1) * std::log(0.5) - log_eq_product(std::pow(0.5, k - 1), q));
    const double i0 = jackson_integral(f0, q);
    CHECK(i0 == Catch::Approx(oracle).epsilon(1e-12));

    // I_1 / I_0 = (q;q)_1 = 1 - q
    auto f1 = [&](double t) { return t * std::exp(-log_eq_product(t / q.q, q)); };
    const double i1 = jackson_integral(f1, q);
    CHECK(i1 / i0 == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("jackson_integral rejects nonconvergent integrands") {
    QBase q(0.5);
    SeriesPolicy tight;
    tight.max_terms = 200;
    auto bad = [](double t) { return 1.0 / t; };  // constant lattice terms
    CHECK_THROWS_AS(jackson_integral(bad, q, tight), nonconvergence_error);
    QBase q2(2.0);
    auto ok = [](double) { return 0.0; };
    CHECK_THROWS_AS(jackson_integral(ok, q2), divergence_error);
}

TEST_CASE("integration by parts on compactly supported lattice functions") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    for (double qq : {0.4, 0.7}) {
        QBase b(qq);
        std::map<int, double> us, vs;
        for (int k = -5; k <= 8; ++k) {
            us[k] = val(rng);
            vs[k] = val(rng);
        }
        auto on_lattice = [&](const std::map<int, double>& m, double x) {
            const int k = static_cast<int>(std::lround(std::log(x) / std::log(qq)));
            auto it = m.find(k);
            if (it == m.end()) return 0.0;
            const double pk = std::pow(qq, k);
            return (std::abs(pk - x) <= 1e-9 * pk) ? it->second : 0.0;
        };
        auto u = [&](double x) { return on_lattice(us, x); };
        auto v = [&](double x) { return on_lattice(vs, x); };
        auto dv = [&](double x) { return jackson_derivative(v, x, b); };
        auto du = [&](double x) { return jackson_derivative(u, x, b); };

        auto lhs_f = [&](double x) { return u(x) * dv(x); };
        auto d_uv = [&](double x) {
            auto uv = [&](double y) { return u(y) * v(y); };
            return jackson_derivative(uv, x, b);
        };
        auto rhs2_f = [&](double x) { return du(x) * v(x / qq); };

        const double lhs = jackson_integral(lhs_f, b);
        const double rhs = jackson_integral(d_uv, b) - jackson_integral(rhs2_f, b);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("jackson_factorial matches q^{-n(n-1)/2}(q;q)_n") {
    for (double qq : {0.3, 0.5, 0.8}) {
        QBase b(qq);
        for (int n = 0; n <= 12; ++n) {
            const double expected =
                std::pow(qq, -0.5 * n * (n - 1)) * q_pochhammer(qq, b, n);
            CHECK(jackson_factorial(b, n) == Catch::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("type validation") {
    CHECK_THROWS_AS(QBase(1.0), std::invalid_argument);
    CHECK_THROWS_AS(QBase(-0.3), std::invalid_argument);
    CHECK_THROWS_AS(QBase(0.0), std::invalid_argument);
    SeriesPolicy p;
    p.rel_tol = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    SeriesPolicy p2;
    p2.max_terms = 0;
    CHECK_THROWS_AS(p2.validate(), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure({1.0, 0.5}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure({0.5, 1.0}, {1.0, -1.0}), std::invalid_argument);
}
