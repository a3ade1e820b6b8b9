#pragma once

// End-to-end verification suite: one entry per shipped guarantee, each run
// at its pinned tolerance with a wall-clock budget. The CLI `verify`
// subcommand and the acceptance test binary both drive run_all().

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "qosc/coherent.hpp"
#include "qosc/fockrep.hpp"
#include "qosc/kerr.hpp"

namespace qosc::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

struct Checker {
    bool ok = true;
    double worst = 0.0;
    std::ostringstream note;  // failure reason
    std::ostringstream info;  // always reported

    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            note << msg;
        }
    }

    void bound(double value, double tol, const std::string& what) {
        worst = std::max(worst, value);
        if (value > tol && ok) {
            ok = false;
            note << what << " = " << value << " exceeds " << tol;
        }
    }
};

inline std::vector<std::pair<std::string, DeformationKind>> catalog_instances() {
    return {
        {"arik-coon", ArikCoon{0.8}},
        {"biedenharn-macfarlane", BiedenharnMacfarlane{0.9}},
        {"chung", ChungEtAl{0.85, 1.5, 0.3}},
        {"bdy", BDY{0.8, 0.7, -0.2, 1.2}},
        {"nu-modified", NuModified{0.3}},
        {"q-nu", QNu{0.9, 0.2}},
        {"unified", Unified{{0.9, 0.8, 0.1, 1.3, 0.12}}},
        {"abc", AbcForm{0.9, -0.5, 1.0, 2.0}},
    };
}

}  // namespace detail

inline std::vector<CriterionResult> run_all(std::uint64_t seed = 12345) {
    using clock = std::chrono::steady_clock;
    std::vector<CriterionResult> results;

    auto run = [&](int id, const std::string& name, double budget_sec,
                   const std::function<void(detail::Checker&)>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        detail::Checker c;
        const auto t0 = clock::now();
        try {
            body(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.note << "exception: " << e.what();
        }
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        if (budget_sec > 0.0 && r.seconds >= budget_sec) {
            c.ok = false;
            c.note << " runtime " << r.seconds << "s over budget " << budget_sec << "s";
        }
        r.passed = c.ok;
        std::ostringstream d;
        d << "worst " << c.worst;
        if (!c.info.str().empty()) d << "; " << c.info.str();
        if (!c.ok) d << "; " << c.note.str();
        r.detail = d.str();
        results.push_back(std::move(r));
    };

    // 1. closed structure function vs recurrence, 200 random draws
    run(1, "structure closed form vs recurrence (200 draws, n <= 50, rel 1e-11)", 1.0,
        [&](detail::Checker& c) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> qlo(0.1, 0.95), qhi(1.05, 3.0);
            std::uniform_real_distribution<double> par(-2.0, 2.0), nu(-0.9, 0.9);
            std::bernoulli_distribution side(0.5);
            for (int draw = 0; draw < 200; ++draw) {
                UnifiedParams u{side(rng) ? qlo(rng) : qhi(rng), par(rng), par(rng), par(rng),
                                nu(rng)};
                auto f = structure_recurrence(u, 50);
                for (int n = 0; n <= 50; ++n) {
                    const double cl = structure_unified(u, n);
                    c.bound(std::abs(cl - f[n]) / (1.0 + std::abs(f[n])), 1e-11,
                            "relative closed/recurrence gap");
                }
            }
        });

    // 2. named deformations reproduce under the unified form
    run(2, "catalog embedding into the unified form (n <= 30, 1e-12)", 1.0,
        [&](detail::Checker& c) {
            for (const auto& [name, kind] : detail::catalog_instances()) {
                const UnifiedParams u = unified_embedding(kind);
                for (int n = 0; n <= 30; ++n) {
                    const double cat = structure_catalog(kind, n);
                    c.bound(std::abs(cat - structure_unified(u, n)) /
                                std::max(1.0, std::abs(cat)),
                            1e-12, name + " embedding gap");
                }
            }
        });

    // 3. matrix relations and the cubic Casimir at dim 40
    run(3, "matrix relations + cubic Casimir at dim 40 (1e-10 / 1e-9)", 5.0,
        [&](detail::Checker& c) {
            for (const auto& [name, kind] : detail::catalog_instances()) {
                const UnifiedParams u = unified_embedding(kind);
                auto quad = build_lowest_weight(StructureSeq(kind), 40);
                auto rel = relation_residual(quad, u);
                c.bound(rel.relation_residual, 1e-10, name + " relation residual");
                for (const auto& [label, r] : rel.commutator_residuals)
                    c.bound(r, 1e-10, name + " " + label);
                auto cas = casimir_commutant_residual(quad, u);
                c.bound(cas.diagonal_spread, 1e-9, name + " C3 spread");
                c.bound(cas.commutant_residual, 1e-9, name + " C3 commutant");
            }
        });

    // 4. classification: collapse, bilateral positivity, finite modules
    run(4, "classification: one-dim collapse, bilateral scan, exact 2-dim modules", 0.0,
        [&](detail::Checker& c) {
            RepParams one{{0.5, 0.0, 0.3, 1.0, 0.5}, 0.0, 0.7, -1.0};
            auto cls1 = classify(one);
            c.require(cls1.rep_case == RepCase::OneDim, "B = -1 did not collapse to one-dim");
            auto quad1 = build_finite(cls1);
            c.bound(relation_residual(quad1, one.unified, false).relation_residual, 1e-12,
                    "one-dim full-matrix residual");

            RepParams bil{{0.5, 0.0, 0.0, 1.0, 0.0}, 3.0, 0.0, 0.0};
            auto cls_b = classify(bil, 200);
            c.require(cls_b.rep_case == RepCase::Bilateral_iv, "bilateral input misclassified");
            for (int n = -200; n <= 200; ++n)
                c.require(cls_b.lambda.at(n) > 0.0, "bilateral lambda not positive");

            RepParams two{{0.5, 0.0, 0.0, 1.0, 1.5}, 0.0, 0.4, 3.0};
            auto cls2 = classify(two);
            c.require(cls2.rep_case == RepCase::TwoDim_iv, "two-dim (even zeros) misclassified");
            auto rep2 = relation_residual(build_finite(cls2), two.unified, false);
            c.bound(rep2.relation_residual, 1e-12, "two-dim full-matrix residual");
            for (const auto& [label, r] : rep2.commutator_residuals)
                c.bound(r, 1e-12, std::string("two-dim ") + label);

            RepParams three{{0.5, 0.0, 0.0, 1.0, 1.5}, 4.0, 0.4, -3.0};
            auto cls3 = classify(three);
            c.require(cls3.rep_case == RepCase::TwoDim_iii, "two-dim (odd zeros) misclassified");
            c.bound(relation_residual(build_finite(cls3), three.unified, false).relation_residual,
                    1e-12, "two-dim (odd zeros) residual");
        });

    // 5. q^{-1}-Hermite: explicit form and orthogonality
    run(5, "q^{-1}-Hermite explicit vs recurrence (1e-10) and Gram (1e-10)", 2.0,
        [&](detail::Checker& c) {
            for (double qq : {0.3, 0.5, 0.8}) {
                QBase b(qq);
                for (int n = 0; n <= 15; ++n)
                    for (double x : {-2.0, -1.0, 0.3, 2.0}) {
                        const double rec = poly_eval(hermite_recurrence(n, b), x);
                        const double expl = hermite_explicit(n, b, x);
                        c.bound(std::abs(rec - expl) /
                                    std::max({1.0, std::abs(rec), std::abs(expl)}),
                                1e-10, "explicit/recurrence gap");
                    }
                auto gram = orthogonality_check(b, 10);
                for (int n = 0; n <= 10; ++n) {
                    const double expected =
                        std::pow(qq, -0.5 * n * (n + 1)) * q_pochhammer(qq, b, n);
                    c.bound(std::abs(gram(n, n) - expected) / expected, 1e-10,
                            "Gram diagonal gap");
                }
                for (int m = 0; m <= 10; ++m)
                    for (int n = m + 1; n <= 10; ++n)
                        c.bound(std::abs(gram(m, n)) / std::sqrt(gram(m, m) * gram(n, n)),
                                1e-10, "Gram off-diagonal");
            }
        });

    // 6. coherent states: eigenvalue property and normalization identity
    run(6, "coherent states: eigen-residual (1e-8, |z| <= 3) and normalization (1e-12)", 0.0,
        [&](detail::Checker& c) {
            QBase q(0.5);
            const std::vector<std::complex<double>> zs = {
                {3.0, 0.0}, {0.0, 3.0}, {-3.0, 0.0}, {0.0, -3.0},
                {2.0, 2.0}, {1.0, 0.5}, {0.5, -1.7}, {-2.1, 2.1}};
            for (auto z : zs)
                c.bound(coherent_eigen_residual(coherent_state(z, q)), 1e-8,
                        "eigen-residual");
            for (double qq : {0.3, 0.5, 0.8}) {
                QBase b(qq);
                for (double x : {0.0, 0.5, 1.0, 2.5, 5.0, 9.0}) {
                    double series = 1.0, term = 1.0, qn = 1.0;
                    for (int n = 0; n < 2000; ++n) {
                        term *= qn * (1.0 - qq) * x / (1.0 - qq * qn);
                        qn *= qq;
                        series += term;
                        if (n > 3 && term < 1e-18 * series) break;
                    }
                    const double prod = q_pochhammer_inf(-(1.0 - qq) * x, b);
                    c.bound(std::abs(series - prod) / std::max(1.0, prod), 1e-12,
                            "normalization series/product gap");
                }
            }
        });

    // 7. moment problem and resolution of unity
    run(7, "lattice measure moments (rel 1e-8, n <= 20) and unity Gram (1e-6)", 2.0,
        [&](detail::Checker& c) {
            for (double qq : {0.3, 0.5, 0.8}) {
                QBase b(qq);
                auto sol = weight_measure(b, 1.0, 60);
                MomentTarget target{b};
                for (int n = 0; n <= 20; ++n)
                    c.bound(std::abs(sol.measure.moment(n) - target(n)) / target(n), 1e-8,
                            "moment gap");
                auto gram = completeness_check(b, 10, 60);
                for (int n = 0; n <= 10; ++n)
                    c.bound(std::abs(gram(n, n) - 1.0), 1e-6, "unity Gram diagonal");
            }
        });

    // 8. lattice calculus identities
    run(8, "lattice calculus: derivative fixes e_q, Leibniz, by parts (1e-12)", 0.0,
        [&](detail::Checker& c) {
            std::mt19937_64 rng(seed + 1);
            std::uniform_real_distribution<double> coef(-2.0, 2.0);
            for (double qq : {0.3, 0.5, 0.8}) {
                QBase b(qq);
                auto eq = [&](double x) { return q_exponential(x, b); };
                for (int k = -3; k <= 6; ++k) {
                    const double x = std::pow(qq, k);
                    c.bound(std::abs(jackson_derivative(eq, x, b) - eq(x)) /
                                std::max(1.0, eq(x)),
                            1e-12, "derivative of e_q");
                }
                for (int trial = 0; trial < 10; ++trial) {
                    std::vector<double> u(5), v(6);
                    for (auto& w : u) w = coef(rng);
                    for (auto& w : v) w = coef(rng);
                    auto fu = [&](double x) { return poly_eval(u, x); };
                    auto fv = [&](double x) { return poly_eval(v, x); };
                    auto fuv = [&](double x) { return poly_eval(u, x) * poly_eval(v, x); };
                    for (double x : {0.9, -1.4, 2.2}) {
                        const double lhs = jackson_derivative(fuv, x, b);
                        const double rhs = jackson_derivative(fu, x, b) * fv(x / qq) +
                                           fu(x) * jackson_derivative(fv, x, b);
                        c.bound(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-12,
                                "Leibniz gap");
                    }
                }
                // integration by parts on compactly supported lattice data
                std::map<int, double> us, vs;
                for (int k = -5; k <= 8; ++k) {
                    us[k] = coef(rng);
                    vs[k] = coef(rng);
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
                auto lhs_f = [&](double x) { return u(x) * jackson_derivative(v, x, b); };
                auto d_uv = [&](double x) {
                    auto uv = [&](double y) { return u(y) * v(y); };
                    return jackson_derivative(uv, x, b);
                };
                auto rhs2_f = [&](double x) {
                    return jackson_derivative(u, x, b) * v(x / qq);
                };
                const double lhs = jackson_integral(lhs_f, b);
                const double rhs = jackson_integral(d_uv, b) - jackson_integral(rhs2_f, b);
                c.bound(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-12,
                        "by-parts gap");
            }
        });

    // 9. coordinate realization of the two-parameter family
    run(9, "two-parameter realization on monomials (20 draws, degree 30, 1e-12)", 0.0,
        [&](detail::Checker& c) {
            std::mt19937_64 rng(seed + 2);
            std::uniform_real_distribution<double> pd(1.1, 2.5), qd(0.2, 0.9), bd(-1.0, 1.0);
            std::uniform_int_distribution<int> ld(1, 2), sd(1, 2);
            int done = 0;
            while (done < 20) {
                const int l = ld(rng), s = sd(rng);
                TwoParamParams t{pd(rng), qd(rng), static_cast<double>(l) / s, bd(rng), l};
                if (std::abs(t.denom()) < 0.05) continue;
                c.bound(coordinate_realization_residual(t, 30), 1e-12,
                        "coordinate relation residual");
                ++done;
            }
        });

    // 10. Kerr surrogate: quadratic remainder scaling
    run(10, "Kerr deviation scaling: equal-case in [3.5, 4.5]; nu0 reported", 1.0,
        [&](detail::Checker& c) {
            KerrParams p{1.0, 1e-3};
            auto eq = deviation_scaling(p, KerrMatcher::equal_case, 6);
            c.require(!eq.inconclusive, "equal-case deviations below floor");
            c.require(eq.in_band, "equal-case ratio outside [3.5, 4.5]");
            c.worst = std::max(c.worst, std::abs(eq.ratio - 4.0));
            auto n0 = deviation_scaling(p, KerrMatcher::nu0, 6);
            c.info << "equal ratio " << eq.ratio << ", sum-only split ratio "
                   << eq.sum_only_ratio << ", nu0 ratio " << n0.ratio
                   << (n0.flagged ? " [flagged]" : "");
        });

    return results;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

/// Pretty pass/fail table; returns the would-be process exit code.
inline int print_report(const std::vector<CriterionResult>& results, std::ostream& os) {
    double total = 0.0;
    for (const auto& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << "  ("
           << r.detail << ")  [" << r.seconds << "s]\n";
        total += r.seconds;
    }
    const bool ok = all_passed(results) && total < 30.0;
    os << (ok ? "PASS" : "FAIL") << "  11  full suite end to end under 30 s  [" << total
       << "s]\n";
    return ok ? 0 : 1;
}

}  // namespace qosc::verify
