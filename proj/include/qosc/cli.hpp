#pragma once

// Subcommand handlers for the qosc binary. Each handler returns a JSON
// document; run() wires them to flags and streams, so tests can drive the
// whole interface in-process. JSON is the canonical format (doubles are
// emitted with shortest round-trip precision, so output reloads exactly);
// CSV is a flat projection offered only for tabular subcommands.

#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qosc/verify.hpp"

namespace qosc::cli {

using nlohmann::json;

/// Deformation selection shared by `structure` and `rep`.
struct KindFlags {
    std::string kind = "unified";
    double q = 0.5;
    double alpha = 0.0, beta = 0.0, gamma = 1.0, nu = 0.0;
    double a = -0.5, b = 1.0, c = 2.0;
    double p = 2.0;
    int l = 1;

    DeformationKind to_kind() const {
        if (kind == "arik-coon") return ArikCoon{q};
        if (kind == "biedenharn-macfarlane") return BiedenharnMacfarlane{q};
        if (kind == "chung") return ChungEtAl{q, alpha, beta};
        if (kind == "bdy") return BDY{q, alpha, beta, gamma};
        if (kind == "nu-modified") return NuModified{nu};
        if (kind == "q-nu") return QNu{q, nu};
        if (kind == "unified") return Unified{{q, alpha, beta, gamma, nu}};
        if (kind == "abc") return AbcForm{q, a, b, c};
        if (kind == "two-param") return TwoParam{{p, q, alpha, beta, l}};
        throw std::invalid_argument("unknown deformation kind: " + kind);
    }
};

inline json structure_json(const DeformationKind& kind, int n_max) {
    json rows = json::array();
    std::vector<double> rec;
    if (const auto* tp = std::get_if<TwoParam>(&kind)) {
        // step-s recurrence f(n+s) = q^l f(n) + p^{-alpha n - beta}, seeded
        // with closed-form values, when l/alpha is a positive integer
        const TwoParamParams& t = tp->params;
        const double s_real = static_cast<double>(t.l) / t.alpha;
        const int s = static_cast<int>(std::llround(s_real));
        rec.resize(static_cast<std::size_t>(n_max + 1));
        if (s >= 1 && std::abs(s_real - s) < 1e-9) {
            const double ql = std::pow(t.q, t.l);
            for (int n = 0; n <= n_max; ++n)
                rec[static_cast<std::size_t>(n)] =
                    (n < s) ? structure_two_param(t, n)
                            : ql * rec[static_cast<std::size_t>(n - s)] +
                                  std::pow(t.p, -(t.alpha * (n - s) + t.beta));
        } else {
            for (int n = 0; n <= n_max; ++n)
                rec[static_cast<std::size_t>(n)] = structure_two_param(t, n);
        }
    } else {
        rec = structure_recurrence(unified_embedding(kind), n_max);
    }
    for (int n = 0; n <= n_max; ++n) {
        const double closed = structure_catalog(kind, n);
        const double r = rec[static_cast<std::size_t>(n)];
        rows.push_back({{"n", n},
                        {"f_closed", closed},
                        {"f_recurrence", r},
                        {"abs_diff", std::abs(closed - r)}});
    }
    return {{"rows", rows}};
}

inline json classify_json(const RepParams& p, int scan_depth) {
    const auto cls = classify(p, scan_depth);
    json head = json::array();
    const int start = cls.window.lo.value_or(0);
    for (int n = start; n < start + 10 && n <= cls.lambda.n_hi; ++n)
        head.push_back(cls.lambda.at(n));
    json window;
    window["text"] = cls.window.to_string();
    if (cls.window.lo) window["lo"] = *cls.window.lo;
    if (cls.window.hi) window["hi"] = *cls.window.hi;
    json diag{{"regime", cls.diagnostics.regime},
              {"regime_scan_agree", cls.diagnostics.regime_scan_agree},
              {"ambiguous_boundary", cls.diagnostics.ambiguous_boundary},
              {"renumbering_required", cls.diagnostics.renumbering_required},
              {"overflow_truncated", cls.diagnostics.overflow_truncated},
              {"boundary_zero_fwd", cls.diagnostics.boundary_zero_fwd},
              {"boundary_zero_bwd", cls.diagnostics.boundary_zero_bwd},
              {"notes", cls.diagnostics.notes}};
    if (cls.diagnostics.first_nonpos_fwd) diag["first_nonpos_fwd"] = *cls.diagnostics.first_nonpos_fwd;
    if (cls.diagnostics.first_nonpos_bwd) diag["first_nonpos_bwd"] = *cls.diagnostics.first_nonpos_bwd;
    return {{"case", to_string(cls.rep_case)},
            {"dimension", cls.dimension},
            {"window", window},
            {"lambda_head", head},
            {"diagnostics", diag}};
}

inline json rep_json(const DeformationKind& kind, int dim) {
    if (std::holds_alternative<TwoParam>(kind))
        throw std::invalid_argument(
            "rep: the two-parameter family acts on polynomials, not a weight tower; "
            "its relation residuals run inside `verify`");
    const UnifiedParams u = unified_embedding(kind);
    const StructureSeq seq(kind);
    auto quad = build_lowest_weight(seq, dim);
    auto rel = relation_residual(quad, u);
    auto cas = casimir_commutant_residual(quad, u);
    json head = json::array();
    for (int n = 0; n < std::min(dim, 10); ++n) head.push_back(seq(n));
    json comm;
    for (const auto& [k, v] : rel.commutator_residuals) comm[k] = v;
    return {{"dim", dim},
            {"lambda_head", head},
            {"relation_residual", rel.relation_residual},
            {"commutator_residuals", comm},
            {"casimir",
             {{"diagonal_spread", cas.diagonal_spread},
              {"commutant_residual", cas.commutant_residual}}},
            {"block_dim", rel.block_dim}};
}

inline json hermite_value_json(int n, double q, double x) {
    QBase base(q);
    return {{"n", n},
            {"q", q},
            {"x", x},
            {"value", hermite_eval(n, base, x)},
            {"psi", psi_normalized(n, base, x)}};
}

inline json hermite_gram_json(double q, int n_max) {
    QBase base(q);
    auto gram = orthogonality_check(base, n_max);
    json rows = json::array();
    for (int m = 0; m <= n_max; ++m) {
        json row = json::array();
        for (int n = 0; n <= n_max; ++n) row.push_back(gram(m, n));
        rows.push_back(row);
    }
    json diag_expected = json::array();
    for (int n = 0; n <= n_max; ++n)
        diag_expected.push_back(std::pow(q, -0.5 * n * (n + 1)) *
                                q_pochhammer(q, base, n));
    return {{"q", q}, {"n_max", n_max}, {"gram", rows}, {"diag_expected", diag_expected}};
}

inline json coherent_json(double z_re, double z_im, double q, double tol,
                          const SeriesPolicy& policy) {
    QBase base(q);
    const std::complex<double> z{z_re, z_im};
    auto st = coherent_state(z, base, tol);
    json coeffs = json::array();
    for (auto c : st.coeffs) coeffs.push_back({c.real(), c.imag()});
    return {{"z", {z_re, z_im}},
            {"q", q},
            {"coeffs", coeffs},
            {"norm_sq", st.norm_sq},
            {"norm_sq_closed", normalization_sq(std::norm(z), base, policy)},
            {"eigen_residual", coherent_eigen_residual(st)}};
}

inline json moments_json(double q, int n_max, int k_range) {
    QBase base(q);
    auto sol = weight_measure(base, 1.0, k_range);
    MomentTarget target{base};
    json rows = json::array();
    for (int n = 0; n <= n_max; ++n) {
        const double t = target(n), m = sol.measure.moment(n);
        rows.push_back({{"n", n},
                        {"target", t},
                        {"measured", m},
                        {"rel_err", std::abs(m - t) / t}});
    }
    const int gram_n = std::min(n_max, 10);
    auto gram = completeness_check(base, gram_n, k_range);
    json diag = json::array();
    for (int n = 0; n <= gram_n; ++n) diag.push_back(gram(n, n));
    return {{"q", q}, {"k_range", k_range}, {"rows", rows}, {"gram_diag", diag},
            {"I0", sol.I0}};
}

inline json kerr_json(double omega0, double kappa, int n_max, KerrMatcher matcher) {
    KerrParams p{omega0, kappa};
    const auto target = kerr_spectrum(p, n_max);
    std::vector<double> surrogate;
    if (matcher == KerrMatcher::equal_case) {
        const auto s = equal_case_matching(p);
        surrogate =
            deformed_spectrum_equal_case(omega0, s.gamma, s.beta, s.nu, std::exp(1.0), n_max);
    } else {
        surrogate = deformed_spectrum_nu0(omega0, KerrReparam::matched(p), n_max);
    }
    json rows = json::array();
    for (int n = 0; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        rows.push_back({{"n", n},
                        {"kerr", target[i]},
                        {"deformed", surrogate[i]},
                        {"deviation", surrogate[i] - target[i]}});
    }
    json out{{"omega0", omega0}, {"kappa", kappa}, {"matcher", to_string(matcher)},
             {"rows", rows}};
    if (kappa > 0.0) {
        const auto rep = deviation_scaling(p, matcher, n_max);
        json scaling{{"dev_kappa", rep.dev_kappa},
                     {"dev_half_kappa", rep.dev_half_kappa},
                     {"ratio", rep.ratio},
                     {"in_band", rep.in_band},
                     {"inconclusive", rep.inconclusive},
                     {"flagged", rep.flagged}};
        if (!std::isnan(rep.sum_only_ratio)) scaling["sum_only_ratio"] = rep.sum_only_ratio;
        out["scaling"] = scaling;
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV projections (tables only)
// ---------------------------------------------------------------------------

namespace detail {

inline void csv_table(const json& rows, const std::vector<std::string>& cols,
                      std::ostream& os) {
    os << std::setprecision(17);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ",";
            const auto& v = row.at(cols[i]);
            if (v.is_number_integer())
                os << v.get<long long>();
            else
                os << v.get<double>();
        }
        os << "\n";
    }
}

}  // namespace detail

/// Parse and dispatch. Returns 0 on success, 1 on computation failure,
/// 2 on usage errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"deformed oscillator algebras: structure functions, representations, "
                 "q-Hermite polynomials, coherent states and Kerr spectra"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_config("--config")->description("key = value file mirroring the flags");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::string format = "json";
    std::string output_path;
    std::uint64_t seed = 12345;
    SeriesPolicy policy;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", output_path, "write to file instead of stdout");
    app.add_option("--seed", seed, "seed for randomized sweeps (verify)");
    app.add_option("--rel-tol", policy.rel_tol, "series truncation tolerance");
    app.add_option("--max-terms", policy.max_terms, "series term budget");

    const std::vector<std::string> kinds = {
        "arik-coon", "biedenharn-macfarlane", "chung", "bdy", "nu-modified",
        "q-nu",      "unified",               "abc",   "two-param"};

    KindFlags kf;
    int n_max = 10;
    auto add_kind_flags = [&](CLI::App* sc) {
        sc->add_option("--kind", kf.kind, "deformation family")->check(CLI::IsMember(kinds));
        sc->add_option("--q", kf.q, "base q > 0, q != 1");
        sc->add_option("--alpha", kf.alpha);
        sc->add_option("--beta", kf.beta);
        sc->add_option("--gamma", kf.gamma);
        sc->add_option("--nu", kf.nu);
        sc->add_option("--a", kf.a);
        sc->add_option("--b", kf.b);
        sc->add_option("--c", kf.c);
        sc->add_option("--p", kf.p);
        sc->add_option("--l", kf.l);
    };

    auto* structure = app.add_subcommand("structure", "structure function table");
    add_kind_flags(structure);
    structure->add_option("--n-max", n_max, "top level");

    RepParams rp{{0.5, 0.0, 0.0, 1.0, 0.0}, 0.0, 0.0, 0.0};
    int scan_depth = 200;
    auto* cls = app.add_subcommand("classify", "classify the module containing |0>");
    cls->add_option("--q", rp.unified.q);
    cls->add_option("--alpha", rp.unified.alpha);
    cls->add_option("--beta", rp.unified.beta);
    cls->add_option("--gamma", rp.unified.gamma);
    cls->add_option("--nu", rp.unified.nu);
    cls->add_option("--lambda0", rp.lambda0);
    cls->add_option("--kappa0", rp.kappa0);
    cls->add_option("--B", rp.B);
    cls->add_option("--scan-depth", scan_depth);

    int dim = 40;
    std::string report = "json";
    auto* rep = app.add_subcommand("rep", "matrix representation residual report");
    add_kind_flags(rep);
    rep->add_option("--dim", dim, "truncation dimension");
    rep->add_option("--report", report)->check(CLI::IsMember({"json"}));

    int hn = 0;
    double hq = 0.5, hx = 0.0;
    bool gram = false;
    auto* hermite = app.add_subcommand("hermite", "q^{-1}-Hermite values or Gram table");
    hermite->add_option("--n", hn);
    hermite->add_option("--q", hq);
    hermite->add_option("--x", hx);
    hermite->add_flag("--gram", gram, "emit the Gram matrix instead of a value");
    hermite->add_option("--n-max", n_max);

    double z_re = 0.0, z_im = 0.0, cq = 0.5, ctol = 1e-24;
    auto* coherent = app.add_subcommand("coherent", "annihilation-operator eigenstate");
    coherent->add_option("--z-re", z_re);
    coherent->add_option("--z-im", z_im);
    coherent->add_option("--q", cq);
    coherent->add_option("--tol", ctol, "squared-tail truncation tolerance");

    double mq = 0.5;
    int m_nmax = 20, k_range = 60;
    auto* moments = app.add_subcommand("moments", "lattice-measure moments and unity Gram");
    moments->add_option("--q", mq);
    moments->add_option("--n-max", m_nmax);
    moments->add_option("--k-range", k_range);

    double omega0 = 1.0, kappa = 1e-3;
    int kerr_nmax = 6;
    std::string matcher = "equal";
    auto* kerr = app.add_subcommand("kerr", "Kerr spectrum vs deformed surrogate");
    kerr->add_option("--omega0", omega0);
    kerr->add_option("--kappa", kappa);
    kerr->add_option("--n-max", kerr_nmax);
    kerr->add_option("--matcher", matcher)->check(CLI::IsMember({"equal", "nu0"}));

    auto* verify_cmd = app.add_subcommand("verify", "run the full acceptance suite");

    std::vector<std::string> argv_owned = args;
    std::vector<char*> argv;
    std::string prog = "qosc";
    argv.push_back(prog.data());
    for (auto& s : argv_owned) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!output_path.empty()) {
        file.open(output_path);
        if (!file) {
            err << "cannot open output path: " << output_path << "\n";
            return 1;
        }
        sink = &file;
    }

    try {
        policy.validate();
        if (verify_cmd->parsed()) {
            const auto results = verify::run_all(seed);
            return verify::print_report(results, *sink);
        }
        json doc;
        std::vector<std::string> csv_cols;
        const char* rows_key = "rows";
        if (structure->parsed()) {
            doc = structure_json(kf.to_kind(), n_max);
            csv_cols = {"n", "f_closed", "f_recurrence", "abs_diff"};
        } else if (cls->parsed()) {
            doc = classify_json(rp, scan_depth);
        } else if (rep->parsed()) {
            doc = rep_json(kf.to_kind(), dim);
        } else if (hermite->parsed()) {
            doc = gram ? hermite_gram_json(hq, n_max) : hermite_value_json(hn, hq, hx);
        } else if (coherent->parsed()) {
            doc = coherent_json(z_re, z_im, cq, ctol, policy);
        } else if (moments->parsed()) {
            doc = moments_json(mq, m_nmax, k_range);
            csv_cols = {"n", "target", "measured", "rel_err"};
        } else if (kerr->parsed()) {
            doc = kerr_json(omega0, kappa, kerr_nmax,
                            matcher == "equal" ? KerrMatcher::equal_case : KerrMatcher::nu0);
            csv_cols = {"n", "kerr", "deformed", "deviation"};
        }
        if (format == "csv") {
            if (csv_cols.empty()) {
                err << "usage error: --format csv is only available for tabular output "
                       "(structure, moments, kerr)\n";
                return 2;
            }
            detail::csv_table(doc.at(rows_key), csv_cols, *sink);
        } else {
            *sink << doc.dump(2) << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qosc::cli
