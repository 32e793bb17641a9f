#include "compspec/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "compspec/error.hpp"
#include "compspec/json_io.hpp"
#include "compspec/koenigs.hpp"
#include "compspec/projections.hpp"
#include "compspec/schroeder.hpp"
#include "compspec/spectral.hpp"

namespace compspec::cli {
namespace {

using io::Json;

struct Options {
    std::size_t order = 64;
    std::size_t max_n = 12;
    std::vector<std::string> tol_overrides;
    std::string format = "json";
    std::string output;
    Tolerances tol;

    SolverConfig solver() const { return {order, max_n, tol}; }
};

int exit_code(ErrorKind kind) {
    switch (error_category(kind)) {
        case ErrorCategory::Usage: return 1;
        case ErrorCategory::Domain: return 2;
        case ErrorCategory::Numerical: return 3;
    }
    return 3;
}

Json error_json(std::string_view name, const std::string& message) {
    return {{"error", {{"name", std::string(name)}, {"message", message}}}};
}

Complex parse_lambda(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw Error(ErrorKind::ParseError, "cannot read lambda from \"" + text + "\"");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw Error(ErrorKind::ParseError, "lambda must be re,im");
    }
    std::string rest;
    if (in >> rest) throw Error(ErrorKind::ParseError, "trailing text in lambda \"" + text + "\"");
    return {re, im};
}

Symbol load_symbol(const std::string& arg, const Tolerances& tol) {
    return make_symbol(io::rational_from_json(io::load_json_argument(arg), tol), tol);
}

double rel_diff(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b, double floor = 1.0) {
    double diff = 0.0;
    for (std::size_t k = 0; k <= a.order(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
    return diff / std::max({1.0, floor, a.sup_norm(), b.sup_norm()});
}

Complex contour_point(Complex alpha) { return MoebiusTransform::involution(alpha)(std::polar(0.3, 0.7)); }

HolomorphicFunction probe_function() { return HolomorphicFunction::rational({1.0}, {2.0, -1.0}); }

struct Check {
    std::string suite;
    std::string name;
    double value;
    double tolerance;
};

std::vector<HolomorphicFunction> verify_functions() {
    return {HolomorphicFunction::rational({1.0}, {2.0, -1.0}),
            HolomorphicFunction::rational({0.0, 0.0, 1.0}, {1.5, 1.0}),
            HolomorphicFunction::rational({1.0, Complex{0.0, 0.5}}, {9.0, -6.0, 1.0})};
}

void koenigs_checks(const SchroederSolver& s, const Options& o, std::vector<Check>& out) {
    const auto& kd = s.koenigs();
    out.push_back({"koenigs", "normalization", std::max(std::abs(kd.kappa[0]), std::abs(kd.kappa[1] - 1.0)), 1e-12});
    const auto grid = disc_grid(kd.alpha, kd.eval_radius, 50);
    for (std::size_t n = 1; n <= std::min<std::size_t>(4, o.max_n); ++n) {
        double scale = 1.0;
        for (const Complex z : grid) scale = std::max(scale, std::abs(evaluate(kd.kappa_powers[n], z)));
        out.push_back({"koenigs", "eigen_relation_n" + std::to_string(n),
                       verify_eigen_relation(kd, s.symbol(), n, grid) / scale, 1e-10});
    }
    double lead = 0.0;
    for (std::size_t n = 1; n <= std::min<std::size_t>(8, o.max_n); ++n) {
        const auto& kn = kd.kappa_powers[n];
        for (std::size_t j = 0; j < n; ++j) lead = std::max(lead, std::abs(kn[j]));
        lead = std::max(lead, std::abs(kn[n] - 1.0));
    }
    out.push_back({"koenigs", "power_leading_coefficients", lead, 1e-9});
}

void projection_checks(const SchroederSolver& s, const Options& o, std::vector<Check>& out) {
    const auto& pf = s.projections();
    const Complex alpha = s.alpha();
    const std::size_t top = std::min<std::size_t>(6, o.max_n);
    double comm_left = 0.0, comm_right = 0.0, idem = 0.0;
    for (const auto& f : verify_functions()) {
        const auto fs = f.expand(alpha, o.order);
        const auto cf = compose(fs, s.phi_series(), o.tol);
        for (std::size_t n = 0; n <= top; ++n) {
            const Complex ln = s.eigenvalue(n);
            const auto pn = apply_projection(pf, n, fs);
            comm_left = std::max(comm_left, rel_diff(apply_projection(pf, n, cf), scale(pn, ln)));
            comm_right = std::max(comm_right, rel_diff(compose(pn, s.phi_series(), o.tol), scale(pn, ln)));
            for (std::size_t m = 0; m <= top; ++m) {
                const auto pnm = apply_projection(pf, n, apply_projection(pf, m, fs));
                const auto expect = n == m ? pn : TruncatedPowerSeries::zero(alpha, o.order);
                // a zero target still carries rounding of size |Psi_m f| * |kappa^n|
                const double floor = std::abs(pf.psi(m, fs)) * pf.koenigs().kappa_powers[n].sup_norm();
                idem = std::max(idem, rel_diff(pnm, expect, floor));
            }
        }
    }
    out.push_back({"projections", "P_n C_phi = lambda_n P_n", comm_left, 1e-9});
    out.push_back({"projections", "C_phi P_n = lambda_n P_n", comm_right, 1e-9});
    out.push_back({"projections", "P_n P_m = delta_nm P_n", idem, 1e-9});
    for (std::size_t n = 0; n <= std::min<std::size_t>(3, o.max_n); ++n) {
        const auto closed = closed_form_P(n, s.phi_series(), o.tol);
        double d = 0.0, sc = 1.0;
        for (std::size_t m = 0; m <= n; ++m) {
            d = std::max(d, std::abs(closed[m] - pf.coefficient(n, m)));
            sc = std::max(sc, std::abs(closed[m]));
        }
        out.push_back({"projections", "closed_form_P" + std::to_string(n), d / sc, 1e-10});
    }
}

void contour_checks(const SchroederSolver& s, const Options& o, std::vector<Check>& out) {
    const auto f = probe_function();
    for (std::size_t n = 0; n <= std::min<std::size_t>(2, o.max_n); ++n) {
        const auto c = contour_verify(s, n, f, contour_point(s.alpha()));
        out.push_back({"contour", "contour_n" + std::to_string(n), c.error, 1e-6});
    }
}

Json run_verify(const Symbol& sym, const Options& o, const std::string& suite, bool& all_pass) {
    const SchroederSolver solver(sym, o.solver());
    std::vector<Check> checks;
    if (suite == "koenigs" || suite == "all") koenigs_checks(solver, o, checks);
    if (suite == "projections" || suite == "all") projection_checks(solver, o, checks);
    if (suite == "contour" || suite == "all") contour_checks(solver, o, checks);
    Json rows = Json::array();
    all_pass = true;
    for (const auto& c : checks) {
        const bool pass = c.value <= c.tolerance;
        all_pass = all_pass && pass;
        rows.push_back({{"suite", c.suite}, {"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                        {"pass", pass}});
    }
    return {{"command", "verify"}, {"suite", suite}, {"checks", std::move(rows)}, {"all_pass", all_pass}};
}

void emit(const Json& j, const Options& o, std::ostream& out) {
    const std::string text = o.format == "pretty" ? j.dump(2) : j.dump();
    if (o.output.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream file(o.output);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.output);
    file << text << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    bool max_n_given = false;
    CLI::App app{"Composition operators with rational symbols on the unit disc", "compspec"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.add_option("--order", o.order, "Truncation order of all power series (>= 8)");
    app.add_option("--max-n", o.max_n, "Highest eigenvalue index (<= order/2, default min(12, order/2))")
        ->each([&](const std::string&) { max_n_given = true; });
    app.add_option("--tol", o.tol_overrides, "Override a named tolerance, name=value")->take_all();
    app.add_option("--format", o.format, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
    app.add_option("--output", o.output, "Write the report to this file");

    std::string symbol_arg;
    auto add_cmd = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("symbol", symbol_arg, "Symbol JSON: inline, file path, or - for stdin")->required();
        return sub;
    };

    auto* analyze = add_cmd("analyze", "Validate and classify a symbol");
    auto* koenigs = add_cmd("koenigs", "Koenigs eigenfunction coefficients");

    auto* project = add_cmd("project", "Projection functional and optional projected function");
    std::size_t proj_n = 0;
    std::string proj_f;
    project->add_option("--n", proj_n, "Projection index")->required();
    project->add_option("--f", proj_f, "Function JSON to project");

    auto* solve = add_cmd("solve", "Solve lambda f - f o phi = g");
    std::string lambda_text, g_arg, mode = "pointwise";
    std::optional<std::size_t> at_eigen;
    solve->add_option("--lambda", lambda_text, "re,im");
    solve->add_option("--g", g_arg, "Right-hand side JSON")->required();
    solve->add_option("--mode", mode, "series or pointwise")->check(CLI::IsMember({"series", "pointwise"}));
    solve->add_option("--at-eigenvalue", at_eigen, "Solve at lambda_n with P_n g = 0");

    auto* spectrum = add_cmd("spectrum", "Spectrum report");
    std::optional<std::size_t> contour_n;
    spectrum->add_option("--contour-n", contour_n, "Add contour checks for n = 0..N");

    auto* verify = add_cmd("verify", "Run verification suites");
    std::string suite = "all";
    verify->add_option("--suite", suite, "projections, contour, koenigs or all")
        ->check(CLI::IsMember({"projections", "contour", "koenigs", "all"}));

    auto* hardy = add_cmd("hardy", "Weighted Hardy membership of kappa^p");
    double hardy_a = 0.0;
    std::size_t hardy_p = 1, hardy_k = 4096;
    hardy->add_option("--a", hardy_a, "Weight exponent, beta(k) = (k+1)^a, a <= 0")->required();
    hardy->add_option("--p", hardy_p, "Power of kappa")->required();
    hardy->add_option("--K", hardy_k, "Truncation order of the diagnostic");

    auto* compact = add_cmd("compactness", "Compactness probe sup |phi| near the circle");
    std::vector<double> radii(kDefaultProbeRadii.begin(), kDefaultProbeRadii.end());
    int samples = 720;
    compact->add_option("--radii", radii, "Probe radii in (0, 1)")->delimiter(',');
    compact->add_option("--samples", samples, "Samples per circle");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit(error_json("UsageError", e.what()), o, out);
        err << e.what() << '\n';
        return 1;
    }

    try {
        for (const auto& kv : o.tol_overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "--tol expects name=value, got " + kv);
            double value = 0.0;
            try {
                value = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw Error(ErrorKind::ParseError, "bad tolerance value in " + kv);
            }
            o.tol.set(kv.substr(0, eq), value);
        }
        if (o.order < 8) throw Error(ErrorKind::InvalidArgument, "--order must be at least 8");
        if (!max_n_given) o.max_n = std::min(o.max_n, o.order / 2);
        if (o.max_n > o.order / 2) throw Error(ErrorKind::InvalidArgument, "--max-n must not exceed order/2");

        Json report;
        int code = 0;
        if (*analyze) {
            const auto map = io::rational_from_json(io::load_json_argument(symbol_arg), o.tol);
            report = {{"command", "analyze"},
                      {"symbol", io::rational_to_json(map)},
                      {"degree", map.degree()},
                      {"boundary_sup", boundary_sup(map)},
                      {"classification", io::classification_to_json(classify(map, o.tol))}};
        } else if (*koenigs) {
            const auto sym = load_symbol(symbol_arg, o.tol);
            const auto kd = build_koenigs(sym, o.order, std::min<std::size_t>(1, o.max_n), o.tol);
            report = {{"command", "koenigs"},
                      {"alpha", io::to_json(kd.alpha)},
                      {"lambda1", io::to_json(kd.lambda1)},
                      {"order", kd.order()},
                      {"eval_radius", kd.eval_radius},
                      {"eigen_residual", verify_eigen_relation(kd, sym, 1, disc_grid(kd.alpha, kd.eval_radius, 50))},
                      {"kappa", io::series_to_json(kd.kappa)}};
        } else if (*project) {
            const auto sym = load_symbol(symbol_arg, o.tol);
            if (proj_n > o.max_n) throw Error(ErrorKind::IndexExceeded, "--n exceeds --max-n");
            const auto kd = build_koenigs(sym, o.order, o.max_n, o.tol);
            const auto pf = build_projection_family(kd, o.max_n);
            Json functional = Json::array();
            for (const Complex c : pf.functional(proj_n)) functional.push_back(io::to_json(c));
            report = {{"command", "project"},
                      {"n", proj_n},
                      {"lambda_n", io::to_json(kd.eigenvalue(proj_n))},
                      {"functional", std::move(functional)}};
            if (proj_n <= 3) {
                Json closed = Json::array();
                for (const Complex c : closed_form_P(proj_n, taylor_at(sym.map, kd.alpha, o.order, o.tol), o.tol)) {
                    closed.push_back(io::to_json(c));
                }
                report["closed_form"] = std::move(closed);
            }
            if (!proj_f.empty()) {
                const auto f = io::function_from_json(io::load_json_argument(proj_f)).expand(kd.alpha, o.order);
                report["psi"] = io::to_json(pf.psi(proj_n, f));
                report["projection"] = io::series_to_json(apply_projection(pf, proj_n, f));
            }
        } else if (*solve) {
            const auto sym = load_symbol(symbol_arg, o.tol);
            const auto g = io::function_from_json(io::load_json_argument(g_arg));
            const OutputMode m = mode == "series" ? OutputMode::Series : OutputMode::Pointwise;
            const SchroederSolver solver(sym, o.solver());
            std::optional<SolveResult> r;
            Complex lambda;
            if (at_eigen) {
                if (!lambda_text.empty()) throw Error(ErrorKind::InvalidArgument, "give --lambda or --at-eigenvalue");
                lambda = solver.eigenvalue(*at_eigen);
                r.emplace(solver.resolve_at_eigenvalue(*at_eigen, g, m));
            } else {
                if (lambda_text.empty()) throw Error(ErrorKind::InvalidArgument, "--lambda is required");
                lambda = parse_lambda(lambda_text);
                r.emplace(solver.resolve(lambda, g, m));
            }
            Json grid = Json::array();
            for (const Complex z : solver.verification_grid()) {
                grid.push_back({{"z", io::to_json(z)}, {"f", io::to_json((*r)(z))}});
            }
            report = {{"command", "solve"},
                      {"lambda", io::to_json(lambda)},
                      {"mode", mode},
                      {"diagnostics", io::diagnostics_to_json(r->diagnostics())},
                      {"grid", std::move(grid)}};
            if (r->f_series()) report["f_series"] = io::series_to_json(*r->f_series());
        } else if (*spectrum) {
            const auto sym = load_symbol(symbol_arg, o.tol);
            report = io::spectrum_to_json(spectrum_report(sym, o.max_n, o.tol));
            report["command"] = "spectrum";
            if (contour_n && sym.is_schroeder()) {
                const SchroederSolver solver(sym, o.solver());
                if (*contour_n > o.max_n) throw Error(ErrorKind::IndexExceeded, "--contour-n exceeds --max-n");
                for (std::size_t n = 0; n <= *contour_n; ++n) {
                    Json c = io::contour_to_json(contour_verify(solver, n, probe_function(), contour_point(sym.alpha())));
                    c["n"] = n;
                    report["contour_checks"].push_back(std::move(c));
                }
            }
        } else if (*verify) {
            const auto sym = load_symbol(symbol_arg, o.tol);
            bool pass = false;
            report = run_verify(sym, o, suite, pass);
            code = pass ? 0 : 3;
        } else if (*hardy) {
            auto sym = load_symbol(symbol_arg, o.tol);
            if (!sym.is_schroeder()) throw Error(ErrorKind::NotSchroeder, "Hardy diagnostic needs a Schroeder symbol");
            const bool conjugated = sym.alpha() != Complex{};
            if (conjugated) sym = make_symbol(conjugate_to_origin(sym.map, sym.alpha(), o.tol), o.tol);
            const WeightedHardyParams params{hardy_a, hardy_k};
            const auto kd = build_koenigs(sym, std::max(o.order, hardy_k), hardy_p, o.tol);
            const auto h = hardy_membership(kd, hardy_p, params, o.tol);
            const double critical = std::abs(hardy_a) + 0.5;
            report = io::hardy_to_json(h);
            report["command"] = "hardy";
            report["a"] = hardy_a;
            report["p"] = hardy_p;
            report["K"] = hardy_k;
            report["conjugated_to_origin"] = conjugated;
            report["reference_member"] = static_cast<double>(hardy_p) < critical;
            report["near_critical"] = std::abs(static_cast<double>(hardy_p) - critical) < o.tol.growth_margin;
            try {
                report["hurst"] = io::hurst_to_json(hurst_reference(sym, hardy_a));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NotRealMultiplier) throw;
                report["hurst"] = nullptr;
            }
        } else if (*compact) {
            const auto map = io::rational_from_json(io::load_json_argument(symbol_arg), o.tol);
            const auto c = compactness_probe(map, radii, samples, o.tol);
            report = {{"command", "compactness"}, {"sup_estimate", c.sup_estimate}, {"compact", c.compact}};
        }
        emit(report, o, out);
        return code;
    } catch (const Error& e) {
        emit(error_json(e.name(), e.detail()), o, out);
        err << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        emit(error_json("InternalError", e.what()), o, out);
        err << e.what() << '\n';
        return 3;
    }
}

}  // namespace compspec::cli
