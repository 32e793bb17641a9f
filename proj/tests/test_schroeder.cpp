#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "compspec/schroeder.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace compspec;
using support::error_kind;

namespace {

HolomorphicFunction rational_of(const oracle::RandomRational& r) { return HolomorphicFunction::rational(r.num, r.den); }

HolomorphicFunction kappa_power(const SchroederSolver& s, std::size_t n) {
    const auto& kd = s.koenigs();
    const auto sym = s.symbol();
    return HolomorphicFunction::custom(
        [kd, sym, n](Complex z) { return std::pow(kappa_by_pullback(kd, sym, z), static_cast<double>(n)); },
        [kd, n](Complex c, std::size_t order) -> TruncatedPowerSeries {
            if (c != kd.alpha) throw Error(ErrorKind::InvalidArgument, "about alpha only");
            return kd.kappa_powers[n].resized(order);
        },
        "kappa^n");
}

double residual(const SchroederSolver& s, const SolveResult& f, Complex lambda, const HolomorphicFunction& g) {
    double r = 0.0;
    for (Complex z : s.verification_grid())
        r = std::max(r, std::abs(lambda * f(z) - f(eval_map(s.symbol().map, z)) - g(z)));
    return r;
}

Complex random_lambda(std::mt19937_64& rng, Complex lambda1, std::size_t max_n) {
    std::uniform_real_distribution<double> mag(0.05, 3.0), ph(-std::numbers::pi, std::numbers::pi);
    for (;;) {
        const Complex l = std::polar(mag(rng), ph(rng));
        bool ok = true;
        Complex ln = 1.0;
        for (std::size_t k = 0; k <= max_n; ++k, ln *= lambda1) ok = ok && std::abs(l - ln) > 0.02;
        if (ok) return l;
    }
}

}  // namespace

TEST_CASE("g = 0 gives f = 0") {
    const SchroederSolver s(support::standard_fixture());
    const auto zero = HolomorphicFunction::rational({0.0}, {1.0});
    for (auto mode : {OutputMode::Pointwise, OutputMode::Series}) {
        const auto f = s.resolve(Complex{0.7, 0.2}, zero, mode);
        for (Complex z : s.verification_grid()) CHECK(f(z) == Complex{});
        CHECK(f.diagnostics().residual == 0.0);
    }
}

TEST_CASE("diagonal solve for z/2") {
    const SchroederSolver s(support::symbol_of({0.0, 0.5}, {1.0}));
    const auto g = HolomorphicFunction::rational({0.0, 1.0}, {1.0});
    const auto f = s.resolve(2.0, g, OutputMode::Series);
    for (Complex z : s.verification_grid()) CHECK(std::abs(f(z) - 2.0 / 3.0 * z) < 1e-14);
    const auto& fs = *f.f_series();
    CHECK(std::abs(fs[1] - 2.0 / 3.0) < 1e-14);
    CHECK(std::abs(fs[0]) < 1e-15);
    CHECK(std::abs(fs[2]) < 1e-15);
}

TEST_CASE("eigenvector right-hand side on z/(2-z)") {
    const SchroederSolver s(support::standard_fixture());
    const auto g = HolomorphicFunction::rational({0.0, 0.0, 1.0}, {1.0, -2.0, 1.0});
    const auto f = s.resolve(3.0, g);
    CHECK(f.diagnostics().residual < 1e-10);
    for (Complex z : s.verification_grid()) CHECK(std::abs(f(z) - g(z) / 2.75) <= 1e-12 * std::max(1.0, std::abs(g(z))));
    CHECK(f.diagnostics().n_used == 0);
}

TEST_CASE("eigenvalue-case solves on z/(2-z)") {
    const SchroederSolver s(support::standard_fixture());
    const auto kappa = HolomorphicFunction::rational({0.0, 1.0}, {1.0, -1.0});
    const auto f = s.resolve_at_eigenvalue(0, kappa, OutputMode::Series);
    for (Complex z : s.verification_grid()) CHECK(std::abs(f(z) - 2.0 * kappa(z)) <= 1e-12 * std::max(1.0, std::abs(kappa(z))));
    CHECK(std::abs(s.projections().psi(0, *f.f_series())) < 1e-12);

    for (std::size_t n = 0; n <= 4; ++n)
        CHECK(error_kind([&] { s.resolve_at_eigenvalue(n, kappa_power(s, n)); }) == ErrorKind::IncompatibleRHS);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 5; ++t) {
        auto c = oracle::random_coeffs(rng, 40, 0.8);
        c[0] = c[1] = c[2] = 0.0;
        const auto g = HolomorphicFunction::series(TruncatedPowerSeries(0.0, c));
        const auto sol = s.resolve_at_eigenvalue(2, g, OutputMode::Series);
        CHECK(sol.diagnostics().residual < 1e-8);
        CHECK(residual(s, sol, 0.25, g) < 1e-8);
        const auto& fs = *sol.f_series();
        for (std::size_t j = 0; j <= 2; ++j) CHECK(std::abs(fs[j]) < 1e-10);
        CHECK(std::abs(s.projections().psi(2, fs)) < 1e-9);
    }
}

TEST_CASE("eigenvalue-case solves on random symbols land in ker P_n") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 8; ++t) {
        const SchroederSolver s(support::symbol_of(oracle::random_schroeder(rng)));
        const auto g0 = rational_of(oracle::random_rational(rng));
        for (std::size_t n = 0; n <= 3; ++n) {
            // make g compatible by removing its P_n component
            const Complex a = s.projections().psi(n, g0.expand(s.alpha(), s.config().order));
            const auto g = linear_combination(1.0, g0, -a, kappa_power(s, n));
            const auto f = s.resolve_at_eigenvalue(n, g, OutputMode::Series);
            CHECK(f.diagnostics().residual <= 1e-8);
            CHECK(residual(s, f, s.eigenvalue(n), g) <= 1e-8);
            CHECK(std::abs(s.projections().psi(n, *f.f_series())) <= 1e-9);
        }
    }
}

TEST_CASE("superattracting z^2") {
    const auto sym = support::symbol_of({0.0, 0.0, 1.0}, {1.0});
    const SchroederSolver s(sym);
    const auto one = HolomorphicFunction::rational({1.0}, {1.0});
    const auto f1 = s.resolve(3.0, one);
    for (Complex z : s.verification_grid()) CHECK(std::abs(f1(z) - 0.5) < 1e-15);
    CHECK(f1.diagnostics().residual < 1e-15);

    const auto id = HolomorphicFunction::rational({0.0, 1.0}, {1.0});
    const auto f2 = s.resolve(2.0, id, OutputMode::Series);
    double expect = 0.0;
    for (int k = 0; k < 8; ++k) expect += std::pow(0.5, std::pow(2.0, k)) / std::pow(2.0, k + 1);
    CHECK(std::abs(f2(0.5) - expect) < 1e-14);
    CHECK(residual(s, f2, 2.0, id) < 1e-10);
    const auto& fs = *f2.f_series();
    for (std::size_t j = 0; j <= 32; ++j) {
        const bool pow2 = j > 0 && (j & (j - 1)) == 0;
        const double c = pow2 ? 1.0 / (2.0 * static_cast<double>(j)) : 0.0;
        CHECK(std::abs(fs[j] - c) < 1e-14);
    }

    const auto zero = HolomorphicFunction::rational({0.0}, {1.0});
    const auto f3 = s.resolve(Complex{-1.5, 0.0}, zero);
    for (Complex z : s.verification_grid()) CHECK(f3(z) == Complex{});

    CHECK(error_kind([&] { s.resolve(1.0, id); }) == ErrorKind::SpectrumPoint);
    CHECK(error_kind([&] { s.resolve(0.0, id); }) == ErrorKind::SpectrumPoint);
    CHECK(error_kind([&] { s.resolve_superattracting(Complex{1.0, 1e-12}, id); }) == ErrorKind::SpectrumPoint);
}

TEST_CASE("solver errors") {
    const SchroederSolver s(support::standard_fixture());
    const auto g = HolomorphicFunction::rational({1.0, 2.0}, {3.0, 1.0});
    CHECK(error_kind([&] { s.resolve(0.0, g); }) == ErrorKind::ZeroLambda);
    CHECK(error_kind([&] { s.resolve(0.25, g); }) == ErrorKind::EigenvalueCollision);
    CHECK(error_kind([&] { s.resolve(0.25 + 1e-12, g); }) == ErrorKind::EigenvalueCollision);
    CHECK(error_kind([&] { s.resolve(1e-6, g); }) == ErrorKind::LambdaTooSmall);
    CHECK(error_kind([&] { s.resolve_at_eigenvalue(13, g); }) == ErrorKind::IndexExceeded);
    CHECK(error_kind([&] { SchroederSolver(support::symbol_of({0.5, 1.0}, {1.0, 0.5})); }) == ErrorKind::NotSchroeder);
    // a lambda between eigenvalues needs a split above n = 0
    const auto f = s.resolve(0.3, g);
    CHECK(f.diagnostics().n_used == 1);
    CHECK(f.diagnostics().residual < 1e-8);
}

TEST_CASE("random solves: residual, modes, coefficients, linearity") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 12; ++t) {
        const auto rm = oracle::random_schroeder(rng);
        const SchroederSolver s(support::symbol_of(rm));
        const auto gr = oracle::random_rational(rng);
        const auto g = rational_of(gr);
        const Complex lambda = random_lambda(rng, s.eigenvalue(1), s.config().max_n);
        CAPTURE(lambda);
        const auto fp = s.resolve(lambda, g, OutputMode::Pointwise);
        const auto fsr = s.resolve(lambda, g, OutputMode::Series);
        CHECK(fp.diagnostics().residual <= 1e-8);
        CHECK(residual(s, fp, lambda, g) <= 1e-8 * std::max(1.0, std::abs(lambda)));
        for (Complex z : s.verification_grid()) {
            const Complex a = fp(z), b = fsr(z);
            CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
        }

        // formal solution coefficient by coefficient
        const std::size_t m = 24;
        const auto gs = g.expand(s.alpha(), m);
        const auto ps = taylor_at(s.symbol().map, s.alpha(), m);
        const auto ref = oracle::triangular_resolvent(support::to_vec(gs), support::to_vec(ps), lambda);
        const auto& fs = *fsr.f_series();
        double scale = 1.0;
        for (auto c : ref) scale = std::max(scale, std::abs(c));
        for (std::size_t j = 0; j <= m; ++j) CHECK(std::abs(fs[j] - ref[j]) <= 1e-9 * scale);

        const auto h = rational_of(oracle::random_rational(rng));
        const Complex a{0.3, -1.1}, b{-0.7, 0.4};
        const auto fh = s.resolve(lambda, h);
        const auto fc = s.resolve(lambda, linear_combination(a, g, b, h));
        for (Complex z : s.verification_grid()) {
            const Complex want = a * fp(z) + b * fh(z);
            CHECK(std::abs(fc(z) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("eigenvector consistency") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 6; ++t) {
        const SchroederSolver s(support::symbol_of(oracle::random_schroeder(rng)));
        for (std::size_t n = 0; n <= 5; ++n) {
            const Complex lambda = random_lambda(rng, s.eigenvalue(1), s.config().max_n);
            const auto kn = kappa_power(s, n);
            CAPTURE(n);
            CAPTURE(lambda);
            CAPTURE(s.eigenvalue(1));
            CAPTURE(s.alpha());
            const auto f = s.resolve(lambda, kn);
            const Complex d = lambda - s.eigenvalue(n);
            for (Complex z : s.verification_grid()) {
                const Complex want = kn(z) / d;
                CHECK(std::abs(f(z) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("first resolvent equation") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 6; ++t) {
        const SchroederSolver s(support::symbol_of(oracle::random_schroeder(rng)));
        const auto g = rational_of(oracle::random_rational(rng));
        const Complex l = random_lambda(rng, s.eigenvalue(1), s.config().max_n);
        const Complex mu = random_lambda(rng, s.eigenvalue(1), s.config().max_n);
        const auto rl = s.resolve(l, g);
        const auto rmu = s.resolve(mu, g, OutputMode::Series);
        const auto rlrmu = s.resolve(l, rmu.as_function());
        for (Complex z : s.verification_grid()) {
            const Complex lhs = rl(z) - rmu(z);
            const Complex rhs = (mu - l) * rlrmu(z);
            CHECK(std::abs(lhs - rhs) <= 1e-7 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("free-function entry points") {
    const auto sym = support::standard_fixture();
    const auto g = HolomorphicFunction::rational({0.0, 1.0}, {1.0, -1.0});
    const auto f = resolve(SolveRequest{sym, 2.0, g, OutputMode::Pointwise});
    CHECK(std::abs(f(0.3) - g(0.3) / 1.5) < 1e-13);
    const auto e = resolve_at_eigenvalue(sym, 0, g);
    CHECK(std::abs(e(0.3) - 2.0 * g(0.3)) < 1e-13);
    const auto sq = support::symbol_of({0.0, 0.0, 1.0}, {1.0});
    const auto c = resolve_superattracting(sq, 3.0, HolomorphicFunction::rational({1.0}, {1.0}));
    CHECK(std::abs(c(0.4) - 0.5) < 1e-15);
    CHECK(error_kind([&] { resolve_superattracting(sym, 3.0, g); }) == ErrorKind::InvalidArgument);
}
