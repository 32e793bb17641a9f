#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "compspec/error.hpp"
#include "compspec/koenigs.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace compspec;

TEST_CASE("z/(2-z) has kappa = z/(1-z)") {
    const auto sym = support::standard_fixture();
    const auto kd = build_koenigs(sym, 64, 4);
    CHECK(std::abs(kd.kappa[0]) <= 1e-12);
    for (std::size_t k = 1; k <= 64; ++k) CHECK(std::abs(kd.kappa[k] - 1.0) <= 1e-10);
    CHECK(kd.max_power() == 4);
    CHECK(kd.eigenvalue(3) == Complex{0.125});
}

TEST_CASE("linear map is its own linearisation") {
    const auto kd = build_koenigs(support::symbol_of({0.0, 0.5}, {1.0}), 16, 3);
    CHECK(kd.kappa[1] == Complex{1.0});
    for (std::size_t k = 2; k <= 16; ++k) CHECK(kd.kappa[k] == Complex{});
}

TEST_CASE("second fixture against the limit oracle") {
    const auto sym = support::symbol_of({0.0, 0.5, 1.0}, {1.0, 0.5});
    const auto kd = build_koenigs(sym, 40, 1);
    const auto phi = support::to_vec(taylor_at(sym.map, 0.0, 40));
    const auto ref = oracle::koenigs_limit(phi, 0.0, 0.5, 40);
    CHECK(oracle::sup_diff(support::to_vec(kd.kappa), ref) <= 1e-8 * std::max(1.0, oracle::sup_norm(ref)));
}

TEST_CASE("eigen relation examples") {
    const auto sym = support::standard_fixture();
    const auto kd = build_koenigs(sym, 64, 3);
    const auto grid = disc_grid(0.0, 0.3, 50);
    CHECK(verify_eigen_relation(kd, sym, 1, grid) < 1e-10);
    CHECK(verify_eigen_relation(kd, sym, 0, grid) == 0.0);
    const auto lin = support::symbol_of({0.0, 0.5}, {1.0});
    const auto kl = build_koenigs(lin, 16, 3);
    CHECK(verify_eigen_relation(kl, lin, 3, disc_grid(0.0, 0.5, 50)) == doctest::Approx(0.0).epsilon(1e-16));
    CHECK_THROWS_AS(verify_eigen_relation(kd, sym, 4, grid), Error);
}

TEST_CASE("kappa by orbit pullback") {
    const auto b = support::symbol_of({0.0, 0.5, 1.0}, {1.0, 0.5});
    const auto kb = build_koenigs(b, 64, 1);
    CHECK(std::abs(kappa_by_pullback(kb, b, -0.5)) < 1e-9);
    CHECK(kappa_by_pullback(kb, b, 0.0) == Complex{});
    const auto a = support::standard_fixture();
    const auto ka = build_koenigs(a, 64, 1);
    CHECK(std::abs(kappa_by_pullback(ka, a, 0.9) - 9.0) < 1e-8);
    CHECK_THROWS_AS(kappa_by_pullback(ka, a, 1.0), Error);
}

TEST_CASE("non-Schroeder symbols are rejected") {
    try {
        build_koenigs(support::symbol_of({0.0, 0.0, 1.0}, {1.0}), 16, 1);
        FAIL("expected NotSchroeder");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSchroeder);
    }
}

TEST_CASE("random maps: functional equation, power identities, oracle, pullback") {
    std::mt19937_64 rng(202);
    for (int t = 0; t < 10; ++t) {
        const auto r = oracle::random_schroeder(rng);
        const auto sym = support::symbol_of(r);
        const std::size_t N = 64;
        const auto kd = build_koenigs(sym, N, 8);
        const auto phi = taylor_at(sym.map, kd.alpha, N);

        const auto lhs = compose(kd.kappa, phi);
        CHECK(support::rel_sup_diff(lhs, scale(kd.kappa, kd.lambda1)) <= 1e-10);

        for (std::size_t n = 1; n <= 8; ++n) {
            const auto& kn = kd.kappa_powers[n];
            for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(kn[j]) <= 1e-9);
            CHECK(std::abs(kn[n] - 1.0) <= 1e-9);
        }

        const auto ref = oracle::koenigs_limit(support::to_vec(phi), kd.alpha, kd.lambda1, N);
        CHECK(oracle::sup_diff(support::to_vec(kd.kappa), ref) <= 1e-8 * std::max(1.0, oracle::sup_norm(ref)));

        for (const Complex z : {Complex{0.7, 0.1}, Complex{-0.5, -0.6}, Complex{0.1, 0.85}}) {
            const Complex k0 = kappa_by_pullback(kd, sym, z);
            const Complex k1 = kappa_by_pullback(kd, sym, z, 1);
            CHECK(std::abs(k0 - k1) <= 1e-9 * std::max(1.0, std::abs(k0)));
        }
    }
}

TEST_CASE("disc grid stays inside the radius") {
    const auto g = disc_grid(Complex{0.2, -0.1}, 0.3, 50);
    CHECK(g.size() == 50);
    for (const Complex z : g) CHECK(std::abs(z - Complex{0.2, -0.1}) <= 0.3 + 1e-15);
}
