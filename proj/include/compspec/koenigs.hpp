#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "compspec/series.hpp"
#include "compspec/symbol.hpp"
#include "compspec/tolerances.hpp"

namespace compspec {

// Koenigs eigenfunction kappa of a Schroeder symbol, normalised by
// kappa(alpha) = 0 and kappa'(alpha) = 1, together with its powers.
// All series are expanded about alpha.
struct KoenigsData {
    Complex alpha;
    Complex lambda1;
    TruncatedPowerSeries kappa;
    std::vector<TruncatedPowerSeries> kappa_powers;  // kappa^0 .. kappa^M
    // Radius about alpha inside which the truncated series are trusted.
    double eval_radius;

    std::size_t order() const noexcept { return kappa.order(); }
    std::size_t max_power() const noexcept { return kappa_powers.size() - 1; }
    // lambda_n = lambda1^n, by repeated multiplication.
    Complex eigenvalue(std::size_t n) const noexcept;
};

// Default evaluation radius: half the distance from alpha to the unit circle.
double default_eval_radius(Complex alpha) noexcept;

// Solves kappa o phi = lambda1 * kappa coefficient by coefficient about alpha.
// With w = phi - alpha = sum_{k>=1} b_k (z-alpha)^k, coefficient n of
// kappa o phi is lambda1^n c_n + sum_{k<n} c_k [w^k]_n, which gives
//     c_n = sum_{k<n} c_k [w^k]_n / (lambda1 - lambda1^n).
// Powers of w are advanced by multiplying with the rational map's shifted
// numerator and dividing by its denominator, so the cost is O(N^2 deg phi).
KoenigsData build_koenigs(const Symbol& symbol, std::size_t order, std::size_t max_power,
                          const Tolerances& tol = {});

// max over grid of |kappa^n(phi(z)) - lambda_n kappa^n(z)|.
double verify_eigen_relation(const KoenigsData& kd, const Symbol& symbol, std::size_t n,
                             std::span<const Complex> grid);

// kappa(z) for any z in the disc: follow the orbit of z until it enters the
// evaluation radius, then kappa(z) = kappa(phi_k(z)) / lambda1^k.
// `extra_steps` pulls back through additional orbit points.
Complex kappa_by_pullback(const KoenigsData& kd, const Symbol& symbol, Complex z, std::size_t extra_steps = 0);

// `count` points on circles about alpha with radii spread over (0, radius].
std::vector<Complex> disc_grid(Complex alpha, double radius, std::size_t count);

}  // namespace compspec
