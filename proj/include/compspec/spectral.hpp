#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "compspec/function.hpp"
#include "compspec/koenigs.hpp"
#include "compspec/schroeder.hpp"
#include "compspec/symbol.hpp"

namespace compspec {

enum class SpectrumPointKind { Eigenvalue, EssentialPoint };
std::string_view spectrum_point_kind_name(SpectrumPointKind kind) noexcept;

struct SpectrumPoint {
    Complex value;
    SpectrumPointKind kind;
};

struct SpectrumReport {
    SymbolClassification classification;
    std::vector<SpectrumPoint> spectrum_points;
    bool compact = false;
    double compactness_sup = 0.0;
    std::size_t max_n = 0;
};

// {0} plus lambda_1^n for n <= max_n (Schroeder), or {0, 1} (superattracting).
SpectrumReport spectrum_report(const Symbol& symbol, std::size_t max_n, const Tolerances& tol = {});

struct ContourOptions {
    std::size_t nodes = 256;
    double radius_factor = 1.0;  // multiplies the default radius; must stay in (0, 1]
};

struct ContourCheck {
    Complex z;
    Complex quadrature;
    Complex direct;
    double error;
    double radius;
};

// Half the distance from lambda_n to the rest of {0, lambda_k : k <= max_n + 2}.
double contour_radius(const SchroederSolver& solver, std::size_t n);

// (1 / 2 pi i) times the integral of (lambda - C_phi)^{-1} f over the circle
// |lambda - lambda_n| = radius, by the periodic trapezoid rule, compared with
// (P_n f)(z). Nodes are solved concurrently and summed in node order.
ContourCheck contour_verify(const SchroederSolver& solver, std::size_t n, const HolomorphicFunction& f, Complex z,
                            const ContourOptions& options = {});
std::vector<ContourCheck> contour_verify(const SchroederSolver& solver, std::size_t n, const HolomorphicFunction& f,
                                         std::span<const Complex> points, const ContourOptions& options = {});

// g(z) = ((1 + z) / (1 - z))^lambda on the principal branch.
Complex automorphism_eigenfunction(Complex lambda, Complex z);
// max over grid of |g(psi(z)) - ((1 + r) / (1 - r))^lambda g(z)| for the
// hyperbolic automorphism psi(z) = (z + r) / (1 + r z).
double automorphism_eigen_fixture(double r, Complex lambda, std::span<const Complex> grid);
// 60 points on circles of radius 0.2 .. 0.8 about 0.
std::vector<Complex> automorphism_fixture_grid();

struct WeightedHardyParams {
    double a = -1.0;                   // beta(k) = (k + 1)^a, a <= 0 (a = 0 is H^2)
    std::size_t truncation_K = 4096;  // >= 1000
};

struct HardyMembership {
    std::vector<std::size_t> checkpoints;  // K/8, K/4, K/2, K
    std::vector<double> partial_norms;
    double growth_exponent;
    bool member;
};

// Slope test for sum_k |[kappa^p]_k|^2 (k+1)^(2a) < infinity, on the Taylor
// coefficients about 0. Needs alpha == 0 and kd.order() >= K.
HardyMembership hardy_membership(const KoenigsData& kd, std::size_t p, const WeightedHardyParams& params,
                                 const Tolerances& tol = {});

struct HurstReference {
    double essential_radius;
    std::vector<std::size_t> indices_outside;  // n with lambda_n > r_e
    std::vector<double> eigenvalues_outside;
};

// r_e = lambda_1^((2|a| + 1) / 2) for a real multiplier in (0, 1).
HurstReference hurst_reference(const Symbol& symbol, double a);

}  // namespace compspec
