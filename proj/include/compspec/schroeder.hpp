#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "compspec/function.hpp"
#include "compspec/koenigs.hpp"
#include "compspec/projections.hpp"
#include "compspec/symbol.hpp"
#include "compspec/tolerances.hpp"

namespace compspec {

enum class OutputMode { Series, Pointwise };

struct SolverConfig {
    std::size_t order = 64;
    std::size_t max_n = 12;
    Tolerances tol{};
};

struct SolveDiagnostics {
    std::size_t n_used = 0;        // split index: g = Q_n g + (g - Q_n g)
    double epsilon = 0.0;          // radius (in coordinates fixing alpha at 0) where |phi~(z)| <= q |z|
    double q = 0.0;
    std::size_t terms_summed = 0;  // largest orbit-series length over the verification grid
    double residual = 0.0;         // max over the grid of |lambda f - f o phi - g|
};

namespace detail {
struct OrbitSolution;
}

// Solution f of lambda f - f o phi = g. Always evaluable pointwise on the
// whole disc; carries the Taylor series about alpha in Series mode.
class SolveResult {
public:
    SolveResult(std::shared_ptr<const detail::OrbitSolution> impl, std::optional<TruncatedPowerSeries> series,
                SolveDiagnostics diagnostics);

    Complex operator()(Complex z) const;
    const std::optional<TruncatedPowerSeries>& f_series() const noexcept { return f_series_; }
    const SolveDiagnostics& diagnostics() const noexcept { return diagnostics_; }

    // The solution as a right-hand side for another solve. Expansion is only
    // available about alpha and requires Series mode.
    HolomorphicFunction as_function() const;

private:
    std::shared_ptr<const detail::OrbitSolution> impl_;
    std::optional<TruncatedPowerSeries> f_series_;
    SolveDiagnostics diagnostics_;
};

struct SolveRequest {
    Symbol symbol;
    Complex lambda;
    HolomorphicFunction g;
    OutputMode mode = OutputMode::Pointwise;
};

// Resolvent of the composition operator for a fixed symbol. Holds the
// Koenigs data and projection family, so that many solves (e.g. contour
// quadrature nodes) share one setup. Immutable after construction.
class SchroederSolver {
public:
    explicit SchroederSolver(Symbol symbol, SolverConfig config = {});

    const Symbol& symbol() const noexcept { return symbol_; }
    const SolverConfig& config() const noexcept { return config_; }
    Complex alpha() const noexcept { return alpha_; }
    // Schroeder symbols only.
    const KoenigsData& koenigs() const;
    const ProjectionFamily& projections() const;
    const TruncatedPowerSeries& phi_series() const noexcept { return phi_series_; }
    Complex eigenvalue(std::size_t n) const;

    // lambda not in {0} or {lambda_n : n <= max_n}; orbit-series construction
    // after splitting off the first n projections. Superattracting symbols are
    // routed to resolve_superattracting.
    SolveResult resolve(Complex lambda, const HolomorphicFunction& g, OutputMode mode = OutputMode::Pointwise) const;
    // lambda = lambda_n with P_n g = 0; the returned f satisfies P_n f = 0.
    SolveResult resolve_at_eigenvalue(std::size_t n, const HolomorphicFunction& g,
                                      OutputMode mode = OutputMode::Pointwise) const;
    // phi'(alpha) = 0 and lambda not in {0, 1}.
    SolveResult resolve_superattracting(Complex lambda, const HolomorphicFunction& g,
                                        OutputMode mode = OutputMode::Pointwise) const;

    // 50 points on pseudo-hyperbolic circles about alpha, radii 0.1 .. 0.9.
    const std::vector<Complex>& verification_grid() const noexcept { return grid_; }

private:
    SolveResult run(Complex lambda, const HolomorphicFunction& g, OutputMode mode, std::optional<std::size_t> skip,
                    std::size_t min_split) const;
    std::pair<double, double> find_epsilon(std::size_t n, double lambda_abs) const;
    double series_zone(const TruncatedPowerSeries& g2) const;

    Symbol symbol_;
    SolverConfig config_;
    Complex alpha_;
    Complex lambda1_;
    RationalMap conjugated_;
    TruncatedPowerSeries phi_series_;
    std::optional<ProjectionFamily> family_;
    double map_radius_ = 0.0;  // where the phi and kappa series are accurate
    std::vector<Complex> grid_;
};

SolveResult resolve(const SolveRequest& request, const SolverConfig& config = {});
SolveResult resolve_at_eigenvalue(const Symbol& symbol, std::size_t n, const HolomorphicFunction& g,
                                  const SolverConfig& config = {}, OutputMode mode = OutputMode::Pointwise);
SolveResult resolve_superattracting(const Symbol& symbol, Complex lambda, const HolomorphicFunction& g,
                                    const SolverConfig& config = {}, OutputMode mode = OutputMode::Pointwise);

}  // namespace compspec
