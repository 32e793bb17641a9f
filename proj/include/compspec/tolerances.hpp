#pragma once

#include <map>
#include <string>
#include <string_view>

namespace compspec {

// All named numerical thresholds in one place, so that a computation session
// (and the CLI's --tol flag) can override any of them.
struct Tolerances {
    // series
    double compose_center_tol = 1e-10;
    double reciprocal_tol = 1e-12;

    // symbol
    double pole_margin = 1e-8;
    double self_map_tol = 1e-9;
    double common_root_tol = 1e-9;
    double zero_multiplier_tol = 1e-10;
    double unit_multiplier_tol = 1e-10;
    double automorphism_tol = 1e-10;
    double boundary_margin = 1e-4;
    double fixed_point_tol = 1e-12;
    double conjugation_tol = 1e-10;
    double compactness_margin = 1e-6;

    // koenigs / projections
    double small_divisor_tol = 1e-12;

    // solver
    double eigen_sep_tol = 1e-9;
    double solver_residual_tol = 1e-8;
    double q_margin = 0.05;
    double compatibility_tol = 1e-9;

    // spectral analysis
    double growth_margin = 0.1;

    // Sets a tolerance by name; throws Error(InvalidArgument) for unknown names.
    void set(std::string_view name, double value);
    double get(std::string_view name) const;
    std::map<std::string, double> as_map() const;
};

}  // namespace compspec
