#include "compspec/tolerances.hpp"

#include <array>
#include <utility>

#include "compspec/error.hpp"

namespace compspec {
namespace {

using Field = double Tolerances::*;

constexpr std::array<std::pair<std::string_view, Field>, 18> kFields{{
    {"compose_center_tol", &Tolerances::compose_center_tol},
    {"reciprocal_tol", &Tolerances::reciprocal_tol},
    {"pole_margin", &Tolerances::pole_margin},
    {"self_map_tol", &Tolerances::self_map_tol},
    {"common_root_tol", &Tolerances::common_root_tol},
    {"zero_multiplier_tol", &Tolerances::zero_multiplier_tol},
    {"unit_multiplier_tol", &Tolerances::unit_multiplier_tol},
    {"automorphism_tol", &Tolerances::automorphism_tol},
    {"boundary_margin", &Tolerances::boundary_margin},
    {"fixed_point_tol", &Tolerances::fixed_point_tol},
    {"conjugation_tol", &Tolerances::conjugation_tol},
    {"compactness_margin", &Tolerances::compactness_margin},
    {"small_divisor_tol", &Tolerances::small_divisor_tol},
    {"eigen_sep_tol", &Tolerances::eigen_sep_tol},
    {"solver_residual_tol", &Tolerances::solver_residual_tol},
    {"q_margin", &Tolerances::q_margin},
    {"compatibility_tol", &Tolerances::compatibility_tol},
    {"growth_margin", &Tolerances::growth_margin},
}};

Field lookup(std::string_view name) {
    for (const auto& [key, field] : kFields) {
        if (key == name) return field;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown tolerance '" + std::string(name) + "'");
}

}  // namespace

void Tolerances::set(std::string_view name, double value) {
    if (!(value >= 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "tolerance '" + std::string(name) + "' must be non-negative");
    }
    this->*lookup(name) = value;
}

double Tolerances::get(std::string_view name) const { return this->*lookup(name); }

std::map<std::string, double> Tolerances::as_map() const {
    std::map<std::string, double> out;
    for (const auto& [key, field] : kFields) out.emplace(std::string(key), this->*field);
    return out;
}

}  // namespace compspec
