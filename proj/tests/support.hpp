#pragma once

#include <optional>
#include <random>

#include "compspec/error.hpp"
#include "compspec/symbol.hpp"
#include "oracles.hpp"

namespace support {

using compspec::Complex;

inline compspec::Symbol symbol_of(const oracle::RandomMap& r) {
    return compspec::make_symbol(compspec::RationalMap::create(r.num, r.den));
}

inline compspec::Symbol symbol_of(const compspec::poly::Poly& num, const compspec::poly::Poly& den) {
    return compspec::make_symbol(compspec::RationalMap::create(num, den));
}

// The standard fixture z / (2 - z).
inline compspec::Symbol standard_fixture() { return symbol_of({0.0, 1.0}, {2.0, -1.0}); }

inline double rel_sup_diff(const compspec::TruncatedPowerSeries& a, const compspec::TruncatedPowerSeries& b) {
    double d = 0.0;
    for (std::size_t k = 0; k <= a.order(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d / std::max({1.0, a.sup_norm(), b.sup_norm()});
}

inline oracle::Vec to_vec(const compspec::TruncatedPowerSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

// Kind of the compspec::Error thrown by f, if any.
template <class F>
std::optional<compspec::ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const compspec::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace support
