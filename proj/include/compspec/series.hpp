#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "compspec/tolerances.hpp"

namespace compspec {

using Complex = std::complex<double>;

// Degree-N Taylor polynomial of a holomorphic function about `center`:
//     sum_{k=0}^{N} coeffs[k] * (z - center)^k
// Values are immutable once built. Two series combine only if their centers
// are bitwise equal and their orders agree.
class TruncatedPowerSeries {
public:
    TruncatedPowerSeries(Complex center, std::vector<Complex> coeffs);

    static TruncatedPowerSeries zero(Complex center, std::size_t order);
    static TruncatedPowerSeries constant(Complex center, std::size_t order, Complex value);
    // (z - center)^k, i.e. the basis function e_k expanded about `center`.
    static TruncatedPowerSeries monomial(Complex center, std::size_t order, std::size_t k);
    // The identity map z, expanded about `center`: [center, 1, 0, ...].
    static TruncatedPowerSeries identity(Complex center, std::size_t order);

    Complex center() const noexcept { return center_; }
    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t k) const { return coeffs_[k]; }

    // Largest coefficient modulus.
    double sup_norm() const noexcept;

    TruncatedPowerSeries with_coeff(std::size_t k, Complex value) const;
    // Same function, truncated or zero-padded to a different order.
    TruncatedPowerSeries resized(std::size_t order) const;

private:
    Complex center_;
    std::vector<Complex> coeffs_;
};

TruncatedPowerSeries add(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);
TruncatedPowerSeries sub(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);
TruncatedPowerSeries scale(const TruncatedPowerSeries& a, Complex factor);
// Cauchy product truncated at the common order.
TruncatedPowerSeries mul(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);

// Taylor coefficients of outer(inner(z)) about inner.center().
// Requires |inner[0] - outer.center()| <= compose_center_tol; evaluated by
// Horner's scheme in the series ring on (inner - outer.center()).
TruncatedPowerSeries compose(const TruncatedPowerSeries& outer, const TruncatedPowerSeries& inner,
                             const Tolerances& tol = {});

// k! * coeffs[k]
Complex derivative_at_center(const TruncatedPowerSeries& s, std::size_t k);

// Horner evaluation of the truncated polynomial. No truncation error estimate.
Complex evaluate(const TruncatedPowerSeries& s, Complex z) noexcept;

// Multiplicative inverse up to the series order.
TruncatedPowerSeries reciprocal(const TruncatedPowerSeries& s, const Tolerances& tol = {});

// Series quotient num / den when den is a polynomial of low degree (given in
// powers of (z - center)). Costs O(order * deg).
TruncatedPowerSeries divide_by_polynomial(const TruncatedPowerSeries& num, std::span<const Complex> den,
                                          const Tolerances& tol = {});

// True iff |coeffs[k]| <= tol for every k <= n, i.e. membership in Hol_n(center).
bool vanishes_to_order(const TruncatedPowerSeries& s, std::size_t n, double tol);

// Re-expands a polynomial given in powers of (z - from) into powers of (z - to).
std::vector<Complex> taylor_shift(std::span<const Complex> coeffs, Complex from, Complex to);

}  // namespace compspec
