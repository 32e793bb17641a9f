#pragma once

#include <span>
#include <vector>

#include "compspec/series.hpp"

// Dense complex polynomials, coefficients in ascending degree order.
namespace compspec::poly {

using Poly = std::vector<Complex>;

Complex horner(std::span<const Complex> p, Complex z) noexcept;
Poly derivative(std::span<const Complex> p);
Poly add(std::span<const Complex> a, std::span<const Complex> b);
Poly sub(std::span<const Complex> a, std::span<const Complex> b);
Poly mul(std::span<const Complex> a, std::span<const Complex> b);
Poly scale(std::span<const Complex> a, Complex factor);

// Drops trailing coefficients that are zero or negligible relative to the
// largest one. The zero polynomial becomes {0}.
Poly trim(Poly p, double relative_tol = 1e-14);

// Degree of a trimmed polynomial; the zero polynomial has degree 0.
std::size_t degree(std::span<const Complex> p) noexcept;

// All complex roots, from the eigenvalues of the companion matrix followed by
// a few Newton polishing steps.
std::vector<Complex> roots(std::span<const Complex> p);

// p / (z - r), discarding the remainder.
Poly deflate(std::span<const Complex> p, Complex r);

}  // namespace compspec::poly
