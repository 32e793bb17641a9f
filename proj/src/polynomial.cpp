#include "compspec/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace compspec::poly {

Complex horner(std::span<const Complex> p, Complex z) noexcept {
    Complex acc{};
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
    return acc;
}

Poly derivative(std::span<const Complex> p) {
    if (p.size() <= 1) return {Complex{}};
    Poly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

Poly add(std::span<const Complex> a, std::span<const Complex> b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    return r;
}

Poly sub(std::span<const Complex> a, std::span<const Complex> b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
    return r;
}

Poly mul(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.empty() || b.empty()) return {Complex{}};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly scale(std::span<const Complex> a, Complex factor) {
    Poly r(a.begin(), a.end());
    for (auto& c : r) c *= factor;
    return r;
}

Poly trim(Poly p, double relative_tol) {
    double m = 0.0;
    for (const auto& c : p) m = std::max(m, std::abs(c));
    while (p.size() > 1 && std::abs(p.back()) <= relative_tol * m) p.pop_back();
    if (p.empty()) p.push_back(Complex{});
    if (m == 0.0) p.assign(1, Complex{});
    return p;
}

std::size_t degree(std::span<const Complex> p) noexcept {
    std::size_t d = p.size();
    while (d > 1 && p[d - 1] == Complex{}) --d;
    return d == 0 ? 0 : d - 1;
}

std::vector<Complex> roots(std::span<const Complex> p) {
    const Poly q = trim(Poly(p.begin(), p.end()));
    const std::size_t n = q.size() - 1;
    if (n == 0) return {};
    if (n == 1) return {-q[0] / q[1]};

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -q[i] / q[n];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    const auto& ev = solver.eigenvalues();

    const Poly dq = derivative(q);
    std::vector<Complex> out;
    out.reserve(n);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        Complex z = ev(i);
        for (int it = 0; it < 3; ++it) {
            const Complex d = horner(dq, z);
            if (std::abs(d) == 0.0) break;
            const Complex step = horner(q, z) / d;
            // Multiple roots make Newton steps unreliable; keep the eigenvalue.
            if (!(std::abs(step) < 1e-6 * (1.0 + std::abs(z)))) break;
            z -= step;
        }
        out.push_back(z);
    }
    return out;
}

Poly deflate(std::span<const Complex> p, Complex r) {
    if (p.size() <= 1) return {Complex{}};
    Poly q(p.size() - 1);
    Complex carry{};
    for (std::size_t k = p.size() - 1; k-- > 0;) {
        carry = p[k + 1] + carry * r;
        q[k] = carry;
    }
    return q;
}

}  // namespace compspec::poly
