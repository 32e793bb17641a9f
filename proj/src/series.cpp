#include "compspec/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "compspec/error.hpp"

namespace compspec {
namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_compatible(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    if (a.center() != b.center()) {
        throw Error(ErrorKind::CenterMismatch, "series are expanded about different centers");
    }
    if (a.order() != b.order()) {
        throw Error(ErrorKind::OrderMismatch,
                    "series orders differ (" + std::to_string(a.order()) + " vs " + std::to_string(b.order()) + ")");
    }
}

}  // namespace

TruncatedPowerSeries::TruncatedPowerSeries(Complex center, std::vector<Complex> coeffs)
    : center_(center), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "a series needs at least one coefficient");
    if (!is_finite(center_)) throw Error(ErrorKind::InvalidArgument, "series center is not finite");
    if (!std::all_of(coeffs_.begin(), coeffs_.end(), is_finite)) {
        throw Error(ErrorKind::InvalidArgument, "series coefficient is not finite");
    }
}

TruncatedPowerSeries TruncatedPowerSeries::zero(Complex center, std::size_t order) {
    return {center, std::vector<Complex>(order + 1)};
}

TruncatedPowerSeries TruncatedPowerSeries::constant(Complex center, std::size_t order, Complex value) {
    std::vector<Complex> c(order + 1);
    c[0] = value;
    return {center, std::move(c)};
}

TruncatedPowerSeries TruncatedPowerSeries::monomial(Complex center, std::size_t order, std::size_t k) {
    std::vector<Complex> c(order + 1);
    if (k <= order) c[k] = 1.0;
    return {center, std::move(c)};
}

TruncatedPowerSeries TruncatedPowerSeries::identity(Complex center, std::size_t order) {
    std::vector<Complex> c(order + 1);
    c[0] = center;
    if (order >= 1) c[1] = 1.0;
    return {center, std::move(c)};
}

double TruncatedPowerSeries::sup_norm() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

TruncatedPowerSeries TruncatedPowerSeries::with_coeff(std::size_t k, Complex value) const {
    if (k > order()) throw Error(ErrorKind::OrderExceeded, "coefficient index beyond series order");
    auto c = coeffs_;
    c[k] = value;
    return {center_, std::move(c)};
}

TruncatedPowerSeries TruncatedPowerSeries::resized(std::size_t order) const {
    auto c = coeffs_;
    c.resize(order + 1);
    return {center_, std::move(c)};
}

TruncatedPowerSeries add(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    require_compatible(a, b);
    std::vector<Complex> c(a.order() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    return {a.center(), std::move(c)};
}

TruncatedPowerSeries sub(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    require_compatible(a, b);
    std::vector<Complex> c(a.order() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
    return {a.center(), std::move(c)};
}

TruncatedPowerSeries scale(const TruncatedPowerSeries& a, Complex factor) {
    std::vector<Complex> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& x : c) x *= factor;
    return {a.center(), std::move(c)};
}

TruncatedPowerSeries mul(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    require_compatible(a, b);
    const std::size_t n = a.order();
    std::vector<Complex> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == Complex{}) continue;
        for (std::size_t j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
    }
    return {a.center(), std::move(c)};
}

TruncatedPowerSeries compose(const TruncatedPowerSeries& outer, const TruncatedPowerSeries& inner,
                             const Tolerances& tol) {
    if (outer.order() != inner.order()) {
        throw Error(ErrorKind::OrderMismatch, "compose needs series of equal order");
    }
    if (std::abs(inner[0] - outer.center()) > tol.compose_center_tol) {
        throw Error(ErrorKind::CenterMismatch, "inner series does not take the value outer.center at its center");
    }
    const std::size_t n = outer.order();
    const Complex c = inner.center();
    auto shifted = inner.with_coeff(0, inner[0] - outer.center());

    auto acc = TruncatedPowerSeries::constant(c, n, outer[n]);
    for (std::size_t k = n; k-- > 0;) {
        acc = mul(acc, shifted);
        acc = acc.with_coeff(0, acc[0] + outer[k]);
    }
    return acc;
}

Complex derivative_at_center(const TruncatedPowerSeries& s, std::size_t k) {
    if (k > s.order()) throw Error(ErrorKind::OrderExceeded, "derivative order exceeds series order");
    double factorial = 1.0;
    for (std::size_t j = 2; j <= k; ++j) factorial *= static_cast<double>(j);
    return factorial * s[k];
}

Complex evaluate(const TruncatedPowerSeries& s, Complex z) noexcept {
    const Complex w = z - s.center();
    Complex acc{};
    for (std::size_t k = s.order() + 1; k-- > 0;) acc = acc * w + s[k];
    return acc;
}

TruncatedPowerSeries reciprocal(const TruncatedPowerSeries& s, const Tolerances& tol) {
    if (std::abs(s[0]) <= tol.reciprocal_tol) {
        throw Error(ErrorKind::ZeroConstantTerm, "cannot invert a series with vanishing constant term");
    }
    const std::size_t n = s.order();
    std::vector<Complex> t(n + 1);
    const Complex inv0 = 1.0 / s[0];
    t[0] = inv0;
    for (std::size_t k = 1; k <= n; ++k) {
        Complex acc{};
        for (std::size_t j = 1; j <= k; ++j) acc += s[j] * t[k - j];
        t[k] = -acc * inv0;
    }
    return {s.center(), std::move(t)};
}

TruncatedPowerSeries divide_by_polynomial(const TruncatedPowerSeries& num, std::span<const Complex> den,
                                          const Tolerances& tol) {
    if (den.empty() || std::abs(den[0]) <= tol.reciprocal_tol) {
        throw Error(ErrorKind::ZeroConstantTerm, "divisor vanishes at the expansion center");
    }
    const std::size_t n = num.order();
    const Complex inv0 = 1.0 / den[0];
    std::vector<Complex> q(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Complex acc = num[k];
        const std::size_t top = std::min(k, den.size() - 1);
        for (std::size_t j = 1; j <= top; ++j) acc -= den[j] * q[k - j];
        q[k] = acc * inv0;
    }
    return {num.center(), std::move(q)};
}

bool vanishes_to_order(const TruncatedPowerSeries& s, std::size_t n, double tol) {
    if (n > s.order()) throw Error(ErrorKind::OrderExceeded, "vanishing order exceeds series order");
    for (std::size_t k = 0; k <= n; ++k) {
        if (std::abs(s[k]) > tol) return false;
    }
    return true;
}

std::vector<Complex> taylor_shift(std::span<const Complex> coeffs, Complex from, Complex to) {
    if (coeffs.empty()) return {};
    const Complex d = to - from;
    // Horner in the polynomial ring: r <- r * (w + d) + c_k.
    std::vector<Complex> r{coeffs.back()};
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        std::vector<Complex> next(r.size() + 1);
        for (std::size_t j = 0; j < r.size(); ++j) {
            next[j + 1] += r[j];
            next[j] += r[j] * d;
        }
        next[0] += coeffs[k];
        r = std::move(next);
    }
    return r;
}

}  // namespace compspec
