#include "compspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "compspec/error.hpp"

namespace compspec {
namespace {

constexpr std::size_t kPicardCap = 100000;
constexpr int kBoundarySamples = 4096;

Complex unit(double theta) { return std::polar(1.0, theta); }

// Cancels pairs of numerator/denominator roots closer than tol.
void cancel_common_roots(poly::Poly& num, poly::Poly& den, double tol) {
    if (poly::degree(num) == 0 || poly::degree(den) == 0) return;
    auto num_roots = poly::roots(num);
    auto den_roots = poly::roots(den);
    for (const Complex& d : den_roots) {
        auto it = std::min_element(num_roots.begin(), num_roots.end(),
                                   [&](Complex x, Complex y) { return std::abs(x - d) < std::abs(y - d); });
        if (it == num_roots.end() || std::abs(*it - d) > tol) continue;
        const Complex r = 0.5 * (*it + d);
        num = poly::deflate(num, r);
        den = poly::deflate(den, r);
        num_roots.erase(it);
    }
}

double golden_max(const RationalMap& m, double lo, double hi) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double t) { return std::abs(m(unit(t))); };
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

MoebiusTransform::MoebiusTransform(Complex a, Complex phase) : a_(a), phase_(phase) {
    if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::InvalidArgument, "Moebius parameter must lie in the open disc");
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "Moebius phase must be unimodular");
    }
}

RationalMap RationalMap::create(poly::Poly num, poly::Poly den, const Tolerances& tol) {
    if (num.empty()) num.push_back(Complex{});
    for (const auto* p : {&num, &den}) {
        for (const auto& c : *p) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw Error(ErrorKind::InvalidArgument, "rational map coefficient is not finite");
            }
        }
    }
    den = poly::trim(std::move(den));
    if (den.size() == 1 && den[0] == Complex{}) {
        throw Error(ErrorKind::InvalidArgument, "denominator is identically zero");
    }
    num = poly::trim(std::move(num));
    cancel_common_roots(num, den, tol.common_root_tol);

    for (const Complex& r : poly::roots(den)) {
        if (std::abs(r) <= 1.0 + tol.pole_margin) {
            throw Error(ErrorKind::PoleInDisc, "denominator vanishes at |z| = " + std::to_string(std::abs(r)) +
                                                   " inside the closed unit disc");
        }
    }
    const Complex d0 = den[0];
    num = poly::trim(poly::scale(num, 1.0 / d0));
    den = poly::trim(poly::scale(den, 1.0 / d0));
    den[0] = 1.0;

    RationalMap m(std::move(num), std::move(den));
    const double sup = boundary_sup(m);
    if (sup > 1.0 + tol.self_map_tol) {
        throw Error(ErrorKind::NotSelfMap, "map is not a self-map of the disc: sup on |z|=1 is " + std::to_string(sup));
    }
    return m;
}

RationalMap RationalMap::identity() { return RationalMap({Complex{}, Complex{1.0}}, {Complex{1.0}}); }

RationalMap RationalMap::from_moebius(const MoebiusTransform& m, const Tolerances& tol) {
    return create({-m.phase() * m.a(), m.phase()}, {Complex{1.0}, -std::conj(m.a())}, tol);
}

std::size_t RationalMap::degree() const noexcept { return std::max(poly::degree(num_), poly::degree(den_)); }

Complex RationalMap::derivative(Complex z) const noexcept {
    const Complex p = poly::horner(num_, z), q = poly::horner(den_, z);
    const Complex dp = poly::horner(poly::derivative(num_), z), dq = poly::horner(poly::derivative(den_), z);
    return (dp * q - p * dq) / (q * q);
}

std::string_view symbol_kind_name(SymbolKind kind) noexcept {
    switch (kind) {
        case SymbolKind::Automorphism: return "Automorphism";
        case SymbolKind::Schroeder: return "Schroeder";
        case SymbolKind::Superattracting: return "Superattracting";
        case SymbolKind::NoInteriorFixedPoint: return "NoInteriorFixedPoint";
    }
    return "Unknown";
}

Complex Symbol::alpha() const {
    if (!classification.alpha) throw Error(ErrorKind::NoInteriorFixedPoint, "symbol has no interior fixed point");
    return *classification.alpha;
}

Complex Symbol::multiplier() const {
    if (!classification.multiplier) throw Error(ErrorKind::NoInteriorFixedPoint, "symbol has no multiplier");
    return *classification.multiplier;
}

Complex eval_map(const RationalMap& m, Complex z) noexcept { return m(z); }

TruncatedPowerSeries taylor_at(const RationalMap& m, Complex center, std::size_t order, const Tolerances& tol) {
    auto num = taylor_shift(m.numerator(), 0.0, center);
    auto den = taylor_shift(m.denominator(), 0.0, center);
    num.resize(order + 1);
    return divide_by_polynomial(TruncatedPowerSeries(center, std::move(num)), den, tol);
}

Complex find_interior_fixed_point(const RationalMap& m, const Tolerances& tol) {
    if (m.degree() == 1 && m.numerator().size() == 2 && m.denominator().size() == 1 && m.numerator()[0] == Complex{} &&
        m.numerator()[1] == Complex{1.0}) {
        throw Error(ErrorKind::InvalidArgument, "the identity map fixes every point");
    }
    const double escape = 1.0 - tol.boundary_margin;
    Complex z{};
    std::size_t k = 0;
    for (; k < kPicardCap; ++k) {
        const Complex next = m(z);
        if (std::abs(next) >= escape) {
            throw Error(ErrorKind::NoInteriorFixedPoint, "orbit of 0 approaches the boundary (Denjoy-Wolff point on the circle)");
        }
        const double step = std::abs(next - z);
        z = next;
        if (step < 1e-10) break;
    }
    if (k == kPicardCap) throw Error(ErrorKind::NonConvergence, "Picard iteration did not settle");

    for (int it = 0; it < 50; ++it) {
        const Complex f = m(z) - z;
        const Complex df = m.derivative(z) - 1.0;
        if (std::abs(df) == 0.0) break;
        const Complex step = f / df;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::NonConvergence, "Newton polishing left the disc");
    if (!(std::abs(m(z) - z) <= tol.fixed_point_tol)) {
        throw Error(ErrorKind::NonConvergence, "fixed point residual above fixed_point_tol");
    }
    return z;
}

std::optional<MoebiusTransform> automorphism_normal_form(const RationalMap& m, const Tolerances& tol) {
    const auto& n = m.numerator();
    const auto& d = m.denominator();
    if (poly::degree(n) > 1 || poly::degree(d) > 1) return std::nullopt;
    const Complex n0 = n[0];
    const Complex n1 = n.size() > 1 ? n[1] : Complex{};
    const Complex d1 = d.size() > 1 ? d[1] : Complex{};
    // phase (z - a) / (1 - conj(a) z) with den[0] == 1
    const Complex a = -std::conj(d1);
    const Complex phase = n1;
    if (std::abs(std::abs(phase) - 1.0) > tol.automorphism_tol) return std::nullopt;
    if (std::abs(n0 + phase * a) > tol.automorphism_tol) return std::nullopt;
    if (!(std::abs(a) < 1.0)) return std::nullopt;
    return MoebiusTransform(a, phase / std::abs(phase));
}

SymbolClassification classify(const RationalMap& m, const Tolerances& tol) {
    if (auto aut = automorphism_normal_form(m, tol)) {
        return {SymbolKind::Automorphism, std::nullopt, std::nullopt, aut};
    }
    Complex alpha;
    try {
        alpha = find_interior_fixed_point(m, tol);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoInteriorFixedPoint) throw;
        return {SymbolKind::NoInteriorFixedPoint, std::nullopt, std::nullopt, std::nullopt};
    }
    const Complex lambda = m.derivative(alpha);
    if (std::abs(lambda) <= tol.zero_multiplier_tol) {
        return {SymbolKind::Superattracting, alpha, lambda, std::nullopt};
    }
    if (std::abs(lambda) >= 1.0 - tol.unit_multiplier_tol) {
        throw Error(ErrorKind::NearUnitMultiplier,
                    "multiplier modulus " + std::to_string(std::abs(lambda)) + " is numerically indistinguishable from 1");
    }
    if (!(std::abs(lambda) < 1.0)) {
        throw Error(ErrorKind::NearUnitMultiplier, "Schwarz lemma violated: |multiplier| >= 1");
    }
    return {SymbolKind::Schroeder, alpha, lambda, std::nullopt};
}

Symbol make_symbol(RationalMap m, const Tolerances& tol) {
    auto cls = classify(m, tol);
    return {std::move(m), cls};
}

Complex iterate(const RationalMap& m, std::size_t k, Complex z) noexcept {
    for (std::size_t i = 0; i < k; ++i) z = m(z);
    return z;
}

RationalMap conjugate_by(const RationalMap& m, Complex alpha, const Tolerances& tol) {
    if (!(std::abs(alpha) < 1.0)) throw Error(ErrorKind::InvalidArgument, "conjugation point must lie in the disc");
    const auto& p = m.numerator();
    const auto& q = m.denominator();
    const std::size_t d = m.degree();
    const poly::Poly A{alpha, Complex{-1.0}};
    const poly::Poly B{Complex{1.0}, -std::conj(alpha)};

    // N(w) = sum p_k A^k B^(d-k), D likewise: m(psi(w)) = N(w) / D(w).
    std::vector<poly::Poly> a_pow{poly::Poly{Complex{1.0}}}, b_pow{poly::Poly{Complex{1.0}}};
    for (std::size_t k = 1; k <= d; ++k) {
        a_pow.push_back(poly::mul(a_pow.back(), A));
        b_pow.push_back(poly::mul(b_pow.back(), B));
    }
    poly::Poly N{Complex{}}, D{Complex{}};
    for (std::size_t k = 0; k <= d; ++k) {
        const auto basis = poly::mul(a_pow[k], b_pow[d - k]);
        if (k < p.size()) N = poly::add(N, poly::scale(basis, p[k]));
        if (k < q.size()) D = poly::add(D, poly::scale(basis, q[k]));
    }
    // psi(N/D) = (alpha D - N) / (D - conj(alpha) N)
    auto num = poly::sub(poly::scale(D, alpha), N);
    auto den = poly::sub(D, poly::scale(N, std::conj(alpha)));
    return RationalMap::create(std::move(num), std::move(den), tol);
}

RationalMap conjugate_to_origin(const RationalMap& m, Complex alpha, const Tolerances& tol) {
    if (std::abs(m(alpha) - alpha) > tol.conjugation_tol) {
        throw Error(ErrorKind::NotAFixedPoint, "conjugation point is not a fixed point of the map");
    }
    if (alpha == Complex{}) return m;
    return conjugate_by(m, alpha, tol);
}

double boundary_sup(const RationalMap& m) {
    std::vector<double> vals(kBoundarySamples);
    const double h = 2.0 * std::numbers::pi / kBoundarySamples;
    for (int j = 0; j < kBoundarySamples; ++j) vals[j] = std::abs(m(unit(j * h)));

    std::vector<int> peaks;
    for (int j = 0; j < kBoundarySamples; ++j) {
        const double prev = vals[(j + kBoundarySamples - 1) % kBoundarySamples];
        const double next = vals[(j + 1) % kBoundarySamples];
        if (vals[j] >= prev && vals[j] >= next) peaks.push_back(j);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int x, int y) { return vals[x] > vals[y]; });
    if (peaks.size() > 8) peaks.resize(8);

    double best = *std::max_element(vals.begin(), vals.end());
    for (int j : peaks) best = std::max(best, golden_max(m, (j - 1) * h, (j + 1) * h));
    return best;
}

CompactnessResult compactness_probe(const RationalMap& m, std::span<const double> radii, int samples_per_circle,
                                    const Tolerances& tol) {
    if (samples_per_circle <= 0) throw Error(ErrorKind::InvalidArgument, "samples_per_circle must be positive");
    double prev = 0.0;
    for (double r : radii) {
        if (!(r > prev && r < 1.0)) {
            throw Error(ErrorKind::InvalidArgument, "probe radii must be strictly increasing in (0, 1)");
        }
        prev = r;
    }
    double sup = 0.0;
    const double h = 2.0 * std::numbers::pi / samples_per_circle;
    for (double r : radii) {
        for (int j = 0; j < samples_per_circle; ++j) sup = std::max(sup, std::abs(m(r * unit(j * h))));
    }
    // Rational self-maps extend continuously to the closed disc, so the
    // supremum over D is the maximum on the unit circle itself.
    sup = std::max(sup, boundary_sup(m));
    return {sup, sup < 1.0 - tol.compactness_margin};
}

}  // namespace compspec
