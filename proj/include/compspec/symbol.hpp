#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "compspec/polynomial.hpp"
#include "compspec/series.hpp"
#include "compspec/tolerances.hpp"

namespace compspec {

// z -> phase * (z - a) / (1 - conj(a) z), |a| < 1, |phase| = 1.
class MoebiusTransform {
public:
    MoebiusTransform(Complex a, Complex phase);

    // psi_alpha(z) = (alpha - z) / (1 - conj(alpha) z): swaps 0 and alpha and
    // is its own inverse.
    static MoebiusTransform involution(Complex alpha) { return {alpha, Complex{-1.0, 0.0}}; }

    Complex a() const noexcept { return a_; }
    Complex phase() const noexcept { return phase_; }
    Complex operator()(Complex z) const noexcept { return phase_ * (z - a_) / (1.0 - std::conj(a_) * z); }

private:
    Complex a_;
    Complex phase_;
};

// A rational self-map phi = num / den of the unit disc.
//
// Construction validates the map: near-common roots of num and den are
// cancelled, the denominator must have no root with |root| <= 1 + pole_margin,
// and |phi| on the unit circle must not exceed 1 + self_map_tol. The stored
// form has den[0] == 1.
class RationalMap {
public:
    static RationalMap create(poly::Poly num, poly::Poly den, const Tolerances& tol = {});
    static RationalMap identity();
    static RationalMap from_moebius(const MoebiusTransform& m, const Tolerances& tol = {});

    const poly::Poly& numerator() const noexcept { return num_; }
    const poly::Poly& denominator() const noexcept { return den_; }
    std::size_t degree() const noexcept;

    Complex operator()(Complex z) const noexcept { return poly::horner(num_, z) / poly::horner(den_, z); }
    Complex derivative(Complex z) const noexcept;

private:
    RationalMap(poly::Poly num, poly::Poly den) : num_(std::move(num)), den_(std::move(den)) {}

    poly::Poly num_;
    poly::Poly den_;
};

enum class SymbolKind { Automorphism, Schroeder, Superattracting, NoInteriorFixedPoint };

std::string_view symbol_kind_name(SymbolKind kind) noexcept;

struct SymbolClassification {
    SymbolKind kind;
    std::optional<Complex> alpha;
    std::optional<Complex> multiplier;
    // Normal form, present only for automorphisms.
    std::optional<MoebiusTransform> automorphism;
};

// A rational map together with its classification, computed once.
struct Symbol {
    RationalMap map;
    SymbolClassification classification;

    bool is_schroeder() const noexcept { return classification.kind == SymbolKind::Schroeder; }
    Complex alpha() const;
    Complex multiplier() const;
};

Complex eval_map(const RationalMap& m, Complex z) noexcept;

TruncatedPowerSeries taylor_at(const RationalMap& m, Complex center, std::size_t order, const Tolerances& tol = {});

// Picard iteration from 0, polished by Newton's method on phi(z) - z.
Complex find_interior_fixed_point(const RationalMap& m, const Tolerances& tol = {});

std::optional<MoebiusTransform> automorphism_normal_form(const RationalMap& m, const Tolerances& tol = {});

SymbolClassification classify(const RationalMap& m, const Tolerances& tol = {});
Symbol make_symbol(RationalMap m, const Tolerances& tol = {});

Complex iterate(const RationalMap& m, std::size_t k, Complex z) noexcept;

// psi_alpha o m o psi_alpha, computed on the rational coefficients.
RationalMap conjugate_by(const RationalMap& m, Complex alpha, const Tolerances& tol = {});
// As conjugate_by, but requires m(alpha) == alpha so that the result fixes 0.
// alpha == 0 returns m unchanged.
RationalMap conjugate_to_origin(const RationalMap& m, Complex alpha, const Tolerances& tol = {});

// max |m| on the unit circle: dense sampling plus golden-section refinement of
// the largest local maxima.
double boundary_sup(const RationalMap& m);

struct CompactnessResult {
    double sup_estimate;
    bool compact;
};

inline constexpr std::array<double, 4> kDefaultProbeRadii{0.9, 0.99, 0.999, 0.9999};

CompactnessResult compactness_probe(const RationalMap& m, std::span<const double> radii = kDefaultProbeRadii,
                                    int samples_per_circle = 720, const Tolerances& tol = {});

}  // namespace compspec
