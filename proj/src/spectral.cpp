#include "compspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

#include "compspec/error.hpp"
#include "compspec/projections.hpp"

namespace compspec {

std::string_view spectrum_point_kind_name(SpectrumPointKind kind) noexcept {
    return kind == SpectrumPointKind::Eigenvalue ? "Eigenvalue" : "EssentialPoint";
}

SpectrumReport spectrum_report(const Symbol& symbol, std::size_t max_n, const Tolerances& tol) {
    const auto& cls = symbol.classification;
    if (cls.kind == SymbolKind::Automorphism) {
        throw Error(ErrorKind::AutomorphismSymbol,
                    "automorphisms have every nonzero point of an annulus or circle as eigenvalue; no report");
    }
    if (cls.kind == SymbolKind::NoInteriorFixedPoint) {
        throw Error(ErrorKind::NoInteriorFixedPoint, "spectrum report needs an interior fixed point");
    }
    SpectrumReport report;
    report.classification = cls;
    report.max_n = max_n;
    report.spectrum_points.push_back({Complex{}, SpectrumPointKind::EssentialPoint});
    if (cls.kind == SymbolKind::Schroeder) {
        Complex p{1.0};
        for (std::size_t n = 0; n <= max_n; ++n) {
            report.spectrum_points.push_back({p, SpectrumPointKind::Eigenvalue});
            p *= symbol.multiplier();
        }
    } else {
        report.spectrum_points.push_back({Complex{1.0}, SpectrumPointKind::Eigenvalue});
    }
    const auto probe = compactness_probe(symbol.map, kDefaultProbeRadii, 720, tol);
    report.compact = probe.compact;
    report.compactness_sup = probe.sup_estimate;
    return report;
}

double contour_radius(const SchroederSolver& solver, std::size_t n) {
    const std::size_t max_n = solver.config().max_n;
    if (n > max_n) throw Error(ErrorKind::IndexExceeded, "contour index exceeds max_n");
    const Complex ln = solver.eigenvalue(n);
    double d = std::abs(ln);
    for (std::size_t k = 0; k <= max_n + 2; ++k) {
        if (k != n) d = std::min(d, std::abs(ln - solver.eigenvalue(k)));
    }
    return 0.5 * d;
}

std::vector<ContourCheck> contour_verify(const SchroederSolver& solver, std::size_t n, const HolomorphicFunction& f,
                                         std::span<const Complex> points, const ContourOptions& options) {
    if (options.nodes < 64) throw Error(ErrorKind::InvalidArgument, "contour quadrature needs at least 64 nodes");
    if (!(options.radius_factor > 0.0 && options.radius_factor <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "radius_factor must lie in (0, 1]");
    }
    const double radius = contour_radius(solver, n) * options.radius_factor;
    const Complex ln = solver.eigenvalue(n);
    const std::size_t m = options.nodes;
    const std::size_t np = points.size();

    // weights[j] * values[j][i], summed in node order afterwards
    std::vector<std::vector<Complex>> values(m, std::vector<Complex>(np));
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            const Complex offset = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) / m);
            const SolveResult r = solver.resolve(ln + offset, f);
            for (std::size_t i = 0; i < np; ++i) values[j][i] = r(points[i]) * offset;
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    const std::size_t chunk = (m + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::size_t lo = 0; lo < m; lo += chunk) {
        jobs.push_back(std::async(std::launch::async, work, lo, std::min(m, lo + chunk)));
    }
    for (auto& j : jobs) j.get();

    const auto& pf = solver.projections();
    const Complex psi = pf.psi(n, f.expand(solver.alpha(), solver.config().order));
    std::vector<ContourCheck> out;
    out.reserve(np);
    for (std::size_t i = 0; i < np; ++i) {
        Complex q{};
        for (std::size_t j = 0; j < m; ++j) q += values[j][i];
        q /= static_cast<double>(m);
        const Complex kz = kappa_by_pullback(pf.koenigs(), solver.symbol(), points[i]);
        Complex kn{1.0};
        for (std::size_t k = 0; k < n; ++k) kn *= kz;
        const Complex direct = psi * kn;
        out.push_back({points[i], q, direct, std::abs(q - direct), radius});
    }
    return out;
}

ContourCheck contour_verify(const SchroederSolver& solver, std::size_t n, const HolomorphicFunction& f, Complex z,
                            const ContourOptions& options) {
    return contour_verify(solver, n, f, std::span<const Complex>(&z, 1), options).front();
}

Complex automorphism_eigenfunction(Complex lambda, Complex z) {
    if (lambda == Complex{}) return 1.0;
    return std::exp(lambda * std::log((1.0 + z) / (1.0 - z)));
}

double automorphism_eigen_fixture(double r, Complex lambda, std::span<const Complex> grid) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidArgument, "r must lie in (0, 1)");
    const Complex factor = std::exp(lambda * std::log((1.0 + r) / (1.0 - r)));
    double worst = 0.0;
    for (const Complex z : grid) {
        const Complex psi = (z + r) / (1.0 + r * z);
        worst = std::max(worst, std::abs(automorphism_eigenfunction(lambda, psi) -
                                         factor * automorphism_eigenfunction(lambda, z)));
    }
    return worst;
}

std::vector<Complex> automorphism_fixture_grid() {
    std::vector<Complex> grid;
    for (int i = 0; i < 6; ++i) {
        const double rad = 0.2 + 0.12 * i;
        for (int j = 0; j < 10; ++j) grid.push_back(std::polar(rad, 2.0 * std::numbers::pi * j / 10.0 + 0.05));
    }
    return grid;
}

HardyMembership hardy_membership(const KoenigsData& kd, std::size_t p, const WeightedHardyParams& params,
                                 const Tolerances& tol) {
    if (!(params.a <= 0.0)) throw Error(ErrorKind::InvalidArgument, "weight exponent a must not be positive");
    if (params.truncation_K < 1000) throw Error(ErrorKind::InvalidArgument, "truncation_K must be at least 1000");
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "power p must be positive");
    if (kd.alpha != Complex{}) {
        throw Error(ErrorKind::InvalidArgument, "Hardy diagnostic reads coefficients about 0; conjugate alpha to 0");
    }
    const std::size_t K = params.truncation_K;
    if (kd.order() < K) {
        throw Error(ErrorKind::InsufficientOrder, "Koenigs series order " + std::to_string(kd.order()) +
                                                      " is below the truncation K = " + std::to_string(K));
    }
    TruncatedPowerSeries kp = p <= kd.max_power() ? kd.kappa_powers[p] : kd.kappa;
    for (std::size_t k = std::max<std::size_t>(kd.max_power(), 1); k < p; ++k) kp = mul(kp, kd.kappa);

    HardyMembership out;
    out.checkpoints = {K / 8, K / 4, K / 2, K};
    double partial = 0.0;
    std::size_t next = 0;
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k <= K; ++k) {
        const double inc = std::norm(kp[k]) * std::pow(static_cast<double>(k + 1), 2.0 * params.a);
        partial += inc;
        if (k >= K / 8 && inc > 0.0) {
            xs.push_back(std::log(static_cast<double>(k)));
            ys.push_back(std::log(inc));
        }
        while (next < out.checkpoints.size() && k == out.checkpoints[next]) {
            out.partial_norms.push_back(partial);
            ++next;
        }
    }
    if (xs.size() < 2) {
        // the coefficients vanish on the tail: a polynomial is in every such space
        out.growth_exponent = -HUGE_VAL;
        out.member = true;
        return out;
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    out.growth_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.member = out.growth_exponent < -1.0 - tol.growth_margin;
    return out;
}

HurstReference hurst_reference(const Symbol& symbol, double a) {
    if (!symbol.is_schroeder()) throw Error(ErrorKind::NotSchroeder, "Hurst reference needs a Schroeder symbol");
    const Complex l1 = symbol.multiplier();
    if (std::abs(l1.imag()) > 1e-12 || !(l1.real() > 0.0 && l1.real() < 1.0)) {
        throw Error(ErrorKind::NotRealMultiplier, "multiplier must be real and in (0, 1)");
    }
    HurstReference out;
    out.essential_radius = std::pow(l1.real(), (2.0 * std::abs(a) + 1.0) / 2.0);
    double ln = 1.0;
    for (std::size_t n = 0; ln > out.essential_radius; ++n, ln *= l1.real()) {
        out.indices_outside.push_back(n);
        out.eigenvalues_outside.push_back(ln);
    }
    return out;
}

}  // namespace compspec
