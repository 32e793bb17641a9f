#include "compspec/projections.hpp"

#include <cmath>
#include <string>

#include "compspec/error.hpp"

namespace compspec {
namespace {

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t j = 2; j <= n; ++j) f *= static_cast<double>(j);
    return f;
}

void collect(int n, int j, int remaining, std::vector<int>& m, std::vector<PartitionTerm>& out) {
    if (j > n) {
        if (remaining == 0) {
            int w = 0;
            for (int x : m) w += x;
            out.push_back({m, w, Complex{}});
        }
        return;
    }
    for (int count = remaining / j; count >= 0; --count) {
        m[j - 1] = count;
        collect(n, j + 1, remaining - count * j, m, out);
    }
    m[j - 1] = 0;
}

void check_divisor(Complex d, const Tolerances& tol) {
    if (std::abs(d) < tol.small_divisor_tol) {
        throw Error(ErrorKind::SmallDivisor, "eigenvalue difference below small_divisor_tol");
    }
}

}  // namespace

std::vector<PartitionTerm> enumerate_partitions(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "partitions need n >= 1");
    if (n > 20) throw Error(ErrorKind::TooLarge, "partition enumeration is limited to n <= 20");
    std::vector<PartitionTerm> out;
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    collect(n, 1, n, m, out);
    return out;
}

std::vector<PartitionTerm> faa_di_bruno_terms(const TruncatedPowerSeries& phi_series, int n) {
    if (n < 1 || static_cast<std::size_t>(n) > phi_series.order()) {
        throw Error(ErrorKind::OrderExceeded, "derivative order exceeds the symbol series order");
    }
    auto terms = enumerate_partitions(n);
    const double nfact = factorial(static_cast<std::size_t>(n));
    for (auto& t : terms) {
        Complex c{nfact};
        for (std::size_t j = 0; j < t.m.size(); ++j) {
            const int mj = t.m[j];
            if (mj == 0) continue;
            c /= factorial(static_cast<std::size_t>(mj));
            // phi^(j)(alpha) / j! is the Taylor coefficient of index j
            for (int r = 0; r < mj; ++r) c *= phi_series[j + 1];
        }
        t.coefficient = c;
    }
    return terms;
}

Complex faa_di_bruno_derivative(const TruncatedPowerSeries& g, const TruncatedPowerSeries& phi_series, int n,
                                const Tolerances& tol) {
    if (g.center() != phi_series.center()) {
        throw Error(ErrorKind::CenterMismatch, "g and phi must be expanded about the same point");
    }
    if (std::abs(phi_series[0] - phi_series.center()) > tol.compose_center_tol) {
        throw Error(ErrorKind::CenterMismatch, "phi series is not expanded about a fixed point");
    }
    if (n < 1 || static_cast<std::size_t>(n) > g.order()) {
        throw Error(ErrorKind::OrderExceeded, "derivative order exceeds the series order");
    }
    Complex sum{};
    for (const auto& t : faa_di_bruno_terms(phi_series, n)) {
        sum += t.coefficient * derivative_at_center(g, static_cast<std::size_t>(t.weight));
    }
    return sum;
}

ProjectionFamily::ProjectionFamily(KoenigsData koenigs, std::vector<std::vector<Complex>> functionals)
    : koenigs_(std::move(koenigs)), functionals_(std::move(functionals)) {
    if (functionals_.empty()) throw Error(ErrorKind::InvalidArgument, "projection family needs P_0");
}

const std::vector<Complex>& ProjectionFamily::functional(std::size_t n) const {
    if (n > max_n()) throw Error(ErrorKind::IndexExceeded, "projection index beyond max_n");
    return functionals_[n];
}

Complex ProjectionFamily::coefficient(std::size_t n, std::size_t m) const {
    const auto& row = functional(n);
    return m < row.size() ? row[m] : Complex{};
}

Complex ProjectionFamily::psi(std::size_t n, const TruncatedPowerSeries& f) const {
    const auto& row = functional(n);
    if (f.center() != koenigs_.alpha) throw Error(ErrorKind::CenterMismatch, "f must be expanded about alpha");
    if (n > f.order()) throw Error(ErrorKind::OrderExceeded, "f has too few coefficients for this functional");
    Complex sum{};
    for (std::size_t m = 0; m < row.size(); ++m) sum += row[m] * derivative_at_center(f, m);
    return sum;
}

ProjectionFamily build_projection_family(const KoenigsData& kd, std::size_t max_n) {
    if (max_n > kd.max_power() || max_n > kd.order()) {
        throw Error(ErrorKind::IndexExceeded, "max_n exceeds the available kappa powers or series order");
    }
    std::vector<std::vector<Complex>> c(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) c[n].assign(n + 1, Complex{});

    // v[k] = <Psi_k, e_m> with e_m = (z - alpha)^m, so e_m^(l)(alpha) = m! delta_{lm}
    // and (kappa^k)^(n)(alpha) = n! [kappa^k]_n.
    for (std::size_t m = 0; m <= max_n; ++m) {
        const double mfact = factorial(m);
        std::vector<Complex> v(max_n + 1);
        for (std::size_t n = 0; n <= max_n; ++n) {
            Complex g_n = (n == m) ? Complex{mfact / factorial(n)} : Complex{};
            for (std::size_t k = 0; k < n; ++k) g_n -= v[k] * kd.kappa_powers[k][n];
            v[n] = g_n;
            if (m <= n) c[n][m] = v[n] / mfact;
        }
    }
    return ProjectionFamily(kd, std::move(c));
}

TruncatedPowerSeries apply_projection(const ProjectionFamily& pf, std::size_t n, const TruncatedPowerSeries& f) {
    if (n > pf.max_n()) throw Error(ErrorKind::IndexExceeded, "projection index beyond max_n");
    const auto& kn = pf.koenigs().kappa_powers[n];
    if (f.order() != kn.order()) throw Error(ErrorKind::OrderMismatch, "f order differs from the kappa series order");
    return scale(kn, pf.psi(n, f));
}

TruncatedPowerSeries apply_Qn(const ProjectionFamily& pf, std::size_t n, const TruncatedPowerSeries& f) {
    if (n > pf.max_n()) throw Error(ErrorKind::IndexExceeded, "projection index beyond max_n");
    auto acc = apply_projection(pf, 0, f);
    for (std::size_t k = 1; k <= n; ++k) acc = add(acc, apply_projection(pf, k, f));
    return acc;
}

std::vector<Complex> closed_form_P(std::size_t n, const TruncatedPowerSeries& phi_series, const Tolerances& tol) {
    if (n > 3) throw Error(ErrorKind::IndexExceeded, "closed forms exist for P_0..P_3 only");
    if (phi_series.order() < 3) throw Error(ErrorKind::OrderExceeded, "closed forms need phi up to third order");
    const Complex l1 = phi_series[1];
    const Complex l2 = l1 * l1;
    const Complex l3 = l2 * l1;
    const Complex d2 = 2.0 * phi_series[2];  // phi''(alpha)
    const Complex d3 = 6.0 * phi_series[3];  // phi'''(alpha)
    switch (n) {
        case 0: return {Complex{1.0}};
        case 1: return {Complex{}, Complex{1.0}};
        case 2: {
            check_divisor(l2 - l1, tol);
            return {Complex{}, 0.5 * d2 / (l2 - l1), Complex{0.5}};
        }
        default: {
            check_divisor(l2 - l1, tol);
            check_divisor(l3 - l1, tol);
            check_divisor((l1 - l2) * (l1 - l3), tol);
            const Complex first = d3 / (l3 - l1) + 3.0 * d2 * d2 / ((l1 - l2) * (l1 - l3));
            const Complex second = 3.0 * d2 / (l2 - l1);
            return {Complex{}, first / 6.0, second / 6.0, Complex{1.0 / 6.0}};
        }
    }
}

}  // namespace compspec
