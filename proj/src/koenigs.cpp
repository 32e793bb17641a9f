#include "compspec/koenigs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "compspec/error.hpp"

namespace compspec {
namespace {

constexpr std::size_t kPullbackCap = 10000;

}  // namespace

Complex KoenigsData::eigenvalue(std::size_t n) const noexcept {
    Complex p{1.0};
    for (std::size_t k = 0; k < n; ++k) p *= lambda1;
    return p;
}

double default_eval_radius(Complex alpha) noexcept { return 0.5 * (1.0 - std::abs(alpha)); }

KoenigsData build_koenigs(const Symbol& symbol, std::size_t order, std::size_t max_power, const Tolerances& tol) {
    if (!symbol.is_schroeder()) {
        throw Error(ErrorKind::NotSchroeder, "Koenigs eigenfunction requires a Schroeder symbol, got " +
                                                 std::string(symbol_kind_name(symbol.classification.kind)));
    }
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
    const Complex alpha = symbol.alpha();
    const Complex lambda = symbol.multiplier();

    // w(u) = phi(alpha + u) - alpha = P(u) / Q(u)
    const auto q = taylor_shift(symbol.map.denominator(), 0.0, alpha);
    auto p = poly::sub(taylor_shift(symbol.map.numerator(), 0.0, alpha), poly::scale(q, alpha));
    p[0] = 0.0;
    if (p.size() > order + 1) p.resize(order + 1);

    const std::size_t n_max = order;
    std::vector<Complex> c(n_max + 1);
    std::vector<Complex> acc(n_max + 1);    // sum_{k known} c_k w^k
    std::vector<Complex> power(n_max + 1);  // w^k
    std::vector<Complex> scratch(n_max + 1);
    const Complex inv_q0 = 1.0 / q[0];

    auto advance_power = [&]() {
        // power <- power * P / Q
        std::fill(scratch.begin(), scratch.end(), Complex{});
        for (std::size_t i = 0; i <= n_max; ++i) {
            if (power[i] == Complex{}) continue;
            for (std::size_t j = 1; j < p.size() && i + j <= n_max; ++j) scratch[i + j] += power[i] * p[j];
        }
        for (std::size_t i = 0; i <= n_max; ++i) {
            Complex v = scratch[i];
            const std::size_t top = std::min(i, q.size() - 1);
            for (std::size_t j = 1; j <= top; ++j) v -= q[j] * power[i - j];
            v *= inv_q0;
            // flush values that would only feed denormal arithmetic
            power[i] = std::abs(v) < 1e-290 ? Complex{} : v;
        }
    };

    power[0] = 1.0;
    c[1] = 1.0;
    advance_power();  // w^1
    for (std::size_t i = 0; i <= n_max; ++i) acc[i] += power[i];

    Complex lambda_n = lambda;
    for (std::size_t n = 2; n <= n_max; ++n) {
        lambda_n *= lambda;
        const Complex divisor = lambda - lambda_n;
        if (std::abs(divisor) < tol.small_divisor_tol) {
            throw Error(ErrorKind::SmallDivisor, "|lambda1 - lambda1^" + std::to_string(n) + "| below small_divisor_tol");
        }
        c[n] = acc[n] / divisor;
        advance_power();  // w^n
        for (std::size_t i = n; i <= n_max; ++i) acc[i] += c[n] * power[i];
    }

    TruncatedPowerSeries kappa(alpha, std::move(c));
    std::vector<TruncatedPowerSeries> powers;
    powers.reserve(max_power + 1);
    powers.push_back(TruncatedPowerSeries::constant(alpha, order, 1.0));
    for (std::size_t k = 1; k <= max_power; ++k) powers.push_back(mul(powers.back(), kappa));

    return KoenigsData{alpha, lambda, std::move(kappa), std::move(powers), default_eval_radius(alpha)};
}

double verify_eigen_relation(const KoenigsData& kd, const Symbol& symbol, std::size_t n,
                             std::span<const Complex> grid) {
    if (n > kd.max_power()) throw Error(ErrorKind::IndexExceeded, "power exceeds the stored kappa powers");
    const auto& s = kd.kappa_powers[n];
    const Complex lambda_n = kd.eigenvalue(n);
    double worst = 0.0;
    for (const Complex z : grid) {
        worst = std::max(worst, std::abs(evaluate(s, symbol.map(z)) - lambda_n * evaluate(s, z)));
    }
    return worst;
}

Complex kappa_by_pullback(const KoenigsData& kd, const Symbol& symbol, Complex z, std::size_t extra_steps) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "evaluation point must lie in the open disc");
    Complex w = z;
    std::size_t k = 0;
    while (std::abs(w - kd.alpha) > kd.eval_radius) {
        if (++k > kPullbackCap) throw Error(ErrorKind::NonConvergence, "orbit did not enter the evaluation radius");
        w = symbol.map(w);
    }
    for (std::size_t j = 0; j < extra_steps; ++j, ++k) w = symbol.map(w);
    return evaluate(kd.kappa, w) / kd.eigenvalue(k);
}

std::vector<Complex> disc_grid(Complex alpha, double radius, std::size_t count) {
    std::vector<Complex> out;
    out.reserve(count);
    const std::size_t rings = std::max<std::size_t>(1, count / 10);
    for (std::size_t j = 0; j < count; ++j) {
        const std::size_t ring = j % rings;
        const double r = radius * static_cast<double>(ring + 1) / static_cast<double>(rings);
        // irrational angular offset keeps the points off the real axis patterns
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count) + 0.1;
        out.push_back(alpha + std::polar(r, theta));
    }
    return out;
}

}  // namespace compspec
