#include "compspec/schroeder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "compspec/error.hpp"

namespace compspec {
namespace {

constexpr std::size_t kMaxTerms = 100000;
constexpr std::size_t kMaxSeriesTerms = 20000;
constexpr int kProbeSamples = 720;
constexpr int kMaxHalvings = 60;

// Complex number with a separate binary exponent, so that g2(w_k) / lambda^(k+1)
// can be formed when the two factors alone would under- or overflow.
struct Scaled {
    Complex m{1.0};
    long e = 0;

    void normalize() {
        const double a = std::max(std::abs(m.real()), std::abs(m.imag()));
        if (a == 0.0 || !std::isfinite(a) || (a > 0x1p-500 && a < 0x1p500)) return;
        int ex = 0;
        std::frexp(a, &ex);
        m = {std::ldexp(m.real(), -ex), std::ldexp(m.imag(), -ex)};
        e += ex;
    }
    Scaled& operator*=(Complex c) {
        m *= c;
        normalize();
        return *this;
    }
    Scaled& operator*=(const Scaled& o) {
        m *= o.m;
        e += o.e;
        normalize();
        return *this;
    }
    Complex value() const {
        if (m == Complex{} || e == 0) return m;
        if (e > 4000) return {HUGE_VAL, HUGE_VAL};
        if (e < -4000) return {};
        const int ex = static_cast<int>(e);
        return {std::ldexp(m.real(), ex), std::ldexp(m.imag(), ex)};
    }
};

// Neumaier summation; the orbit series can cancel heavily when |lambda| is small
struct CompensatedSum {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

    static void add(double& s, double& c, double x) {
        const double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    void operator+=(Complex x) {
        add(re, cre, x.real());
        add(im, cim, x.imag());
    }
    Complex value() const { return {re + cre, im + cim}; }
};

// Largest radius about the center on which the last few retained terms are
// below rounding relative to the largest term, i.e. truncation is invisible.
double trusted_radius(const TruncatedPowerSeries& s, double rmax) {
    const std::size_t n = s.order();
    std::vector<double> lg(n + 1);
    for (std::size_t j = 0; j <= n; ++j) lg[j] = std::log(std::abs(s[j]));
    auto ok = [&](double r) {
        const double lr = std::log(r);
        double head = -HUGE_VAL, tail = -HUGE_VAL;
        for (std::size_t j = 0; j <= n; ++j) {
            const double t = lg[j] + static_cast<double>(j) * lr;
            head = std::max(head, t);
            if (j + 8 > n) tail = std::max(tail, t);
        }
        return tail == -HUGE_VAL || tail <= head + std::log(1e-17);
    };
    if (ok(rmax)) return rmax;
    double lo = 0.0, hi = rmax;
    for (int i = 0; i < 50; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

// squared pseudo-hyperbolic distance
double pseudo_norm(Complex alpha, Complex w) noexcept {
    return std::norm(alpha - w) / std::norm(1.0 - std::conj(alpha) * w);
}

}  // namespace

namespace detail {

struct OrbitSolution {
    OrbitSolution(RationalMap m, HolomorphicFunction rhs, TruncatedPowerSeries tail)
        : map(std::move(m)), g(std::move(rhs)), g2(std::move(tail)) {}

    RationalMap map;
    HolomorphicFunction g;
    TruncatedPowerSeries g2;  // g - Q_n g about alpha; coefficients 0..v-1 are zero
    std::size_t v = 1;        // vanishing order of g2
    std::vector<double> g2_abs;
    std::vector<double> g2_log;
    TruncatedPowerSeries phi = TruncatedPowerSeries::zero(0.0, 1);  // about alpha
    std::vector<double> phi_abs;
    std::vector<double> phi_log;
    std::size_t phi_low = 1;  // lowest nonzero coefficient of phi - alpha
    Complex alpha{};
    Complex lambda{};
    Complex lambda1{};
    std::optional<TruncatedPowerSeries> kappa;
    std::vector<std::size_t> powers;  // m with a nonzero diagonal term
    std::vector<Complex> a;           // a_m = <Psi_m, g>
    std::vector<Complex> b;           // b_m = a_m / (lambda - lambda_m), 0 for a skipped index
    double zone = 0.5;                // pseudo-hyperbolic radius where the series are trusted
    double eps = 0.5;
    double rho = 0.0;

    Complex evaluate(Complex z, std::size_t* terms) const;
};

Complex OrbitSolution::evaluate(Complex z, std::size_t* terms) const {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "evaluation point must lie in the open disc");

    std::vector<Complex> orbit{z};
    while (pseudo_norm(alpha, orbit.back()) > zone * zone) {
        if (orbit.size() > kMaxTerms) throw Error(ErrorKind::NonConvergence, "orbit did not approach the fixed point");
        orbit.push_back(map(orbit.back()));
    }
    const std::size_t entry = orbit.size() - 1;

    const bool need_kappa = std::any_of(powers.begin(), powers.end(), [](std::size_t m) { return m > 0; });
    std::vector<Complex> kap;
    if (need_kappa) {
        kap.resize(entry + 1);
        kap[entry] = compspec::evaluate(*kappa, orbit[entry]);
        for (std::size_t k = entry; k > 0; --k) kap[k - 1] = kap[k] / lambda1;
    }
    auto diagonal = [&](const std::vector<Complex>& coef, std::size_t k) {
        Complex s{};
        for (std::size_t i = 0; i < powers.size(); ++i) {
            s += powers[i] == 0 ? coef[i] : coef[i] * std::pow(kap[k], static_cast<int>(powers[i]));
        }
        return s;
    };

    const Complex f1 = diagonal(b, 0);
    const Complex inv_lambda = 1.0 / lambda;
    Scaled inv;
    inv *= inv_lambda;
    CompensatedSum sum;
    Complex w = z;
    Complex d{};
    std::size_t top = g2.order();
    std::size_t ptop = phi.order();
    const double stop = 1e-15 * std::min(1.0, (1.0 - rho) / rho);
    std::size_t k = 0;
    for (;; ++k) {
        if (k >= kMaxTerms) throw Error(ErrorKind::NonConvergence, "orbit series did not converge within the term cap");
        if (k < entry) {
            Scaled t = inv;
            t *= g(w) - diagonal(a, k);
            sum += t.value();
        } else {
            // g2(w) = d^v H(d) with d = w - alpha
            if (k == entry) d = w - alpha;
            Complex h{};
            double h_abs = 0.0;
            const double d2 = std::norm(d);
            const double dm = std::sqrt(d2);
            // the orbit shrinks geometrically; drop coefficients that no longer contribute
            if (d2 < 1.0) {
                const double log_dm = 0.5 * std::log(d2);
                // size of H(d) judged from its first few terms
                double lead = -HUGE_VAL;
                for (std::size_t j = v; j <= std::min(top, v + 8); ++j) {
                    lead = std::max(lead, g2_log[j] + static_cast<double>(j - v) * log_dm);
                }
                while (top > v && g2_log[top] + static_cast<double>(top - v) * log_dm < lead - 46.0) --top;
            }
            for (std::size_t j = top + 1; j-- > v;) {
                h = h * d + g2[j];
                h_abs = h_abs * dm + g2_abs[j];
            }
            Scaled t = inv;
            for (std::size_t j = 0; j < v; ++j) t *= d;
            const Complex scale = t.value();
            sum += scale * h;
            if (pseudo_norm(alpha, alpha + d) <= eps * eps) {
                // remaining terms shrink at least like rho^j inside the eps-disc
                const double bound = std::sqrt(std::norm(scale)) * h_abs;
                const double ref = std::max(1.0, std::abs(sum.value()));
                if (bound <= stop * ref) break;
            }
            // w itself cannot get closer to alpha than its rounding error, so
            // follow d through the Taylor series of phi, which fixes 0 exactly
            if (d2 < 1.0) {
                const double log_dm = 0.5 * std::log(d2);
                const double lead = phi_log[phi_low] + static_cast<double>(phi_low - 1) * log_dm;
                while (ptop > phi_low && phi_log[ptop] + static_cast<double>(ptop - 1) * log_dm < lead - 46.0) {
                    --ptop;
                }
            }
            Complex p{};
            for (std::size_t j = ptop; j >= 1; --j) p = p * d + phi[j];
            d *= p;
        }
        if (!std::isfinite(sum.re) || !std::isfinite(sum.im)) {
            throw Error(ErrorKind::NonConvergence, "orbit series overflowed");
        }
        if (k + 1 <= entry) w = orbit[k + 1];
        inv *= inv_lambda;
    }
    if (terms) *terms = k + 1;
    return f1 + sum.value();
}

}  // namespace detail

SolveResult::SolveResult(std::shared_ptr<const detail::OrbitSolution> impl, std::optional<TruncatedPowerSeries> series,
                         SolveDiagnostics diagnostics)
    : impl_(std::move(impl)), f_series_(std::move(series)), diagnostics_(diagnostics) {}

Complex SolveResult::operator()(Complex z) const { return impl_->evaluate(z, nullptr); }

HolomorphicFunction SolveResult::as_function() const {
    auto impl = impl_;
    auto series = f_series_;
    return HolomorphicFunction::custom([impl](Complex z) { return impl->evaluate(z, nullptr); },
                                       [series](Complex center, std::size_t order) {
                                           if (!series || center != series->center()) {
                                               throw Error(ErrorKind::InvalidArgument,
                                                           "solver output expands only about the fixed point "
                                                           "and only in series mode");
                                           }
                                           return series->resized(order);
                                       },
                                       "resolvent output");
}

SchroederSolver::SchroederSolver(Symbol symbol, SolverConfig config)
    : symbol_(std::move(symbol)),
      config_(config),
      alpha_(),
      lambda1_(),
      conjugated_(RationalMap::identity()),
      phi_series_(TruncatedPowerSeries::zero(0.0, 1)) {
    const auto kind = symbol_.classification.kind;
    if (kind != SymbolKind::Schroeder && kind != SymbolKind::Superattracting) {
        throw Error(ErrorKind::NotSchroeder,
                    "solver needs a Schroeder or superattracting symbol, got " + std::string(symbol_kind_name(kind)));
    }
    if (config_.order < 1) throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
    alpha_ = symbol_.alpha();
    lambda1_ = symbol_.multiplier();
    conjugated_ = conjugate_to_origin(symbol_.map, alpha_, config_.tol);
    phi_series_ = taylor_at(symbol_.map, alpha_, config_.order, config_.tol);
    if (kind == SymbolKind::Schroeder) {
        if (config_.max_n > config_.order) throw Error(ErrorKind::InvalidArgument, "max_n exceeds the series order");
        auto kd = build_koenigs(symbol_, config_.order, config_.max_n, config_.tol);
        family_.emplace(build_projection_family(kd, config_.max_n));
    }
    map_radius_ = trusted_radius(phi_series_, 1.0 - std::abs(alpha_));
    if (family_) map_radius_ = std::min(map_radius_, trusted_radius(family_->koenigs().kappa, 1.0 - std::abs(alpha_)));
    const MoebiusTransform psi = MoebiusTransform::involution(alpha_);
    for (int i = 0; i < 5; ++i) {
        const double r = 0.1 + 0.2 * i;
        for (int j = 0; j < 10; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / 10.0 + 0.1 * (i + 1);
            grid_.push_back(psi(std::polar(r, theta)));
        }
    }
}

const KoenigsData& SchroederSolver::koenigs() const { return projections().koenigs(); }

const ProjectionFamily& SchroederSolver::projections() const {
    if (!family_) throw Error(ErrorKind::NotSchroeder, "projections exist only for Schroeder symbols");
    return *family_;
}

Complex SchroederSolver::eigenvalue(std::size_t n) const {
    Complex p{1.0};
    for (std::size_t k = 0; k < n; ++k) p *= lambda1_;
    return p;
}

double SchroederSolver::series_zone(const TruncatedPowerSeries& g2) const {
    const double a = std::abs(alpha_);
    const double rho = std::min(trusted_radius(g2, 1.0 - a), map_radius_);
    // |w - alpha| <= rho on the pseudo-hyperbolic disc of this radius
    return std::min(0.9, rho / (1.0 - a * a + rho * a));
}

std::pair<double, double> SchroederSolver::find_epsilon(std::size_t n, double lambda_abs) const {
    const double target = lambda_abs * (1.0 - config_.tol.q_margin);
    double eps = 0.5;
    for (int h = 0; h < kMaxHalvings; ++h, eps *= 0.5) {
        double q = 0.0;
        for (int j = 0; j < kProbeSamples; ++j) {
            const Complex u = std::polar(eps, 2.0 * std::numbers::pi * j / kProbeSamples);
            q = std::max(q, std::abs(conjugated_(u)) / eps);
        }
        if (std::pow(q, static_cast<double>(n + 1)) < target) return {eps, q};
    }
    return {0.0, 0.0};
}

SolveResult SchroederSolver::resolve(Complex lambda, const HolomorphicFunction& g, OutputMode mode) const {
    if (symbol_.classification.kind == SymbolKind::Superattracting) return resolve_superattracting(lambda, g, mode);
    if (std::abs(lambda) <= config_.tol.eigen_sep_tol) throw Error(ErrorKind::ZeroLambda, "lambda = 0 is in the spectrum");
    for (std::size_t k = 0; k <= config_.max_n; ++k) {
        if (std::abs(lambda - eigenvalue(k)) <= config_.tol.eigen_sep_tol) {
            throw Error(ErrorKind::EigenvalueCollision,
                        "lambda coincides with lambda_" + std::to_string(k) + "; use the eigenvalue solve");
        }
    }
    return run(lambda, g, mode, std::nullopt, 0);
}

SolveResult SchroederSolver::resolve_at_eigenvalue(std::size_t n, const HolomorphicFunction& g, OutputMode mode) const {
    if (!symbol_.is_schroeder()) throw Error(ErrorKind::NotSchroeder, "eigenvalue solve needs a Schroeder symbol");
    if (n > config_.max_n) throw Error(ErrorKind::IndexExceeded, "eigenvalue index exceeds max_n");
    const Complex lambda = eigenvalue(n);
    if (std::abs(lambda) <= config_.tol.eigen_sep_tol) throw Error(ErrorKind::ZeroLambda, "lambda_n is numerically zero");
    for (std::size_t k = 0; k <= config_.max_n; ++k) {
        if (k != n && std::abs(lambda - eigenvalue(k)) <= config_.tol.eigen_sep_tol) {
            throw Error(ErrorKind::EigenvalueCollision, "eigenvalues are not separated");
        }
    }
    const Complex an = family_->psi(n, g.expand(alpha_, config_.order));
    if (std::abs(an) > config_.tol.compatibility_tol) {
        throw Error(ErrorKind::IncompatibleRHS, "P_n g does not vanish, the equation has no solution");
    }
    return run(lambda, g, mode, n, n);
}

SolveResult SchroederSolver::resolve_superattracting(Complex lambda, const HolomorphicFunction& g,
                                                     OutputMode mode) const {
    if (symbol_.classification.kind != SymbolKind::Superattracting) {
        throw Error(ErrorKind::InvalidArgument, "symbol is not superattracting");
    }
    if (std::abs(lambda) <= config_.tol.eigen_sep_tol || std::abs(lambda - 1.0) <= config_.tol.eigen_sep_tol) {
        throw Error(ErrorKind::SpectrumPoint, "lambda lies in the spectrum {0, 1}");
    }
    return run(lambda, g, mode, std::nullopt, 0);
}

SolveResult SchroederSolver::run(Complex lambda, const HolomorphicFunction& g, OutputMode mode,
                                 std::optional<std::size_t> skip, std::size_t min_split) const {
    const bool schroeder = symbol_.is_schroeder();
    const double lambda_abs = std::abs(lambda);
    const double target = lambda_abs * (1.0 - config_.tol.q_margin);
    const double l1 = std::abs(lambda1_);

    std::size_t n = min_split;
    while (std::pow(l1, static_cast<double>(n + 1)) >= target) {
        if (++n > config_.max_n) {
            throw Error(ErrorKind::LambdaTooSmall, "|lambda| is below |lambda_1|^(max_n+1); raise max_n");
        }
    }
    double eps = 0.0, q = 0.0;
    for (;;) {
        std::tie(eps, q) = find_epsilon(n, lambda_abs);
        if (eps > 0.0) break;
        if (!schroeder || ++n > config_.max_n) {
            throw Error(ErrorKind::LambdaTooSmall, "no contraction radius found for this lambda");
        }
    }

    const std::size_t order = config_.order;
    const TruncatedPowerSeries g_series = g.expand(alpha_, order);
    auto sol = std::make_shared<detail::OrbitSolution>(symbol_.map, g, g_series);
    sol->alpha = alpha_;
    sol->lambda = lambda;
    sol->lambda1 = lambda1_;
    sol->eps = eps;
    sol->rho = std::pow(q, static_cast<double>(n + 1)) / lambda_abs;
    sol->v = n + 1;
    sol->phi = phi_series_;
    sol->phi_abs.resize(order + 1);
    sol->phi_log.resize(order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
        sol->phi_abs[j] = std::abs(phi_series_[j]);
        sol->phi_log[j] = std::log(sol->phi_abs[j]);
    }
    while (sol->phi_low < order && sol->phi_abs[sol->phi_low] == 0.0) ++sol->phi_low;

    TruncatedPowerSeries g1 = TruncatedPowerSeries::zero(alpha_, order);
    TruncatedPowerSeries f1 = TruncatedPowerSeries::zero(alpha_, order);
    if (schroeder) {
        const auto& kd = family_->koenigs();
        sol->kappa = kd.kappa;
        for (std::size_t m = 0; m <= n; ++m) {
            const Complex am = family_->psi(m, g_series);
            const Complex bm = (skip && *skip == m) ? Complex{} : am / (lambda - eigenvalue(m));
            sol->powers.push_back(m);
            sol->a.push_back(am);
            sol->b.push_back(bm);
            g1 = add(g1, scale(kd.kappa_powers[m], am));
            f1 = add(f1, scale(kd.kappa_powers[m], bm));
        }
    } else {
        const Complex c = g_series[0];
        sol->powers.push_back(0);
        sol->a.push_back(c);
        sol->b.push_back(c / (lambda - 1.0));
        g1 = TruncatedPowerSeries::constant(alpha_, order, c);
        f1 = TruncatedPowerSeries::constant(alpha_, order, c / (lambda - 1.0));
    }
    // g - Q_n g vanishes to order n at alpha; zero those coefficients exactly
    TruncatedPowerSeries g2 = sub(g_series, g1);
    for (std::size_t j = 0; j <= n && j <= order; ++j) g2 = g2.with_coeff(j, 0.0);
    sol->g2 = g2;
    sol->zone = series_zone(g2);
    sol->g2_abs.resize(order + 1);
    sol->g2_log.resize(order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
        sol->g2_abs[j] = std::abs(g2[j]);
        sol->g2_log[j] = std::log(sol->g2_abs[j]);
    }

    std::optional<TruncatedPowerSeries> f_series;
    if (mode == OutputMode::Series) {
        // term_k = (g2 o phi_k) / lambda^(k+1), advanced as term_{k+1} = (term_k o phi) / lambda
        TruncatedPowerSeries term = scale(g2, 1.0 / lambda);
        TruncatedPowerSeries acc = term;
        int quiet = 0;
        for (std::size_t k = 1;; ++k) {
            if (k > kMaxSeriesTerms) throw Error(ErrorKind::NonConvergence, "series-mode orbit sum did not converge");
            term = scale(compose(term, phi_series_, config_.tol), 1.0 / lambda);
            // Hol_n is invariant; rounding in the first n+1 coefficients would grow like |lambda_j / lambda|^k
            for (std::size_t j = 0; j <= n && j <= order; ++j) term = term.with_coeff(j, 0.0);
            acc = add(acc, term);
            const double inc = term.sup_norm();
            if (!std::isfinite(inc)) throw Error(ErrorKind::NonConvergence, "series-mode orbit sum overflowed");
            quiet = inc < 1e-17 * std::max(1.0, acc.sup_norm()) ? quiet + 1 : 0;
            if (quiet >= 3) break;
        }
        f_series = add(f1, acc);
    }

    SolveDiagnostics diag;
    diag.n_used = n;
    diag.epsilon = eps;
    diag.q = q;
    const auto& phi = symbol_.map;
    // normwise: sup over the grid of the residual against the sup of each term
    double ref = 1.0;
    for (const Complex z : grid_) {
        std::size_t t0 = 0, t1 = 0;
        const Complex fz = sol->evaluate(z, &t0);
        const Complex fphi = sol->evaluate(phi(z), &t1);
        const Complex gz = g(z);
        diag.residual = std::max(diag.residual, std::abs(lambda * fz - fphi - gz));
        ref = std::max({ref, std::abs(lambda * fz), std::abs(fphi), std::abs(gz)});
        diag.terms_summed = std::max({diag.terms_summed, t0, t1});
    }
    if (!(diag.residual <= config_.tol.solver_residual_tol * ref)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "solver residual %.3e exceeds solver_residual_tol times the grid scale %.3e",
                      diag.residual, ref);
        throw Error(ErrorKind::ResidualTooLarge, msg);
    }
    return SolveResult(std::move(sol), std::move(f_series), diag);
}

SolveResult resolve(const SolveRequest& request, const SolverConfig& config) {
    return SchroederSolver(request.symbol, config).resolve(request.lambda, request.g, request.mode);
}

SolveResult resolve_at_eigenvalue(const Symbol& symbol, std::size_t n, const HolomorphicFunction& g,
                                  const SolverConfig& config, OutputMode mode) {
    return SchroederSolver(symbol, config).resolve_at_eigenvalue(n, g, mode);
}

SolveResult resolve_superattracting(const Symbol& symbol, Complex lambda, const HolomorphicFunction& g,
                                    const SolverConfig& config, OutputMode mode) {
    return SchroederSolver(symbol, config).resolve_superattracting(lambda, g, mode);
}

}  // namespace compspec
