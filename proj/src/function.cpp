#include "compspec/function.hpp"

#include <cmath>

#include "compspec/error.hpp"

namespace compspec {

HolomorphicFunction HolomorphicFunction::rational(poly::Poly num, poly::Poly den) {
    den = poly::trim(std::move(den));
    if (den.size() == 1 && den[0] == Complex{}) {
        throw Error(ErrorKind::InvalidArgument, "denominator is identically zero");
    }
    if (num.empty()) num.push_back(Complex{});
    for (const Complex& r : poly::roots(den)) {
        // boundary poles are allowed; multiple roots come back perturbed by ~sqrt(eps)
        if (std::abs(r) < 1.0 - 1e-6) throw Error(ErrorKind::PoleInDisc, "right-hand side has a pole inside the disc");
    }
    auto eval = [num, den](Complex z) { return poly::horner(num, z) / poly::horner(den, z); };
    auto expand = [num, den](Complex center, std::size_t order) {
        auto n = taylor_shift(num, 0.0, center);
        const auto d = taylor_shift(den, 0.0, center);
        n.resize(order + 1);
        return divide_by_polynomial(TruncatedPowerSeries(center, std::move(n)), d);
    };
    return {eval, expand, "rational"};
}

HolomorphicFunction HolomorphicFunction::series(const TruncatedPowerSeries& s) {
    auto eval = [s](Complex z) { return compspec::evaluate(s, z); };
    auto expand = [s](Complex center, std::size_t order) {
        auto c = taylor_shift(s.coeffs(), s.center(), center);
        c.resize(order + 1);
        return TruncatedPowerSeries(center, std::move(c));
    };
    return {eval, expand, "series"};
}

HolomorphicFunction HolomorphicFunction::custom(Evaluator eval, Expander expand, std::string description) {
    return {std::move(eval), std::move(expand), std::move(description)};
}

HolomorphicFunction linear_combination(Complex a, const HolomorphicFunction& f, Complex b,
                                       const HolomorphicFunction& g) {
    return HolomorphicFunction::custom([=](Complex z) { return a * f(z) + b * g(z); },
                                       [=](Complex c, std::size_t order) {
                                           return add(scale(f.expand(c, order), a), scale(g.expand(c, order), b));
                                       },
                                       "linear combination");
}

}  // namespace compspec
