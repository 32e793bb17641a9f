#pragma once

#include <functional>
#include <memory>
#include <string>

#include "compspec/polynomial.hpp"
#include "compspec/series.hpp"

namespace compspec {

// A holomorphic function on the disc that can be evaluated pointwise and
// expanded as a truncated Taylor series. Right-hand sides of the Schroeder
// equation and solver outputs are both carried in this form.
class HolomorphicFunction {
public:
    using Evaluator = std::function<Complex(Complex)>;
    using Expander = std::function<TruncatedPowerSeries(Complex center, std::size_t order)>;

    // num / den; rejects poles strictly inside the disc.
    static HolomorphicFunction rational(poly::Poly num, poly::Poly den);
    // The polynomial sum_k s[k] (z - s.center())^k.
    static HolomorphicFunction series(const TruncatedPowerSeries& s);
    static HolomorphicFunction custom(Evaluator eval, Expander expand, std::string description);

    Complex operator()(Complex z) const { return eval_(z); }
    TruncatedPowerSeries expand(Complex center, std::size_t order) const { return expand_(center, order); }
    const std::string& description() const noexcept { return description_; }

private:
    HolomorphicFunction(Evaluator e, Expander x, std::string d)
        : eval_(std::move(e)), expand_(std::move(x)), description_(std::move(d)) {}

    Evaluator eval_;
    Expander expand_;
    std::string description_;
};

// a*f + b*g
HolomorphicFunction linear_combination(Complex a, const HolomorphicFunction& f, Complex b,
                                       const HolomorphicFunction& g);

}  // namespace compspec
