#include "compspec/json_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "compspec/error.hpp"

namespace compspec::io {
namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    parse_fail("expected a complex number [re, im], got " + j.dump());
}

poly::Poly poly_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) parse_fail("expected a non-empty coefficient list");
    poly::Poly p;
    p.reserve(j.size());
    for (const auto& c : j) p.push_back(complex_from_json(c));
    return p;
}

Json poly_to_json(const poly::Poly& p) {
    Json out = Json::array();
    for (const Complex c : p) out.push_back(to_json(c));
    return out;
}

RationalMap rational_from_json(const Json& j, const Tolerances& tol) {
    return RationalMap::create(poly_from_json(require(j, "num")), poly_from_json(require(j, "den")), tol);
}

Json rational_to_json(const RationalMap& m) {
    return {{"num", poly_to_json(m.numerator())}, {"den", poly_to_json(m.denominator())}};
}

TruncatedPowerSeries series_from_json(const Json& j) {
    const Complex center = complex_from_json(require(j, "center"));
    auto coeffs = poly_from_json(require(j, "coeffs"));
    return TruncatedPowerSeries(center, std::move(coeffs));
}

HolomorphicFunction function_from_json(const Json& j) {
    if (j.is_object() && j.contains("series")) return HolomorphicFunction::series(series_from_json(j.at("series")));
    return HolomorphicFunction::rational(poly_from_json(require(j, "num")), poly_from_json(require(j, "den")));
}

Json series_to_json(const TruncatedPowerSeries& s) {
    Json coeffs = Json::array();
    for (const Complex c : s.coeffs()) coeffs.push_back(to_json(c));
    return {{"center", to_json(s.center())}, {"coeffs", std::move(coeffs)}};
}

Json classification_to_json(const SymbolClassification& c) {
    Json out{{"kind", std::string(symbol_kind_name(c.kind))}};
    if (c.alpha) out["alpha"] = to_json(*c.alpha);
    if (c.multiplier) out["multiplier"] = to_json(*c.multiplier);
    if (c.automorphism) {
        out["automorphism"] = {{"a", to_json(c.automorphism->a())}, {"phase", to_json(c.automorphism->phase())}};
    }
    return out;
}

Json diagnostics_to_json(const SolveDiagnostics& d) {
    return {{"n_used", d.n_used},
            {"epsilon", d.epsilon},
            {"q", d.q},
            {"terms_summed", d.terms_summed},
            {"residual", d.residual}};
}

Json spectrum_to_json(const SpectrumReport& r) {
    Json pts = Json::array();
    for (const auto& p : r.spectrum_points) {
        pts.push_back({{"value", to_json(p.value)}, {"kind", std::string(spectrum_point_kind_name(p.kind))}});
    }
    return {{"classification", classification_to_json(r.classification)},
            {"spectrum", std::move(pts)},
            {"compact", r.compact},
            {"compactness_sup", r.compactness_sup},
            {"max_n", r.max_n},
            {"contour_checks", Json::array()}};
}

Json contour_to_json(const ContourCheck& c) {
    return {{"z", to_json(c.z)},
            {"quadrature", to_json(c.quadrature)},
            {"direct", to_json(c.direct)},
            {"error", c.error},
            {"radius", c.radius}};
}

Json hardy_to_json(const HardyMembership& h) {
    Json norms = Json::array();
    for (std::size_t i = 0; i < h.partial_norms.size(); ++i) {
        norms.push_back({{"K", h.checkpoints[i]}, {"value", h.partial_norms[i]}});
    }
    return {{"partial_norms", std::move(norms)}, {"growth_exponent", h.growth_exponent}, {"member", h.member}};
}

Json hurst_to_json(const HurstReference& h) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < h.indices_outside.size(); ++i) {
        pts.push_back({{"n", h.indices_outside[i]}, {"value", h.eigenvalues_outside[i]}});
    }
    return {{"essential_radius", h.essential_radius}, {"eigenvalues_outside", std::move(pts)}};
}

Json tolerances_to_json(const Tolerances& t) {
    Json out = Json::object();
    for (const auto& [k, v] : t.as_map()) out[k] = v;
    return out;
}

Json load_json_argument(const std::string& arg) {
    std::string text;
    if (arg == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) parse_fail("cannot open " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace compspec::io
