#pragma once

#include <string>

#include <json.hpp>

#include "compspec/function.hpp"
#include "compspec/koenigs.hpp"
#include "compspec/schroeder.hpp"
#include "compspec/spectral.hpp"
#include "compspec/symbol.hpp"

namespace compspec::io {

using Json = nlohmann::json;

// Complex numbers travel as [re, im]; a bare number is read as real.
Json to_json(Complex z);
Complex complex_from_json(const Json& j);
poly::Poly poly_from_json(const Json& j);
Json poly_to_json(const poly::Poly& p);

// {"num": [[re, im], ...], "den": [...]}, ascending powers of z.
RationalMap rational_from_json(const Json& j, const Tolerances& tol = {});
Json rational_to_json(const RationalMap& m);

// Rational {"num", "den"} or {"series": {"center": [re, im], "coeffs": [...]}}.
HolomorphicFunction function_from_json(const Json& j);

Json series_to_json(const TruncatedPowerSeries& s);
TruncatedPowerSeries series_from_json(const Json& j);

Json classification_to_json(const SymbolClassification& c);
Json diagnostics_to_json(const SolveDiagnostics& d);
Json spectrum_to_json(const SpectrumReport& r);
Json contour_to_json(const ContourCheck& c);
Json hardy_to_json(const HardyMembership& h);
Json hurst_to_json(const HurstReference& h);
Json tolerances_to_json(const Tolerances& t);

// Inline JSON if the text starts with '{' or '[', "-" for stdin, otherwise a file path.
Json load_json_argument(const std::string& arg);

}  // namespace compspec::io
