#pragma once

// JSON forms of algebras, spaces and reports. Rationals are strings "p/q"
// (or "p"); floating-point values are rounded to 12 significant digits so
// that equal runs produce byte-identical output.

#include "symcurv/bundles.hpp"
#include "symcurv/liealg.hpp"
#include "symcurv/symspace.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace symcurv {

using Json = nlohmann::ordered_json;

std::string rational_to_string(const Rational& q);
/// Accepts "p", "p/q" and integer JSON numbers. Throws ParseError.
Rational rational_from_json(const Json& j);

/// 12 significant digits, with -0 folded to 0.
double round12(double x);
Json number(double x);
Json number(const std::optional<double>& x);

Json algebra_to_json(const LieAlgebraModel& alg);
/// Throws ParseError for malformed documents and InvalidArgument when the
/// result is not a Lie algebra.
LieAlgebraModel algebra_from_json(const Json& j);

Json space_to_json(const SymmetricSpaceModel& space);
SymmetricSpaceModel space_from_json(const Json& j);

Json to_json(const CharClassReport& r);
Json to_json(const BundleReport& r);

}  // namespace symcurv
