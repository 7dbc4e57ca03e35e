#pragma once

#include <string>

#include "coexist/effects.hpp"

namespace coexist {

/// Canonical float formatting: %.17g, which round-trips every double.
std::string format_double(double x);

/// Parses the effect schema {"coeffs": [c0, c1, c2, c3]} and validates the
/// result. Throws ParseError on malformed input, NotAnEffect on spectrum
/// violations.
Effect effect_from_json(const std::string& text, double tol = kDefaultTol);

/// Serializes an effect back to {"coeffs": [...]} with canonical floats.
std::string effect_to_json(const Effect& e);

std::string coeffs_to_json(const MVec4& v);

}  // namespace coexist
