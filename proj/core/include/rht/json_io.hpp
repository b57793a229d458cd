#pragma once

// Canonical JSON serialization of the engine's value types.
//
// Model format:
//   { "generators": [ {"name": str, "degree": int}, ... ],
//     "differential": { name: [ [num, den, [[genName, exp], ...]], ... ] },
//     "truncation": { name: power }  (omitted when empty) }
//
// Serialization is deterministic and canonical: object keys are sorted,
// generators are listed in (degree, name) order, polynomial terms in
// canonical monomial order, rationals are normalized with positive
// denominator, output uses two-space indentation and ends with a newline.
// Generators with zero differential are omitted from "differential", and
// zero Betti ranks are omitted from rank tables, so JSON-document equality
// coincides with mathematical equality of presentations.
//
// All integers must fit in int64; serialization throws std::overflow_error
// otherwise.  Parsers throw std::invalid_argument on malformed input.

#include <string>

#include "rht/catalog.hpp"
#include "rht/cdga.hpp"
#include "rht/homology.hpp"
#include "rht/section.hpp"

namespace rht {

std::string cdga_to_json(const CDGA& algebra);
CDGA cdga_from_json(const std::string& text);

// { "window": [lo, hi], "ranks": { "0": 1, "3": 1, ... } } (nonzero only).
std::string betti_table_to_json(const BettiTable& table);
BettiTable betti_table_from_json(const std::string& text);

// Model format extended with
//   "constraints": [ {"fromGenerator": name, "relation": [terms]}, ... ],
//   "provenance": { "base": <model>, "fiber": [generators],
//                   "window": [lo, hi],
//                   "signConvention": "section-3" | "section-4" }.
std::string section_model_to_json(const SectionModel& model);
SectionModel section_model_from_json(const std::string& text);

// { "n": .., "d": .., "h1TorsionOrder": .., "orbitIso": bool,
//   "orbitKernelDegrees": [..], "characteristic": ..,
//   "betti": { "0": 1, ... } } (nonzero ranks only).
std::string invariant_report_to_json(const InvariantReport& report);

}  // namespace rht
