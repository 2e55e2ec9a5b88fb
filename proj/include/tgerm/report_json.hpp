#pragma once

// JSON documents for germs and reports. Keys are sorted; rationals are
// {"num": p, "den": q} objects, never floats.

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tgerm/classification.hpp"
#include "tgerm/example_verifier.hpp"
#include "tgerm/germ.hpp"
#include "tgerm/invariants.hpp"

namespace tgerm {

using Json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

/// Malformed germ document (missing or unknown fields, wrong types).
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json rational_json(const Rational& r);
/// Inverse of rational_json; throws DocumentError.
Rational rational_from_json(const Json& j);

Json germ_to_json(const NormalizedGerm& germ);
/// Throws DocumentError for schema problems and GermError when the data
/// cannot form a germ at all.
NormalizedGerm germ_from_json(const Json& j);
NormalizedGerm parse_germ_document(const std::string& text);

Json to_json(const ValidationReport& r);
Json to_json(const InvariantReport& r);
Json to_json(const GlobalReport& r);
Json to_json(const SurvivorReport& r);
Json to_json(const EquivarianceReport& r);
Json to_json(const FiberDecomposition& r);
Json to_json(const FixedPointReport& r);

}  // namespace tgerm
