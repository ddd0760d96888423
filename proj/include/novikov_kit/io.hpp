#pragma once

// JSON documents exchanged by the command-line pipelines. Rationals are
// strings "p/q"; object keys are sorted so output is byte-stable.

#include <json.hpp>

#include "novikov_kit/geomlab.hpp"

namespace nk {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Parses text; throws InputError on malformed JSON.
Json parse_document(const std::string& text);

/// Cellular part: cells, boundary, attaching_words, subcomplex, cocycle,
/// local_system and incidence_transport.
Json to_json(const NovikovInput& in);
NovikovInput novikov_input_from_json(const Json& doc);

Json to_json(const CriticalSubsetData& c);
/// Entries without "poincare" take it from their "local_model".
std::vector<CriticalSubsetData> critical_from_json(const Json& list);

Json to_json(const BoundaryData& b);
BoundaryData boundary_from_json(const Json& doc);

Json to_json(const LineModel& m);
LineModel line_model_from_json(const Json& doc);

/// The cellular input with its critical data and line model; boundary
/// samples only when asked for, since they are large.
Json to_json(const ExampleBundle& b, bool with_boundary);

/// `decimals` >= 0 adds decimal renderings of interval endpoints and T.
Json to_json(const NovikovResult& r, int decimals = -1);
Json to_json(const MorseReport& r);
Json to_json(const ValidationReport& r);
Json to_json(const BoundaryReport& r, const BoundaryData& b);
Json to_json(const ExtensionResult& r);
Json to_json(const ExtensionFailure& f);
Json to_json(const DegreeSpectrum& d);

/// Exact coefficient strings, lowest degree first.
Json coefficients(const Poly& p);

/// Rational rendered with the given number of significant digits.
std::string decimal(const Rat& r, int digits);

}  // namespace nk
