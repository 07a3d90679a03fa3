#pragma once

#include <string>

#include "json.hpp"
#include "krtorus/error.hpp"
#include "krtorus/pipeline.hpp"

namespace krtorus {

using Json = nlohmann::ordered_json;

/// Deterministic "kr-torus/1" document; exact scalars are written as strings.
Json report_to_json(const AnalysisReport& report);

/// Inverse of report_to_json. Throws kParse on a malformed document and when
/// the stored expression string disagrees with the rebuilt one.
AnalysisReport report_from_json(const Json& doc);

Json verification_to_json(const VerificationRecord& record);

/// {"error": code name, "message": text}
Json error_to_json(const Error& error);

}  // namespace krtorus
