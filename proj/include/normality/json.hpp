#pragma once

#include "normality/digits.hpp"
#include "normality/ideals.hpp"
#include "normality/simplex.hpp"
#include "normality/summability.hpp"
#include "normality/synth.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace normality {

using nlohmann::json;

inline constexpr const char* kReportSchema = "normality-lab/report@1";
const char* version();

// Input specs. Parsers throw SchemaError on malformed documents and
// DomainError when a well-formed document names an invalid object.

/// {"base": 2, "kind": "rational", "p": 1, "q": 3}
/// {"base": 2, "kind": "periodic", "word": "01", "symbolic": false}
/// {"base": 2, "kind": "blocks", "items": [{"word": "0", "repeat": 3}, ...]}
/// {"base": 2, "kind": "blocks", "rule": "alternating-runs",
///  "growth": {"type": "geometric", "ratio": 20}, "inside": 1, "outside": 0}
/// {"base": 2, "kind": "random", "seed": 7, "weights": [0.5, 0.5]}
DigitStream stream_from_json(const json& j);
/// Generated streams (synthesized, witness) serialize their description but
/// cannot be parsed back.
json stream_to_json(const DigitStream& stream);

/// {"base": 2, "k": 1, "entries": ["1/2", "1/2"]}; entries may also be
/// [p, q] pairs or decimal numbers (read exactly from their shortest text).
SimplexPoint point_from_json(const json& j);
json point_to_json(const SimplexPoint& point);

/// {"base": 2, "k": 1, "targets": [[1, 0], ["1/2", "1/2"]], "ratio": 9,
///  "assignment": "round-robin" | [0, 1, 0, 2]}. Targets may be point objects.
WitnessPlan plan_from_json(const json& j);
json plan_to_json(const WitnessPlan& plan);

/// {"kind": "cesaro"}, {"kind": "holder", "order": 2}, {"kind": "sparse",
/// "entries": [[n, i, v], ...]}, {"kind": "affine", "terms": [[slope, offset, v]]},
/// {"kind": "remark"}, {"kind": "subsequence", "rule": {"type": "affine",
/// "slope": 2, "offset": 0}}, {"kind": "factorial-style", "growth": {...}}.
MatrixSpec matrix_from_json(const json& j);
json matrix_to_json(const MatrixSpec& matrix);

GrowthRule growth_from_json(const json& j);
json growth_to_json(const GrowthRule& growth);

SubmeasureSpec submeasure_from_json(const json& j);
json submeasure_to_json(const SubmeasureSpec& spec);

/// Reads and parses a JSON file; IoError when unreadable.
json read_json_file(const std::string& path);

// Reports. Every report carries the schema tag, the library version, the
// report type, the numeric mode and (when relevant) the seed.

struct ReportMeta {
  std::string type;
  std::string mode = "float";
  std::optional<std::uint64_t> seed;
};

json make_report(const ReportMeta& meta, json body);
/// Checks the schema tag and type; returns the metadata.
ReportMeta read_report_meta(const json& j, const std::string& expected_type);

void to_json(json& j, const TailEstimate& t);
void from_json(const json& j, TailEstimate& t);
void to_json(json& j, const ClusterReport& r);
void from_json(const json& j, ClusterReport& r);
void to_json(json& j, const GammaEntry& g);
void from_json(const json& j, GammaEntry& g);
void to_json(json& j, const RegularityReport& r);
void from_json(const json& j, RegularityReport& r);
void to_json(json& j, const CoreCandidate& c);
void from_json(const json& j, CoreCandidate& c);
void to_json(json& j, const CoreEstimate& c);
void from_json(const json& j, CoreEstimate& c);
void to_json(json& j, const InclusionReport& r);
void from_json(const json& j, InclusionReport& r);
void to_json(json& j, const WitnessBlock& b);
void from_json(const json& j, WitnessBlock& b);
void to_json(json& j, const BlockPrediction& p);
void from_json(const json& j, BlockPrediction& p);

Evidence evidence_from_string(const std::string& text);

}  // namespace normality
