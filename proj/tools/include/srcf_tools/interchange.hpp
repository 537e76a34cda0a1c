#pragma once

// JSON interchange for specs and reports. Every integer and rational goes out
// as a decimal string so nothing is truncated to 64 bits.

#include <cstddef>

#include "json.hpp"
#include "srcf/cf.hpp"
#include "srcf/convergents.hpp"
#include "srcf/exponent.hpp"
#include "srcf/transforms.hpp"

namespace srcf::tools {

using Json = nlohmann::ordered_json;

/// Specs with more stored terms than this are written in family form.
inline constexpr std::size_t kMaxSerializedTerms = 100000;

/// Accepts {"head", "terms": [[a, "b"], ...]} or {"family", "params"}. An
/// explicit term list wins when both are present. Throws ParseError on shape
/// problems; family errors propagate from family_generator.
CFSpec spec_from_json(const Json& doc);

/// Explicit form for stored specs and for generated specs when
/// `depth` > 0 (first `depth` terms); family form otherwise. A provenance
/// field is attached whenever the spec carries one.
Json spec_to_json(const CFSpec& spec, std::size_t depth = 0);

Json to_json(const PartialQuotient& t);
Json to_json(const Rational& r);
Json to_json(const Convergent& c);
Json to_json(const Enclosure& e);
Json to_json(const AlignmentPoint& p);
Json to_json(const TransformResult& r);
Json to_json(const ExponentReport& r);
Json to_json(const ConditionReport& r);
Json to_json(const BoundConstants& c);
Json to_json(const SandwichReport& r);
Json to_json(const EncadReport& r);
Json to_json(const ClassReport& r);

}  // namespace srcf::tools
