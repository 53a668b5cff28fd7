#pragma once

#include <string>

#include <json.hpp>

#include "scc/cones.hpp"
#include "scc/families.hpp"
#include "scc/group.hpp"
#include "scc/pieces.hpp"
#include "scc/poset.hpp"
#include "scc/spath.hpp"

namespace scc::report {

using Json = nlohmann::ordered_json;

constexpr int kSchema = 1;

// {"schema": 1, "kind": ..., "meta": {...}} followed by the body's fields; meta omitted when with_meta is false.
Json envelope(const std::string& kind, const Json& body, bool with_meta);
std::string dump(const Json& j);

Json to_json(const Presentation& p);
Json to_json(const SmallCancellationReport& r, const Presentation& p);
Json piece_stats(const PieceIndex& idx);
Json to_json(const FamilyVerification& v);
Json to_json(const HyperbolicityReport& r);
Json cone_summary(const ConeGraph& c);
Json ball_stats(const TruncatedBall& b);
Json to_json(const PropertyResult& r);
Json to_json(const SPathReport& r);
Json to_json(const ComparisonProfile& p);
Json to_json(const AntipodalBases& b);
Json to_json(const Triviality& t);

// index,value,running_sup,method
std::string profile_csv(const ComparisonProfile& p);

}  // namespace scc::report
