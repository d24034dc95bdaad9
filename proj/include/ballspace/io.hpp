#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ballspace/constructions.hpp"
#include "ballspace/core.hpp"
#include "ballspace/fixedpoint.hpp"
#include "ballspace/hierarchy.hpp"
#include "ballspace/instances.hpp"

namespace ballspace {

// Text documents are line-based, UTF-8, LF; labels are whitespace-free
// tokens. Every parser accepts the JSON mirror when the text starts with
// '{'. Emitters produce the canonical text form (or JSON when asked).

BallSpace parse_ballspace(std::string_view text);
std::string emit_ballspace(const BallSpace& space);
std::string emit_ballspace_json(const BallSpace& space);

Topology parse_topology(std::string_view text);
std::string emit_topology(const Topology& t);
std::string emit_topology_json(const Topology& t);

struct MetricDocument {
    MetricInstance metric;
    std::optional<std::vector<Rational>> radii; // absent = All
};

MetricDocument parse_metric(std::string_view text);
UltrametricInstance parse_ultrametric(std::string_view text);
PosetInstance parse_poset(std::string_view text);
CKInstance parse_ck(std::string_view text);
OTInstance parse_ot(std::string_view text);

// "a:b,c:d,..." — every ground element exactly once.
SelfMap parse_selfmap(std::string_view text, const GroundSet& ground);
std::string emit_selfmap(const SelfMap& f, const GroundSet& ground);

// "x:a b c;y:d ..." — every ground element exactly once, each value a ball.
BxAssignment parse_bx_assignment(std::string_view text, const BallSpace& space);

std::string report_to_text(const PropertyReport& report);
std::string report_to_json(const PropertyReport& report);

} // namespace ballspace
