#pragma once

#include <string>

#include "bimsem/graph.hpp"

namespace bimsem {

// Serialize a graph to the Turtle subset used by this toolkit:
//   @prefix attr: / cbim: / inst:
//   inst:wall_17 a cbim:Wall ;
//       attr:height "3.0" ;
//       ...
//   inst:wall_17 cbim:hosting inst:window_3 .
// Numeric literals carry 12 significant digits so a serialize/parse
// round-trip stays within 1e-9 relative. Output is sorted by subject,
// then predicate, then object, and is byte-deterministic.
std::string serialize_turtle(const BimGraph& graph);

// Parse the subset emitted by serialize_turtle. Throws FormatError with a
// line number on syntax problems or unknown prefixes, IntegrityError when
// the parsed graph violates an invariant.
BimGraph parse_turtle(const std::string& text);

} // namespace bimsem
