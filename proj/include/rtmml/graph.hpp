#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rtmml/model.hpp"

namespace rtmml {

// A labelled edge. Provenance lists the annotation ids whose constraints
// have touched the edge, sorted and deduplicated.
struct Edge {
  RelationSet rel = RelationSet::all();
  std::vector<std::string> provenance;

  bool operator==(const Edge&) const = default;
};

// A point-algebra constraint network. Edges are stored once, in canonical
// direction (smaller point first under TimePointId's total order); query
// applies converse as needed. Anchors attach calendar values to points and
// never generate edges.
struct ConstraintGraph {
  std::set<TimePointId> nodes;
  std::map<std::pair<TimePointId, TimePointId>, Edge> edges;
  std::map<TimePointId, std::string> anchors;

  void add_node(TimePointId p);

  // Intersects the label of (a, b) with rel, creating nodes and the edge
  // as needed and merging provenance. A self-loop is fine as long as rel
  // admits equality. Throws InconsistencyError when the intersection
  // leaves nothing.
  void add_constraint(const TimePointId& a, const TimePointId& b,
                      RelationSet rel, std::vector<std::string> why);

  // The label of (a, b); {=} on the diagonal, the full set when nothing is
  // stored.
  RelationSet query(const TimePointId& a, const TimePointId& b) const;

  std::string to_json() const;
  std::string to_dot() const;

  bool operator==(const ConstraintGraph&) const = default;
};

// Compiles a validated document into its constraint network: per-verb
// tense relations and explicit se/er/sr attributes, s/e/r point references
// as equalities, link semantics (POSITIONS equates a time to a reference
// point, SAME_TIMEFRAME equates reference points, REPORTS puts the quoted
// verb's speech at the reporting verb's event), the default speech time
// S_v = SD for verbs whose speech time is not otherwise defined, and
// calendar anchors from <doc time> and timerefx values (a value-less
// timerefx is anchored to its surface text). Throws InconsistencyError if
// the annotations already conflict edge-locally.
ConstraintGraph build_graph(const AnnotatedDocument& doc);

}  // namespace rtmml
