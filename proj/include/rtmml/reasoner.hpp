#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtmml/graph.hpp"

namespace rtmml {

// The triangle whose refinement emptied an edge, with the annotation ids
// that fed the triangle's three edges.
struct Conflict {
  std::array<TimePointId, 3> triangle;
  std::vector<std::string> provenance;
};

struct ClosureResult {
  ConstraintGraph graph;  // refined labels; partial when inconsistent
  bool consistent = true;
  std::optional<Conflict> conflict;
  // Path consistency decides this algebra except when a {<,>} label occurs
  // in the input; the verdict is worded accordingly.
  bool neq_present = false;
  std::string verdict;  // "consistent", "path-consistent" or "inconsistent"

  std::string to_json() const;
};

// Agenda-based path consistency: refine every triangle's edges with the
// composition of the other two until nothing changes. Inconsistency is a
// result, not an exception.
ClosureResult close(const ConstraintGraph& g);

// The closed label of (a, b); {=} on the diagonal, the full set for pairs
// the annotation says nothing about. Throws UnknownPointError when either
// point is not in the graph.
RelationSet query_relation(const ClosureResult& res, const TimePointId& a,
                           const TimePointId& b);

// Event classes and their strict order after closure. Classes collect
// points the closure proves simultaneous; order holds the Hasse edges
// (transitive reduction) of < between classes, by class index; pairs whose
// label stays disjunctive are incomparable.
struct EventOrderReport {
  std::vector<std::vector<TimePointId>> classes;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::vector<std::pair<std::size_t, std::size_t>> incomparable;

  std::string to_text() const;
  std::string to_json() const;
  std::string to_dot() const;
};

// Restricts the closure to event points, plus time-expression points when
// include_times is set.
EventOrderReport event_order(const ClosureResult& res,
                             bool include_times = false);

// A deduced position against an anchored calendar value: the point is at,
// before, or after the value.
struct AnchorFact {
  TimePointId point;
  std::string relation;  // "=", "before" or "after"
  std::string value;

  bool operator==(const AnchorFact&) const = default;
};

std::vector<AnchorFact> anchor_report(const ClosureResult& res);

// Exhaustive ground truth for small graphs: enumerate every weak order of
// the nodes (every placement on a line, ties allowed), keep those
// satisfying all explicit edges, and collect the relations each pair
// realizes. Throws Error above max_oracle_nodes.
inline constexpr std::size_t max_oracle_nodes = 8;

struct OracleResult {
  bool consistent = false;
  // Canonical-direction pair -> set of realized basic relations. Empty
  // when inconsistent.
  std::map<std::pair<TimePointId, TimePointId>, RelationSet> labels;
};

OracleResult oracle_minimal_labels(const ConstraintGraph& g);

}  // namespace rtmml
