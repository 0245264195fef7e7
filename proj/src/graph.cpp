#include "rtmml/graph.hpp"

#include <algorithm>

#include "json.hpp"
#include "rtmml/errors.hpp"
#include "rtmml/tense.hpp"

namespace rtmml {

namespace {

void merge_provenance(std::vector<std::string>& into,
                      const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

TimePointId point_of(const PointRef& ref) {
  switch (ref.kind) {
    case PointRef::Kind::doc: return TimePointId::sd();
    case PointRef::Kind::timex: return TimePointId::timex(ref.id);
    case PointRef::Kind::verb_point:
      return TimePointId::verb(ref.id, ref.sel);
    case PointRef::Kind::named: return TimePointId::named(ref.id);
  }
  return TimePointId::sd();
}

// The point a link argument stands for: a time expression contributes its
// T point, a verb its reference point.
TimePointId entity_point(const EntityRef& e) {
  return e.kind == EntityRef::Kind::timex
             ? TimePointId::timex(e.id)
             : TimePointId::verb(e.id, PointSel::r);
}

}  // namespace

void ConstraintGraph::add_node(TimePointId p) { nodes.insert(std::move(p)); }

void ConstraintGraph::add_constraint(const TimePointId& a,
                                     const TimePointId& b, RelationSet rel,
                                     std::vector<std::string> why) {
  nodes.insert(a);
  nodes.insert(b);
  if (a == b) {
    if (!rel.contains(RelationSet::EQ))
      throw InconsistencyError(
          "point " + a.name() + " cannot be '" + rel.to_string() +
              "' itself",
          a.name(), b.name(), std::move(why));
    return;
  }

  bool flip = b < a;
  const TimePointId& lo = flip ? b : a;
  const TimePointId& hi = flip ? a : b;
  if (flip) rel = converse(rel);

  auto key = std::make_pair(lo, hi);
  auto it = edges.find(key);
  RelationSet existing = it != edges.end() ? it->second.rel : RelationSet::all();
  RelationSet merged = intersect(existing, rel);
  if (merged.empty()) {
    std::vector<std::string> contributors =
        it != edges.end() ? it->second.provenance : std::vector<std::string>{};
    merge_provenance(contributors, why);
    throw InconsistencyError(
        "constraints on " + lo.name() + " and " + hi.name() + " conflict: '" +
            existing.to_string() + "' leaves no room for '" + rel.to_string() +
            "'",
        lo.name(), hi.name(), std::move(contributors));
  }
  Edge& edge = edges[key];
  edge.rel = merged;
  merge_provenance(edge.provenance, why);
}

RelationSet ConstraintGraph::query(const TimePointId& a,
                                   const TimePointId& b) const {
  if (a == b) return RelationSet::eq();
  bool flip = b < a;
  const TimePointId& lo = flip ? b : a;
  const TimePointId& hi = flip ? a : b;
  auto it = edges.find({lo, hi});
  if (it == edges.end()) return RelationSet::all();
  return flip ? converse(it->second.rel) : it->second.rel;
}

std::string ConstraintGraph::to_json() const {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const TimePointId& n : nodes) j["nodes"].push_back(n.name());
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [pair, edge] : edges) {
    j["edges"].push_back({{"a", pair.first.name()},
                          {"b", pair.second.name()},
                          {"rel", edge.rel.to_string()},
                          {"provenance", edge.provenance}});
  }
  j["anchors"] = nlohmann::ordered_json::object();
  for (const auto& [point, value] : anchors) j["anchors"][point.name()] = value;
  return j.dump(2);
}

std::string ConstraintGraph::to_dot() const {
  std::string out = "digraph rtmml {\n";
  for (const TimePointId& n : nodes)
    out += "  \"" + dot_escape(n.label()) + "\";\n";
  for (const auto& [pair, edge] : edges) {
    out += "  \"" + dot_escape(pair.first.label()) + "\" -> \"" +
           dot_escape(pair.second.label()) + "\" [label=\"" +
           edge.rel.to_string() + "\"];\n";
  }
  out += "}\n";
  return out;
}

ConstraintGraph build_graph(const AnnotatedDocument& doc) {
  ConstraintGraph g;
  g.add_node(TimePointId::sd());
  for (const TimeRefAnn& t : doc.timerefxs) g.add_node(TimePointId::timex(t.id));
  for (const VerbAnn& v : doc.verbs) {
    g.add_node(TimePointId::verb(v.id, PointSel::s));
    g.add_node(TimePointId::verb(v.id, PointSel::e));
    g.add_node(TimePointId::verb(v.id, PointSel::r));
  }

  // Full labels say nothing; skipping them keeps the network sparse.
  auto add = [&g](const TimePointId& a, const TimePointId& b, RelationSet rel,
                  const std::string& why) {
    if (!rel.full()) g.add_constraint(a, b, rel, {why});
  };

  // (1) What each verb's own annotation says about its three points.
  for (const VerbAnn& v : doc.verbs) {
    TimePointId s = TimePointId::verb(v.id, PointSel::s);
    TimePointId e = TimePointId::verb(v.id, PointSel::e);
    TimePointId r = TimePointId::verb(v.id, PointSel::r);

    if (v.view && v.tense) {
      TenseRelations tr = tense_to_relations(*v.view, *v.tense);
      add(s, r, tr.sr, v.id);
      add(e, r, tr.er, v.id);
      add(s, e, tr.se, v.id);
    } else if (v.tense) {
      add(s, r, tense_to_relations(View::simple, *v.tense).sr, v.id);
    } else if (v.view) {
      add(e, r, tense_to_relations(*v.view, Tense::past).er, v.id);
    }

    if (v.sr) add(s, r, *v.sr, v.id);
    if (v.er) add(e, r, *v.er, v.id);
    if (v.se) add(s, e, *v.se, v.id);
  }

  // (2) Direct point references are equalities.
  for (const VerbAnn& v : doc.verbs) {
    if (v.s)
      add(TimePointId::verb(v.id, PointSel::s), point_of(*v.s),
          RelationSet::eq(), v.id);
    if (v.e)
      add(TimePointId::verb(v.id, PointSel::e), point_of(*v.e),
          RelationSet::eq(), v.id);
    if (v.r)
      add(TimePointId::verb(v.id, PointSel::r), point_of(*v.r),
          RelationSet::eq(), v.id);
  }

  // (3) Link semantics.
  for (const LinkAnn& link : doc.links) {
    switch (link.kind) {
      case LinkKind::positions:
        if (!link.source) break;
        for (const EntityRef& t : link.targets)
          add(entity_point(*link.source), entity_point(t), RelationSet::eq(),
              link.id);
        break;
      case LinkKind::same_timeframe:
        if (link.source) {
          for (const EntityRef& t : link.targets)
            add(entity_point(*link.source), entity_point(t),
                RelationSet::eq(), link.id);
        } else {
          for (std::size_t i = 0; i < link.targets.size(); ++i)
            for (std::size_t j = i + 1; j < link.targets.size(); ++j)
              add(entity_point(link.targets[i]), entity_point(link.targets[j]),
                  RelationSet::eq(), link.id);
        }
        break;
      case LinkKind::reports:
        if (!link.source || link.source->kind != EntityRef::Kind::verb) break;
        for (const EntityRef& t : link.targets) {
          if (t.kind != EntityRef::Kind::verb) continue;
          add(TimePointId::verb(link.source->id, PointSel::e),
              TimePointId::verb(t.id, PointSel::s), RelationSet::eq(),
              link.id);
        }
        break;
    }
  }

  // (4) A verb speaks at document creation time unless its speech time is
  // defined directly (an s attribute) or indirectly (it is quoted by a
  // REPORTS link).
  std::set<std::string> quoted;
  for (const LinkAnn& link : doc.links) {
    if (link.kind != LinkKind::reports) continue;
    for (const EntityRef& t : link.targets)
      if (t.kind == EntityRef::Kind::verb) quoted.insert(t.id);
  }
  for (const VerbAnn& v : doc.verbs) {
    if (v.s || quoted.count(v.id)) continue;
    add(TimePointId::verb(v.id, PointSel::s), TimePointId::sd(),
        RelationSet::eq(), v.id);
  }

  // (5) Calendar anchors; a timerefx without a normalized value is still
  // reportable through the text it covers.
  if (doc.doc.time) g.anchors[TimePointId::sd()] = *doc.doc.time;
  for (const TimeRefAnn& t : doc.timerefxs) {
    if (t.value) {
      g.anchors[TimePointId::timex(t.id)] = *t.value;
    } else {
      std::string covered = doc.covered_text(t.target);
      if (!covered.empty()) g.anchors[TimePointId::timex(t.id)] = covered;
    }
  }

  return g;
}

}  // namespace rtmml
