#include "rtmml/reasoner.hpp"

#include <algorithm>
#include <deque>

#include "json.hpp"
#include "rtmml/errors.hpp"

namespace rtmml {

namespace {

void merge_into(std::vector<std::string>& into,
                const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

// Dense symmetric view of the network during closure. Provenance lives on
// the canonical (min, max) cell only.
struct Matrix {
  std::size_t n;
  std::vector<RelationSet> rel;
  std::vector<std::vector<std::string>> prov;

  explicit Matrix(std::size_t n_)
      : n(n_), rel(n_ * n_, RelationSet::all()), prov(n_ * n_) {
    for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = RelationSet::eq();
  }

  RelationSet at(std::size_t i, std::size_t j) const { return rel[i * n + j]; }
  void set(std::size_t i, std::size_t j, RelationSet r) {
    rel[i * n + j] = r;
    rel[j * n + i] = converse(r);
  }
  std::vector<std::string>& prov_at(std::size_t i, std::size_t j) {
    return i < j ? prov[i * n + j] : prov[j * n + i];
  }
};

}  // namespace

ClosureResult close(const ConstraintGraph& g) {
  ClosureResult res;
  res.graph.nodes = g.nodes;
  res.graph.anchors = g.anchors;

  std::vector<TimePointId> idx(g.nodes.begin(), g.nodes.end());
  const std::size_t n = idx.size();
  std::map<TimePointId, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[idx[i]] = i;

  Matrix m(n);
  std::deque<std::pair<std::size_t, std::size_t>> agenda;
  std::vector<char> queued(n * n, 0);
  auto enqueue = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (queued[i * n + j]) return;
    queued[i * n + j] = 1;
    agenda.emplace_back(i, j);
  };

  for (const auto& [pair, edge] : g.edges) {
    std::size_t i = pos.at(pair.first);
    std::size_t j = pos.at(pair.second);
    m.set(i, j, edge.rel);
    m.prov_at(i, j) = edge.provenance;
    if (edge.rel == RelationSet::of(RelationSet::LT | RelationSet::GT))
      res.neq_present = true;
    enqueue(i, j);
  }

  // Refine (x, y) through the third node of its triangle; false only when
  // the label empties.
  auto refine = [&](std::size_t x, std::size_t y, std::size_t via,
                    RelationSet update) -> bool {
    RelationSet cur = m.at(x, y);
    RelationSet merged = intersect(cur, update);
    if (merged == cur) return true;
    m.set(x, y, merged);
    std::vector<std::string>& p = m.prov_at(x, y);
    merge_into(p, m.prov_at(x, via));
    merge_into(p, m.prov_at(via, y));
    if (merged.empty()) {
      std::array<std::size_t, 3> tri{x, via, y};
      std::sort(tri.begin(), tri.end());
      Conflict c;
      c.triangle = {idx[tri[0]], idx[tri[1]], idx[tri[2]]};
      c.provenance = p;
      res.conflict = std::move(c);
      return false;
    }
    enqueue(x, y);
    return true;
  };

  while (!agenda.empty() && !res.conflict) {
    auto [i, j] = agenda.front();
    agenda.pop_front();
    queued[i * n + j] = 0;
    for (std::size_t k = 0; k < n && !res.conflict; ++k) {
      if (k == i || k == j) continue;
      if (!refine(i, k, j, compose(m.at(i, j), m.at(j, k)))) break;
      if (!refine(k, j, i, compose(m.at(k, i), m.at(i, j)))) break;
    }
  }

  res.consistent = !res.conflict;
  res.verdict = !res.consistent ? "inconsistent"
                : res.neq_present ? "path-consistent"
                                  : "consistent";

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      RelationSet r = m.at(i, j);
      if (r.full() || r.empty()) continue;
      res.graph.edges[{idx[i], idx[j]}] = Edge{r, m.prov_at(i, j)};
    }
  }
  return res;
}

std::string ClosureResult::to_json() const {
  nlohmann::ordered_json out;
  out["consistent"] = consistent;
  out["verdict"] = verdict;
  if (conflict) {
    out["conflict"] = {
        {"triangle",
         {conflict->triangle[0].name(), conflict->triangle[1].name(),
          conflict->triangle[2].name()}},
        {"provenance", conflict->provenance}};
  }
  nlohmann::ordered_json body = nlohmann::ordered_json::parse(graph.to_json());
  out["nodes"] = body["nodes"];
  out["edges"] = body["edges"];
  out["anchors"] = body["anchors"];
  return out.dump(2);
}

RelationSet query_relation(const ClosureResult& res, const TimePointId& a,
                           const TimePointId& b) {
  if (!res.graph.nodes.count(a))
    throw UnknownPointError("unknown point '" + a.name() + "'");
  if (!res.graph.nodes.count(b))
    throw UnknownPointError("unknown point '" + b.name() + "'");
  return res.graph.query(a, b);
}

EventOrderReport event_order(const ClosureResult& res, bool include_times) {
  std::vector<TimePointId> pts;
  for (const TimePointId& node : res.graph.nodes) {
    bool is_event = node.kind == TimePointId::Kind::verb_point &&
                    node.sel == PointSel::e;
    bool is_time = node.kind == TimePointId::Kind::timex;
    if (is_event || (include_times && is_time)) pts.push_back(node);
  }
  const std::size_t n = pts.size();

  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (res.graph.query(pts[i], pts[j]) == RelationSet::eq())
        parent[find(j)] = find(i);

  EventOrderReport report;
  std::map<std::size_t, std::size_t> class_of_root;
  std::vector<std::size_t> rep;  // index into pts per class
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = find(i);
    auto [it, fresh] = class_of_root.emplace(root, report.classes.size());
    if (fresh) {
      report.classes.emplace_back();
      rep.push_back(i);
    }
    report.classes[it->second].push_back(pts[i]);
  }

  const std::size_t c = report.classes.size();
  auto lt = [&](std::size_t a, std::size_t b) {
    return res.graph.query(pts[rep[a]], pts[rep[b]]) == RelationSet::lt();
  };
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      if (a == b || !lt(a, b)) continue;
      bool direct = true;
      for (std::size_t mid = 0; mid < c && direct; ++mid)
        if (mid != a && mid != b && lt(a, mid) && lt(mid, b)) direct = false;
      if (direct) report.order.emplace_back(a, b);
    }
  }
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a + 1; b < c; ++b)
      if (!res.graph.query(pts[rep[a]], pts[rep[b]]).singleton())
        report.incomparable.emplace_back(a, b);

  return report;
}

std::string EventOrderReport::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    out += "class c" + std::to_string(i + 1) + " = {";
    for (std::size_t k = 0; k < classes[i].size(); ++k) {
      if (k) out += ", ";
      out += classes[i][k].label();
    }
    out += "}\n";
  }
  for (const auto& [a, b] : order)
    out += classes[a].front().label() + " < " + classes[b].front().label() +
           "\n";
  for (const auto& [a, b] : incomparable)
    out += classes[a].front().label() + " ? " + classes[b].front().label() +
           "\n";
  return out;
}

std::string EventOrderReport::to_json() const {
  nlohmann::ordered_json j;
  j["classes"] = nlohmann::ordered_json::array();
  for (const auto& cls : classes) {
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (const TimePointId& p : cls) members.push_back(p.name());
    j["classes"].push_back(members);
  }
  j["order"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : order)
    j["order"].push_back({classes[a].front().name(),
                          classes[b].front().name()});
  j["incomparable"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : incomparable)
    j["incomparable"].push_back({classes[a].front().name(),
                                 classes[b].front().name()});
  return j.dump(2);
}

std::string EventOrderReport::to_dot() const {
  std::string out = "digraph order {\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    out += "  c" + std::to_string(i + 1) + " [label=\"{";
    for (std::size_t k = 0; k < classes[i].size(); ++k) {
      if (k) out += ", ";
      out += classes[i][k].label();
    }
    out += "}\"];\n";
  }
  for (const auto& [a, b] : order)
    out += "  c" + std::to_string(a + 1) + " -> c" + std::to_string(b + 1) +
           ";\n";
  out += "}\n";
  return out;
}

std::vector<AnchorFact> anchor_report(const ClosureResult& res) {
  std::vector<AnchorFact> out;
  for (const auto& [anchored, value] : res.graph.anchors) {
    for (const TimePointId& q : res.graph.nodes) {
      if (q == anchored) continue;
      RelationSet rel = res.graph.query(q, anchored);
      if (rel == RelationSet::eq())
        out.push_back({q, "=", value});
      else if (rel.subset_of(RelationSet::lt()))
        out.push_back({q, "before", value});
      else if (rel.subset_of(RelationSet::gt()))
        out.push_back({q, "after", value});
    }
  }
  return out;
}

OracleResult oracle_minimal_labels(const ConstraintGraph& g) {
  std::vector<TimePointId> idx(g.nodes.begin(), g.nodes.end());
  const std::size_t n = idx.size();
  if (n > max_oracle_nodes)
    throw Error("oracle enumeration is limited to " +
                std::to_string(max_oracle_nodes) + " nodes");

  std::map<TimePointId, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[idx[i]] = i;
  std::vector<RelationSet> want(n * n, RelationSet::all());
  for (const auto& [pair, edge] : g.edges) {
    std::size_t i = pos.at(pair.first);
    std::size_t j = pos.at(pair.second);
    want[i * n + j] = edge.rel;
    want[j * n + i] = converse(edge.rel);
  }

  auto basic = [](int a, int b) -> std::uint8_t {
    if (a < b) return RelationSet::LT;
    if (a == b) return RelationSet::EQ;
    return RelationSet::GT;
  };

  OracleResult res;
  std::vector<int> rank(n, 0);
  std::vector<std::uint8_t> realized(n * n, 0);

  // Any weak order of n points is realizable with integer ranks in
  // [0, n); distinct rank vectors may repeat an order, which only re-adds
  // the same relations.
  auto assign = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      res.consistent = true;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          realized[i * n + j] |= basic(rank[i], rank[j]);
      return;
    }
    for (int r = 0; r < static_cast<int>(n); ++r) {
      bool fits = true;
      for (std::size_t i = 0; i < depth && fits; ++i)
        fits = want[i * n + depth].contains(basic(rank[i], r));
      if (!fits) continue;
      rank[depth] = r;
      self(self, depth + 1);
    }
  };
  assign(assign, 0);

  if (res.consistent) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        res.labels[{idx[i], idx[j]}] = RelationSet::of(realized[i * n + j]);
  }
  return res;
}

}  // namespace rtmml
