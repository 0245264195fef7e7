#include "rtmml/model.hpp"

#include <tuple>

namespace rtmml {

std::string_view to_string(PointSel sel) {
  switch (sel) {
    case PointSel::s: return "s";
    case PointSel::e: return "e";
    case PointSel::r: return "r";
  }
  return "";
}

std::optional<PointSel> parse_point_sel(std::string_view s) {
  if (s == "s") return PointSel::s;
  if (s == "e") return PointSel::e;
  if (s == "r") return PointSel::r;
  return std::nullopt;
}

PointRef PointRef::doc_creation() {
  return PointRef{Kind::doc, "", PointSel::s, "doc"};
}

PointRef PointRef::timex(std::string id) {
  PointRef p{Kind::timex, std::move(id), PointSel::s, ""};
  p.raw = p.id;
  return p;
}

PointRef PointRef::verb_point(std::string verb_id, PointSel sel) {
  PointRef p{Kind::verb_point, std::move(verb_id), sel, ""};
  p.raw = p.to_string();
  return p;
}

PointRef PointRef::named(std::string label) {
  PointRef p{Kind::named, std::move(label), PointSel::s, ""};
  p.raw = p.id;
  return p;
}

std::string PointRef::to_string() const {
  switch (kind) {
    case Kind::doc: return "doc";
    case Kind::timex: return id;
    case Kind::verb_point:
      return "#" + id + "." + std::string(rtmml::to_string(sel));
    case Kind::named: return id;
  }
  return "";
}

std::string_view to_string(LinkKind k) {
  switch (k) {
    case LinkKind::positions: return "POSITIONS";
    case LinkKind::same_timeframe: return "SAME_TIMEFRAME";
    case LinkKind::reports: return "REPORTS";
  }
  return "";
}

std::optional<LinkKind> parse_link_kind(std::string_view s) {
  if (s == "POSITIONS") return LinkKind::positions;
  if (s == "SAME_TIMEFRAME") return LinkKind::same_timeframe;
  if (s == "REPORTS") return LinkKind::reports;
  return std::nullopt;
}

TimePointId TimePointId::sd() { return TimePointId{Kind::doc_creation, "", PointSel::s}; }

TimePointId TimePointId::verb(std::string verb_id, PointSel sel) {
  return TimePointId{Kind::verb_point, std::move(verb_id), sel};
}

TimePointId TimePointId::timex(std::string timex_id) {
  return TimePointId{Kind::timex, std::move(timex_id), PointSel::s};
}

TimePointId TimePointId::named(std::string label) {
  return TimePointId{Kind::named, std::move(label), PointSel::s};
}

std::string TimePointId::name() const {
  switch (kind) {
    case Kind::doc_creation: return "SD";
    case Kind::verb_point:
      return id + "." + std::string(to_string(sel));
    case Kind::timex: return id;
    case Kind::named: return id;
  }
  return "";
}

std::string TimePointId::label() const {
  if (kind != Kind::verb_point) return name();
  char point = 0;
  switch (sel) {
    case PointSel::s: point = 'S'; break;
    case PointSel::e: point = 'E'; break;
    case PointSel::r: point = 'R'; break;
  }
  return id + "." + point;
}

std::strong_ordering operator<=>(const TimePointId& a, const TimePointId& b) {
  auto rank = [](TimePointId::Kind k) {
    switch (k) {
      case TimePointId::Kind::doc_creation: return 0;
      case TimePointId::Kind::verb_point: return 1;
      case TimePointId::Kind::timex: return 2;
      case TimePointId::Kind::named: return 3;
    }
    return 4;
  };
  if (auto c = rank(a.kind) <=> rank(b.kind); c != 0) return c;
  if (auto c = a.id <=> b.id; c != 0) return c;
  if (a.kind != TimePointId::Kind::verb_point)
    return std::strong_ordering::equal;
  return static_cast<int>(a.sel) <=> static_cast<int>(b.sel);
}

const VerbAnn* AnnotatedDocument::find_verb(std::string_view id) const {
  for (const VerbAnn& v : verbs)
    if (v.id == id) return &v;
  return nullptr;
}

const TimeRefAnn* AnnotatedDocument::find_timerefx(std::string_view id) const {
  for (const TimeRefAnn& t : timerefxs)
    if (t.id == id) return &t;
  return nullptr;
}

std::string AnnotatedDocument::covered_text(const TargetRef& target) const {
  std::string out;
  for (std::size_t idx : target.indices) {
    if (idx >= tokens.size()) continue;
    if (!out.empty()) out += ' ';
    out += tokens[idx].text;
  }
  return out;
}

}  // namespace rtmml
