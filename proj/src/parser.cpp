#include "rtmml/parser.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <set>
#include <string>

#include "json.hpp"
#include "rtmml/errors.hpp"
#include "rtmml/tokenizer.hpp"
#include "rtmml/xml.hpp"

namespace rtmml {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t begin = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > begin) out.emplace_back(s.substr(begin, i - begin));
  }
  return out;
}

std::string strip_hash(std::string_view s) {
  if (!s.empty() && s[0] == '#') s.remove_prefix(1);
  return std::string(s);
}

PointRef parse_point_ref(const std::string& raw,
                         const std::set<std::string>& timex_ids) {
  std::string s = strip_hash(raw);
  PointRef p;
  if (s == "doc") {
    p = PointRef::doc_creation();
  } else if (std::size_t dot = s.rfind('.');
             dot != std::string::npos && dot > 0) {
    if (auto sel = parse_point_sel(std::string_view(s).substr(dot + 1)))
      p = PointRef::verb_point(s.substr(0, dot), *sel);
    else
      p = timex_ids.count(s) ? PointRef::timex(s) : PointRef::named(s);
  } else if (timex_ids.count(s)) {
    p = PointRef::timex(s);
  } else {
    p = PointRef::named(s);
  }
  p.raw = raw;
  return p;
}

EntityRef parse_entity_ref(const std::string& raw,
                           const std::set<std::string>& verb_ids,
                           const std::set<std::string>& timex_ids) {
  EntityRef e;
  e.id = strip_hash(raw);
  e.raw = raw;
  if (verb_ids.count(e.id)) e.kind = EntityRef::Kind::verb;
  else if (timex_ids.count(e.id)) e.kind = EntityRef::Kind::timex;
  else e.kind = EntityRef::Kind::unresolved;
  return e;
}

struct ElementReader {
  const ParseOptions& opts;
  ValidationReport& report;
  std::set<std::string> used_ids;

  void check_attrs(const xml::Node& el, const std::string& location,
                   std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : el.attrs) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        report.add(opts.strict ? Severity::error : Severity::warning,
                   "UNKNOWN_ATTRIBUTE", location,
                   "unknown attribute '" + key + "' on <" + el.name + ">");
      }
    }
  }

  // Empty return means the element is unusable and should be dropped.
  std::string take_id(const xml::Node& el) {
    const std::string* id = el.attr("xml:id");
    if (!id || id->empty()) {
      report.add(Severity::error, "MISSING_ID", el.name,
                 "<" + el.name + "> has no xml:id");
      return "";
    }
    if (!used_ids.insert(*id).second) {
      report.add(Severity::error, "DUPLICATE_ID", *id,
                 "xml:id '" + *id + "' is declared more than once");
      return "";
    }
    return *id;
  }

  TargetRef take_target(const xml::Node& el, const std::string& location,
                        std::size_t token_count) {
    const std::string* spec = el.attr("target");
    if (!spec) {
      report.add(Severity::error, "MISSING_TARGET", location,
                 "<" + el.name + "> has no target");
      return {};
    }
    try {
      return resolve_target(*spec, token_count, opts.strict);
    } catch (const TargetError& e) {
      report.add(Severity::error, "BAD_TARGET", location, e.what());
      return {};
    }
  }

  std::optional<RelationSet> take_relation(const xml::Node& el,
                                           std::string_view key,
                                           const std::string& location) {
    const std::string* s = el.attr(key);
    if (!s) return std::nullopt;
    auto rel = RelationSet::from_string(*s);
    if (!rel) {
      report.add(Severity::error, "BAD_RELATION", location,
                 std::string(key) + "=\"" + *s +
                     "\" contains characters outside <, =, >");
      return std::nullopt;
    }
    if (rel->empty()) {
      report.add(Severity::error, "EMPTY_RELATION", location,
                 std::string(key) + " is empty; a relation needs at least "
                                    "one of <, =, >");
      return std::nullopt;
    }
    return rel;
  }
};

const char* kTimeValueHint =
    " (expected YYYY[-MM[-DD[THH:MM[:SS]]]] or \"now\")";

bool digits(std::string_view s, std::size_t from, std::size_t n) {
  if (from + n > s.size()) return false;
  for (std::size_t i = from; i < from + n; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool time_value_ok(std::string_view v) {
  if (v == "now") return true;
  if (!digits(v, 0, 4)) return false;
  if (v.size() == 4) return true;
  if (v[4] != '-' || !digits(v, 5, 2)) return false;
  if (v.size() == 7) return true;
  if (v[7] != '-' || !digits(v, 8, 2)) return false;
  if (v.size() == 10) return true;
  if (v[10] != 'T' || !digits(v, 11, 2) || v.size() < 16 || v[13] != ':' ||
      !digits(v, 14, 2))
    return false;
  if (v.size() == 16) return true;
  return v.size() == 19 && v[16] == ':' && digits(v, 17, 2);
}

bool looks_like_annotation_id(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'v' && s[0] != 't')) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string target_spec(const TargetRef& target) {
  std::string out;
  std::size_t i = 0;
  while (i < target.indices.size()) {
    std::size_t j = i;
    while (j + 1 < target.indices.size() &&
           target.indices[j + 1] == target.indices[j] + 1)
      ++j;
    if (!out.empty()) out += ',';
    if (j > i) {
      out += "#range(#token" + std::to_string(target.indices[i]) +
             ",#token" + std::to_string(target.indices[j]) + ")";
    } else {
      out += "#token" + std::to_string(target.indices[i]);
    }
    i = j + 1;
  }
  return out;
}

void append_attr(std::string& out, std::string_view key,
                 std::string_view value) {
  out += ' ';
  out += key;
  out += "=\"";
  out += xml::escape_attr(value);
  out += '"';
}

}  // namespace

std::string_view to_string(Severity s) {
  return s == Severity::error ? "error" : "warning";
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const Issue& i) {
    return i.severity == Severity::error;
  });
}

void ValidationReport::add(Severity severity, std::string code,
                           std::string location, std::string message) {
  issues.push_back(Issue{severity, std::move(code), std::move(location),
                         std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  issues.insert(issues.end(), other.issues.begin(), other.issues.end());
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const Issue& i : issues) {
    out += to_string(i.severity);
    out += ' ';
    out += i.code;
    out += ' ';
    out += i.location;
    out += ' ';
    out += i.message;
    out += '\n';
  }
  return out;
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["valid"] = ok();
  j["issues"] = nlohmann::ordered_json::array();
  for (const Issue& i : issues) {
    j["issues"].push_back({{"severity", std::string(to_string(i.severity))},
                           {"code", i.code},
                           {"location", i.location},
                           {"message", i.message}});
  }
  return j.dump(2);
}

ParseResult parse_rtmml(std::string_view xml_text, const ParseOptions& opts) {
  xml::Node root = xml::parse(xml_text);
  if (!root.is_element("rtmml"))
    throw XmlError("root element is <" + root.name + ">, expected <rtmml>");

  ParseResult result;
  AnnotatedDocument& doc = result.document;
  ElementReader reader{opts, result.report, {}};

  reader.check_attrs(root, "rtmml", {});
  doc.text = trim(root.direct_text());
  doc.tokens = tokenize(doc.text);

  // Ids are collected up front so references resolve regardless of where
  // the annotation sits in the file.
  std::set<std::string> verb_ids, timex_ids;
  for (const xml::Node& el : root.children) {
    if (el.kind != xml::Node::Kind::element) continue;
    const std::string* id = el.attr("xml:id");
    if (!id) continue;
    if (el.name == "verb") verb_ids.insert(*id);
    else if (el.name == "timerefx") timex_ids.insert(*id);
  }

  bool seen_doc = false;
  for (const xml::Node& el : root.children) {
    if (el.kind != xml::Node::Kind::element) continue;

    if (el.name == "seg") {
      reader.check_attrs(el, "seg", {"type"});
      const std::string* type = el.attr("type");
      if (!type || *type != "token") {
        result.report.add(Severity::error, "BAD_SEG_TYPE", "seg",
                          "only <seg type=\"token\" /> segmentation is "
                          "supported");
      }
      continue;
    }

    if (el.name == "doc") {
      reader.check_attrs(el, "doc", {"xml:id", "time", "mod"});
      if (seen_doc) {
        result.report.add(Severity::warning, "DUPLICATE_DOC", "doc",
                          "more than one <doc>; keeping the first");
        continue;
      }
      seen_doc = true;
      if (const std::string* t = el.attr("time")) doc.doc.time = *t;
      if (const std::string* m = el.attr("mod")) doc.doc.mod = *m;
      continue;
    }

    if (el.name == "timerefx") {
      std::string id = reader.take_id(el);
      if (id.empty()) continue;
      reader.check_attrs(el, id, {"xml:id", "target", "value"});
      TimeRefAnn t;
      t.id = id;
      t.target = reader.take_target(el, id, doc.tokens.size());
      if (const std::string* v = el.attr("value")) t.value = *v;
      doc.timerefxs.push_back(std::move(t));
      continue;
    }

    if (el.name == "verb") {
      std::string id = reader.take_id(el);
      if (id.empty()) continue;
      reader.check_attrs(el, id,
                         {"xml:id", "target", "view", "tense", "se", "er",
                          "sr", "s", "e", "r"});
      VerbAnn v;
      v.id = id;
      v.target = reader.take_target(el, id, doc.tokens.size());
      if (const std::string* s = el.attr("view")) {
        v.view = parse_view(*s);
        if (!v.view)
          result.report.add(Severity::error, "BAD_VIEW", id,
                            "view=\"" + *s +
                                "\" is not simple, anterior or posterior");
      }
      if (const std::string* s = el.attr("tense")) {
        v.tense = parse_tense(*s);
        if (!v.tense)
          result.report.add(Severity::error, "BAD_TENSE", id,
                            "tense=\"" + *s +
                                "\" is not past, present or future");
      }
      v.se = reader.take_relation(el, "se", id);
      v.er = reader.take_relation(el, "er", id);
      v.sr = reader.take_relation(el, "sr", id);
      if (const std::string* s = el.attr("s"))
        v.s = parse_point_ref(*s, timex_ids);
      if (const std::string* s = el.attr("e"))
        v.e = parse_point_ref(*s, timex_ids);
      if (const std::string* s = el.attr("r"))
        v.r = parse_point_ref(*s, timex_ids);
      doc.verbs.push_back(std::move(v));
      continue;
    }

    if (el.name == "rtmlink") {
      std::string id = reader.take_id(el);
      if (id.empty()) continue;
      reader.check_attrs(el, id, {"xml:id", "type", "source", "target"});
      LinkAnn link;
      link.id = id;
      const std::string* type = el.attr("type");
      if (!type) {
        result.report.add(Severity::error, "MISSING_LINK_TYPE", id,
                          "<rtmlink> has no type");
      } else if (auto kind = parse_link_kind(*type)) {
        link.kind = *kind;
      } else {
        result.report.add(Severity::error, "BAD_LINK_TYPE", id,
                          "type=\"" + *type +
                              "\" is not POSITIONS, SAME_TIMEFRAME or "
                              "REPORTS");
      }

      std::vector<EntityRef> sources;
      auto add_target = [&](EntityRef e) {
        if (std::find(link.targets.begin(), link.targets.end(), e) ==
            link.targets.end())
          link.targets.push_back(std::move(e));
      };
      if (const std::string* s = el.attr("source"))
        for (const std::string& ref : split_ws(*s))
          sources.push_back(parse_entity_ref(ref, verb_ids, timex_ids));
      if (const std::string* t = el.attr("target"))
        for (const std::string& ref : split_ws(*t))
          add_target(parse_entity_ref(ref, verb_ids, timex_ids));
      for (const xml::Node& child : el.children) {
        if (child.kind != xml::Node::Kind::element) continue;
        if (child.name != "link") {
          result.report.add(opts.strict ? Severity::error : Severity::warning,
                            "UNKNOWN_ELEMENT", id,
                            "unexpected <" + child.name +
                                "> inside <rtmlink>");
          continue;
        }
        reader.check_attrs(child, id, {"source", "target"});
        const std::string* src = child.attr("source");
        const std::string* tgt = child.attr("target");
        if (!src && !tgt) {
          result.report.add(Severity::error, "BAD_LINK_REF", id,
                            "<link> carries neither source nor target");
          continue;
        }
        if (src)
          for (const std::string& ref : split_ws(*src))
            sources.push_back(parse_entity_ref(ref, verb_ids, timex_ids));
        if (tgt)
          for (const std::string& ref : split_ws(*tgt))
            add_target(parse_entity_ref(ref, verb_ids, timex_ids));
      }
      if (sources.size() > 1)
        result.report.add(Severity::error, "LINK_ARITY", id,
                          "<rtmlink> has more than one source");
      if (!sources.empty()) link.source = sources.front();
      doc.links.push_back(std::move(link));
      continue;
    }

    result.report.add(opts.strict ? Severity::error : Severity::warning,
                      "UNKNOWN_ELEMENT", el.name,
                      "unexpected <" + el.name + "> inside <rtmml>");
  }

  return result;
}

std::string serialize_rtmml(const AnnotatedDocument& doc) {
  std::string out = "<rtmml>\n";
  if (!doc.text.empty()) {
    out += xml::escape_text(doc.text);
    out += '\n';
  }
  out += "  <seg type=\"token\" />\n";

  if (doc.doc.time || doc.doc.mod) {
    out += "  <doc";
    if (doc.doc.time) append_attr(out, "time", *doc.doc.time);
    if (doc.doc.mod) append_attr(out, "mod", *doc.doc.mod);
    out += " />\n";
  }

  for (const TimeRefAnn& t : doc.timerefxs) {
    out += "  <timerefx";
    append_attr(out, "xml:id", t.id);
    append_attr(out, "target", target_spec(t.target));
    if (t.value) append_attr(out, "value", *t.value);
    out += " />\n";
  }

  for (const VerbAnn& v : doc.verbs) {
    out += "  <verb";
    append_attr(out, "xml:id", v.id);
    append_attr(out, "target", target_spec(v.target));
    if (v.view) append_attr(out, "view", to_string(*v.view));
    if (v.tense) append_attr(out, "tense", to_string(*v.tense));
    if (v.se) append_attr(out, "se", v.se->to_string());
    if (v.er) append_attr(out, "er", v.er->to_string());
    if (v.sr) append_attr(out, "sr", v.sr->to_string());
    if (v.s) append_attr(out, "s", v.s->to_string());
    if (v.e) append_attr(out, "e", v.e->to_string());
    if (v.r) append_attr(out, "r", v.r->to_string());
    out += " />\n";
  }

  for (const LinkAnn& link : doc.links) {
    out += "  <rtmlink";
    append_attr(out, "xml:id", link.id);
    append_attr(out, "type", to_string(link.kind));
    out += ">\n";
    if (link.source)
      out += "    <link source=\"#" + xml::escape_attr(link.source->id) +
             "\" />\n";
    for (const EntityRef& t : link.targets)
      out += "    <link target=\"#" + xml::escape_attr(t.id) + "\" />\n";
    out += "  </rtmlink>\n";
  }

  out += "</rtmml>\n";
  return out;
}

namespace {

void check_target(const TargetRef& target, const std::string& location,
                  std::size_t token_count, ValidationReport& report) {
  if (target.indices.empty()) {
    report.add(Severity::error, "BAD_TARGET", location, "target is empty");
    return;
  }
  for (std::size_t i = 0; i + 1 < target.indices.size(); ++i) {
    if (target.indices[i] >= target.indices[i + 1]) {
      report.add(Severity::error, "BAD_TARGET", location,
                 "target indices are not strictly increasing");
      break;
    }
  }
  for (std::size_t idx : target.indices) {
    if (idx >= token_count) {
      report.add(Severity::error, "TARGET_OUT_OF_RANGE", location,
                 "#token" + std::to_string(idx) + " is beyond the last "
                 "token (" + std::to_string(token_count) + " tokens)");
      break;
    }
  }
}

void check_point_ref(const AnnotatedDocument& doc, const PointRef& ref,
                     const std::string& location, ValidationReport& report) {
  switch (ref.kind) {
    case PointRef::Kind::doc:
      return;
    case PointRef::Kind::verb_point:
      if (!doc.find_verb(ref.id))
        report.add(Severity::error, "DANGLING_REF", location,
                   "point reference '" + ref.raw +
                       "' names an undeclared verb");
      return;
    case PointRef::Kind::timex:
      if (!doc.find_timerefx(ref.id))
        report.add(Severity::error, "DANGLING_REF", location,
                   "point reference '" + ref.raw +
                       "' names an undeclared time expression");
      return;
    case PointRef::Kind::named:
      // A named point is any fresh label, but a spelling that looks like a
      // reference (leading '#', an annotation-style id, or a verb id) is a
      // dangling reference, not a new point.
      if (!ref.raw.empty() && ref.raw[0] == '#') {
        report.add(Severity::error, "DANGLING_REF", location,
                   "'" + ref.raw + "' does not resolve to any annotation");
      } else if (looks_like_annotation_id(ref.id) &&
                 !doc.find_timerefx(ref.id) && !doc.find_verb(ref.id)) {
        report.add(Severity::error, "DANGLING_REF", location,
                   "'" + ref.raw + "' looks like an annotation id but none "
                   "is declared");
      } else if (doc.find_verb(ref.id)) {
        report.add(Severity::error, "DANGLING_REF", location,
                   "'" + ref.raw + "' is a verb id; a point reference needs "
                   ".s, .e or .r");
      }
      return;
  }
}

void check_entity_ref(const AnnotatedDocument& doc, const EntityRef& ref,
                      const std::string& location, ValidationReport& report) {
  switch (ref.kind) {
    case EntityRef::Kind::verb:
      if (!doc.find_verb(ref.id))
        report.add(Severity::error, "DANGLING_REF", location,
                   "link reference '" + ref.raw +
                       "' names an undeclared verb");
      return;
    case EntityRef::Kind::timex:
      if (!doc.find_timerefx(ref.id))
        report.add(Severity::error, "DANGLING_REF", location,
                   "link reference '" + ref.raw +
                       "' names an undeclared time expression");
      return;
    case EntityRef::Kind::unresolved:
      report.add(Severity::error, "DANGLING_REF", location,
                 "link reference '" + ref.raw +
                     "' does not resolve to a verb or time expression");
      return;
  }
}

}  // namespace

ValidationReport validate(const AnnotatedDocument& doc) {
  ValidationReport report;

  std::set<std::string> ids;
  for (const TimeRefAnn& t : doc.timerefxs)
    if (!ids.insert(t.id).second)
      report.add(Severity::error, "DUPLICATE_ID", t.id,
                 "xml:id '" + t.id + "' is declared more than once");
  for (const VerbAnn& v : doc.verbs)
    if (!ids.insert(v.id).second)
      report.add(Severity::error, "DUPLICATE_ID", v.id,
                 "xml:id '" + v.id + "' is declared more than once");
  for (const LinkAnn& l : doc.links)
    if (!ids.insert(l.id).second)
      report.add(Severity::error, "DUPLICATE_ID", l.id,
                 "xml:id '" + l.id + "' is declared more than once");

  if (doc.doc.time && !time_value_ok(*doc.doc.time))
    report.add(Severity::warning, "BAD_TIME_VALUE", "doc",
               "time=\"" + *doc.doc.time + "\" is not a recognized value" +
                   kTimeValueHint);

  for (const TimeRefAnn& t : doc.timerefxs) {
    check_target(t.target, t.id, doc.tokens.size(), report);
    if (t.value && !time_value_ok(*t.value))
      report.add(Severity::warning, "BAD_TIME_VALUE", t.id,
                 "value=\"" + *t.value + "\" is not a recognized value" +
                     kTimeValueHint);
  }

  for (const VerbAnn& v : doc.verbs) {
    check_target(v.target, v.id, doc.tokens.size(), report);

    bool has_pair = v.view && v.tense;
    bool has_relation = v.se || v.er || v.sr;
    if (!has_pair && !has_relation)
      report.add(Severity::error, "MISSING_TENSE", v.id,
                 "verb carries neither view+tense nor any of se/er/sr");

    // Explicit relation attributes must leave room inside what view and
    // tense already determine.
    RelationSet derived_sr =
        v.tense ? tense_to_relations(View::simple, *v.tense).sr
                : RelationSet::all();
    RelationSet derived_er =
        v.view ? tense_to_relations(*v.view, Tense::past).er
               : RelationSet::all();
    RelationSet derived_se = compose(derived_sr, converse(derived_er));
    auto contradiction = [&](std::string_view attr, RelationSet explicit_rel,
                             RelationSet derived) {
      if (intersect(explicit_rel, derived).empty())
        report.add(Severity::error, "CONTRADICTORY_TENSE", v.id,
                   std::string(attr) + "=\"" + explicit_rel.to_string() +
                       "\" contradicts the view/tense-derived " +
                       derived.to_string());
    };
    if (v.sr) contradiction("sr", *v.sr, derived_sr);
    if (v.er) contradiction("er", *v.er, derived_er);
    if (v.se) contradiction("se", *v.se, derived_se);

    if (v.s) check_point_ref(doc, *v.s, v.id, report);
    if (v.e) check_point_ref(doc, *v.e, v.id, report);
    if (v.r) check_point_ref(doc, *v.r, v.id, report);
  }

  for (const LinkAnn& link : doc.links) {
    bool arity_ok = false;
    switch (link.kind) {
      case LinkKind::positions:
      case LinkKind::reports:
        arity_ok = link.source.has_value() && !link.targets.empty();
        break;
      case LinkKind::same_timeframe:
        arity_ok = link.source ? !link.targets.empty()
                               : link.targets.size() >= 2;
        break;
    }
    if (!arity_ok)
      report.add(Severity::error, "LINK_ARITY", link.id,
                 std::string(to_string(link.kind)) +
                     (link.kind == LinkKind::same_timeframe
                          ? " needs two entities to relate"
                          : " needs exactly one source and at least one "
                            "target"));

    if (link.source) check_entity_ref(doc, *link.source, link.id, report);
    for (const EntityRef& t : link.targets)
      check_entity_ref(doc, t, link.id, report);

    if (link.kind == LinkKind::reports) {
      auto must_be_verb = [&](const EntityRef& e) {
        if (e.kind == EntityRef::Kind::timex)
          report.add(Severity::error, "LINK_ENTITY_KIND", link.id,
                     "REPORTS relates verbs; '" + e.raw +
                         "' is a time expression");
      };
      if (link.source) must_be_verb(*link.source);
      for (const EntityRef& t : link.targets) must_be_verb(t);
    }
  }

  return report;
}

}  // namespace rtmml
