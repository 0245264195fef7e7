#include "rtmml/timeml.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "rtmml/tokenizer.hpp"
#include "rtmml/xml.hpp"

namespace rtmml {

namespace {

struct Span {
  const xml::Node* node;
  std::size_t byte_start;
  std::size_t byte_end;
};

// Flattens the body to plain text while recording the byte extent of each
// EVENT and TIMEX3. Unknown inline elements keep their surface text.
void walk(const xml::Node& el, std::string& text, std::vector<Span>& spans) {
  for (const xml::Node& child : el.children) {
    if (child.kind == xml::Node::Kind::text) {
      text += child.text;
      continue;
    }
    std::size_t start = text.size();
    walk(child, text, spans);
    if (child.name == "EVENT" || child.name == "TIMEX3")
      spans.push_back({&child, start, text.size()});
  }
}

const xml::Node* find_element(const xml::Node& el, std::string_view name) {
  if (el.is_element(name)) return &el;
  for (const xml::Node& child : el.children) {
    if (child.kind != xml::Node::Kind::element) continue;
    if (const xml::Node* hit = find_element(child, name)) return hit;
  }
  return nullptr;
}

template <typename F>
void for_each_element(const xml::Node& el, std::string_view name, F&& f) {
  if (el.is_element(name)) f(el);
  for (const xml::Node& child : el.children)
    if (child.kind == xml::Node::Kind::element)
      for_each_element(child, name, f);
}

RelationSet se_from_tense(const std::string* tense) {
  if (!tense) return RelationSet::all();
  if (*tense == "PAST") return RelationSet::gt();
  if (*tense == "PRESENT") return RelationSet::eq();
  if (*tense == "FUTURE") return RelationSet::lt();
  return RelationSet::all();
}

RelationSet er_from_aspect(const std::string* aspect) {
  if (!aspect || *aspect == "NONE")
    return RelationSet::of(RelationSet::EQ | RelationSet::GT);
  if (*aspect == "PERFECTIVE") return RelationSet::lt();
  return RelationSet::all();
}

}  // namespace

TimemlImport import_timeml(std::string_view xml_text) {
  xml::Node root = xml::parse(xml_text);
  TimemlImport out;
  AnnotatedDocument& doc = out.document;

  const xml::Node* body = find_element(root, "TEXT");
  if (!body) body = &root;

  std::string raw;
  std::vector<Span> spans;
  walk(*body, raw, spans);

  // Trim, then map every span's byte extent into codepoint offsets of the
  // final text so token targets line up.
  std::size_t lead = raw.find_first_not_of(" \t\r\n");
  if (lead == std::string::npos) {
    lead = raw.size();
  } else {
    std::size_t tail = raw.find_last_not_of(" \t\r\n");
    doc.text = raw.substr(lead, tail - lead + 1);
  }
  doc.tokens = tokenize(doc.text);

  std::vector<Utf8Char> chars = utf8_decode(doc.text);
  auto cp_index = [&](std::size_t byte_in_raw) {
    std::size_t byte = byte_in_raw > lead ? byte_in_raw - lead : 0;
    std::size_t lo = 0, hi = chars.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (chars[mid].byte_pos < byte) lo = mid + 1;
      else hi = mid;
    }
    return lo;
  };
  auto tokens_in = [&](const Span& span) {
    TargetRef target;
    std::size_t from = cp_index(span.byte_start);
    std::size_t to = cp_index(span.byte_end);
    for (const Token& tok : doc.tokens)
      if (tok.char_start < to && from < tok.char_end)
        target.indices.push_back(tok.index);
    return target;
  };

  // All verb instances, grouped by the event they instantiate.
  struct Instance {
    std::string eiid;
    RelationSet se;
    RelationSet er;
    bool is_verb;
  };
  std::map<std::string, std::vector<Instance>> instances;
  for_each_element(root, "MAKEINSTANCE", [&](const xml::Node& mi) {
    const std::string* event_id = mi.attr("eventID");
    const std::string* eiid = mi.attr("eiid");
    if (!event_id || !eiid) return;
    const std::string* pos = mi.attr("pos");
    instances[*event_id].push_back(Instance{
        *eiid, se_from_tense(mi.attr("tense")), er_from_aspect(mi.attr("aspect")),
        pos && *pos == "VERB"});
  });

  const xml::Node* creation = nullptr;
  for_each_element(root, "TIMEX3", [&](const xml::Node& tx) {
    const std::string* fn = tx.attr("functionInDocument");
    if (!creation && fn && *fn == "CREATION_TIME") creation = &tx;
  });
  if (creation) {
    if (const std::string* value = creation->attr("value"))
      doc.doc.time = *value;
  }

  for (const Span& span : spans) {
    if (span.node->name == "TIMEX3") {
      if (span.node == creation) continue;
      const std::string* tid = span.node->attr("tid");
      if (!tid) {
        out.report.add(Severity::warning, "MISSING_ID", "TIMEX3",
                       "TIMEX3 without tid skipped");
        continue;
      }
      TimeRefAnn t;
      t.id = *tid;
      t.target = tokens_in(span);
      if (const std::string* value = span.node->attr("value"))
        t.value = *value;
      doc.timerefxs.push_back(std::move(t));
      continue;
    }

    const std::string* eid = span.node->attr("eid");
    std::string location = eid ? *eid : "EVENT";
    auto it = eid ? instances.find(*eid) : instances.end();
    if (it == instances.end()) {
      out.report.add(Severity::warning, "MISSING_INSTANCE", location,
                     "EVENT has no MAKEINSTANCE; skipped");
      continue;
    }
    TargetRef target = tokens_in(span);
    if (target.indices.empty()) {
      out.report.add(Severity::warning, "EMPTY_TARGET", location,
                     "EVENT covers no tokens; skipped");
      continue;
    }
    for (const Instance& inst : it->second) {
      if (!inst.is_verb) continue;
      VerbAnn v;
      v.id = inst.eiid;
      v.target = target;
      v.se = inst.se;
      v.er = inst.er;
      doc.verbs.push_back(std::move(v));
    }
  }

  return out;
}

}  // namespace rtmml
