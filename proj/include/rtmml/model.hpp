#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtmml/relations.hpp"
#include "rtmml/tense.hpp"

namespace rtmml {

// One segmentation unit. Indices are contiguous from zero, offsets are
// codepoint positions into the document text, tokens never overlap and
// appear in document order.
struct Token {
  std::size_t index = 0;
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  bool operator==(const Token&) const = default;
};

// An ordered list of token indices; always non-empty and strictly
// increasing in a valid document.
struct TargetRef {
  std::vector<std::size_t> indices;

  bool operator==(const TargetRef&) const = default;
};

// Which of a verb's three points is meant.
enum class PointSel { s, e, r };

std::string_view to_string(PointSel sel);
std::optional<PointSel> parse_point_sel(std::string_view s);

// A reference to a time point declared elsewhere: document creation time
// ("doc", reserved), a time expression by id, another verb's point
// ("#v1.r"), or a fresh named point introduced by any other label.
struct PointRef {
  enum class Kind { doc, timex, verb_point, named };

  Kind kind = Kind::named;
  std::string id;           // timex id, verb id, or point label
  PointSel sel = PointSel::s;  // meaningful for verb_point only
  std::string raw;          // spelling as written, kept for diagnostics

  static PointRef doc_creation();
  static PointRef timex(std::string id);
  static PointRef verb_point(std::string verb_id, PointSel sel);
  static PointRef named(std::string label);

  // Canonical spelling: "doc", "t1", "#v1.r", or the bare label.
  std::string to_string() const;

  // The spelling never affects identity.
  friend bool operator==(const PointRef& a, const PointRef& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::doc: return true;
      case Kind::verb_point: return a.id == b.id && a.sel == b.sel;
      default: return a.id == b.id;
    }
  }
};

// A reference to an annotated entity (verb or time expression) as used in
// link elements. Unresolved spellings are kept so validation can report
// them.
struct EntityRef {
  enum class Kind { verb, timex, unresolved };

  Kind kind = Kind::unresolved;
  std::string id;
  std::string raw;

  friend bool operator==(const EntityRef& a, const EntityRef& b) {
    return a.kind == b.kind && a.id == b.id;
  }
};

// A tensed verbal group. Either view+tense or at least one of the relation
// attributes must be present for the annotation to say anything.
struct VerbAnn {
  std::string id;
  TargetRef target;
  std::optional<View> view;
  std::optional<Tense> tense;
  std::optional<RelationSet> se;
  std::optional<RelationSet> er;
  std::optional<RelationSet> sr;
  std::optional<PointRef> s;
  std::optional<PointRef> e;
  std::optional<PointRef> r;

  bool operator==(const VerbAnn&) const = default;
};

// A time-referring expression.
struct TimeRefAnn {
  std::string id;
  TargetRef target;
  std::optional<std::string> value;

  bool operator==(const TimeRefAnn&) const = default;
};

// Document-level annotation: creation time and an opaque modifier that is
// stored and echoed but never interpreted.
struct DocAnn {
  std::optional<std::string> time;
  std::optional<std::string> mod;

  bool operator==(const DocAnn&) const = default;
};

enum class LinkKind { positions, same_timeframe, reports };

std::string_view to_string(LinkKind k);
std::optional<LinkKind> parse_link_kind(std::string_view s);

struct LinkAnn {
  std::string id;
  LinkKind kind = LinkKind::positions;
  std::optional<EntityRef> source;
  std::vector<EntityRef> targets;

  bool operator==(const LinkAnn&) const = default;
};

// Identity of an abstract time point: the document creation time, one of a
// verb's three points, a time expression's point, or a named point. The
// ordering is total and stable so edges have a canonical direction.
struct TimePointId {
  enum class Kind { doc_creation, verb_point, timex, named };

  Kind kind = Kind::doc_creation;
  std::string id;
  PointSel sel = PointSel::s;

  static TimePointId sd();
  static TimePointId verb(std::string verb_id, PointSel sel);
  static TimePointId timex(std::string timex_id);
  static TimePointId named(std::string label);

  // Machine form, also the CLI spelling: "SD", "v1.e", "t1", "label".
  std::string name() const;
  // Display form with the point letter capitalised: "v1.E".
  std::string label() const;

  friend bool operator==(const TimePointId& a, const TimePointId& b) {
    return a.kind == b.kind && a.id == b.id &&
           (a.kind != Kind::verb_point || a.sel == b.sel);
  }
  friend std::strong_ordering operator<=>(const TimePointId& a,
                                          const TimePointId& b);
  friend bool operator<(const TimePointId& a, const TimePointId& b) {
    return (a <=> b) == std::strong_ordering::less;
  }
};

// A text with its segmentation and standoff annotations. Immutable after
// construction by convention; nothing here mutates shared state.
struct AnnotatedDocument {
  std::string text;
  std::vector<Token> tokens;
  DocAnn doc;
  std::vector<VerbAnn> verbs;
  std::vector<TimeRefAnn> timerefxs;
  std::vector<LinkAnn> links;

  const VerbAnn* find_verb(std::string_view id) const;
  const TimeRefAnn* find_timerefx(std::string_view id) const;

  // The surface form a target covers, token texts joined by single spaces.
  std::string covered_text(const TargetRef& target) const;

  bool operator==(const AnnotatedDocument&) const = default;
};

}  // namespace rtmml
