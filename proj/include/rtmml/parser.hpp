#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rtmml/model.hpp"

namespace rtmml {

enum class Severity { error, warning };

std::string_view to_string(Severity s);

// One located, coded problem. The code is a stable machine-readable token
// (DANGLING_REF, BAD_TARGET, ...); the location is an element id where one
// exists, otherwise an element name.
struct Issue {
  Severity severity = Severity::error;
  std::string code;
  std::string location;
  std::string message;

  bool operator==(const Issue&) const = default;
};

struct ValidationReport {
  std::vector<Issue> issues;

  // A document is valid iff it drew no error-severity issues.
  bool ok() const;
  void add(Severity severity, std::string code, std::string location,
           std::string message);
  void merge(const ValidationReport& other);

  // One "severity code location message" line per issue.
  std::string to_text() const;
  std::string to_json() const;
};

struct ParseOptions {
  // Strict mode turns unknown elements/attributes into errors and requires
  // target lists to be written strictly increasing; lenient mode warns and
  // sorts.
  bool strict = false;
};

struct ParseResult {
  AnnotatedDocument document;
  ValidationReport report;
};

// Reads RTMML markup. Throws XmlError when the input is not readable
// markup at all or the root element is not <rtmml>; every structural
// problem below that is reported as an issue instead. The document text is
// the root's own character content (child elements excluded), trimmed;
// tokenization runs on load.
ParseResult parse_rtmml(std::string_view xml_text, const ParseOptions& opts = {});

// Canonical form: fixed attribute order, relation sets in <,=,> order,
// token runs collapsed to #range terms, strictly escaped. parse ∘
// serialize is the identity on valid models.
std::string serialize_rtmml(const AnnotatedDocument& doc);

// Semantic checks: dangling references, link arity and participant kinds,
// verbs that say nothing (neither view+tense nor any relation attribute),
// explicit relations contradicting the view/tense-derived ones, target
// bounds, and time-value formats (warnings). Never throws.
ValidationReport validate(const AnnotatedDocument& doc);

}  // namespace rtmml
