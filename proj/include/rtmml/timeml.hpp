#pragma once

#include <string_view>

#include "rtmml/model.hpp"
#include "rtmml/parser.hpp"

namespace rtmml {

struct TimemlImport {
  AnnotatedDocument document;
  ValidationReport report;
};

// Reads TimeBank-flavoured TimeML. Each MAKEINSTANCE of a verb EVENT
// becomes a <verb> (id = eiid) carrying only what tense and aspect can
// say: se from tense (PAST > , PRESENT = , FUTURE < , anything else
// unconstrained), er from aspect (PERFECTIVE < , NONE = or > , anything
// else unconstrained), sr unconstrained. TIMEX3 elements become
// <timerefx>; the creation-time TIMEX3 becomes <doc time>. The body is
// the <TEXT> element when present, otherwise the whole document. TLINK,
// SLINK, ALINK and SIGNAL are tolerated and ignored; an EVENT without a
// MAKEINSTANCE is skipped with a warning. Throws XmlError on unreadable
// input.
TimemlImport import_timeml(std::string_view xml_text);

}  // namespace rtmml
