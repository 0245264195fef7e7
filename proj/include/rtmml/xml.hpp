#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rtmml::xml {

// A small document tree: elements with ordered attributes and an ordered
// child list in which text runs and elements interleave. No namespace
// handling; "xml:id" is just an attribute name.
struct Node {
  enum class Kind { element, text };

  Kind kind = Kind::element;
  std::string name;                                        // element only
  std::vector<std::pair<std::string, std::string>> attrs;  // element only
  std::vector<Node> children;                              // element only
  std::string text;                                        // text only

  const std::string* attr(std::string_view key) const;
  bool is_element(std::string_view n) const {
    return kind == Kind::element && name == n;
  }

  // Concatenation of this element's own text runs.
  std::string direct_text() const;
  // Concatenation of all descendant text in document order.
  std::string deep_text() const;
};

// Parses one document and returns its root element. Throws XmlError with a
// line/column position on anything unreadable.
//
// Deliberately lenient in two ways the markup we consume requires: a quoted
// attribute value may contain a bare '<' (relation attributes are written
// sr="<=" in the wild), and an '&' that does not start a known entity is
// kept literally. Everything emitted by the serializer is strictly escaped.
Node parse(std::string_view src);

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

}  // namespace rtmml::xml
