#include <string>

#include "doctest.h"
#include "rtmml/errors.hpp"
#include "rtmml/xml.hpp"

namespace xml = rtmml::xml;

TEST_CASE("elements, attributes and nesting") {
  xml::Node root = xml::parse(
      "<a x=\"1\" y='two'><b/><c>text</c> tail </a>");
  CHECK(root.is_element("a"));
  REQUIRE(root.attr("x"));
  CHECK(*root.attr("x") == "1");
  CHECK(*root.attr("y") == "two");
  CHECK(root.attr("z") == nullptr);
  REQUIRE(root.children.size() == 3);
  CHECK(root.children[0].is_element("b"));
  CHECK(root.children[1].is_element("c"));
  CHECK(root.children[1].direct_text() == "text");
  CHECK(root.children[2].kind == xml::Node::Kind::text);
  CHECK(root.direct_text() == " tail ");
  CHECK(root.deep_text() == "text tail ");
}

TEST_CASE("relation attributes may contain bare angle brackets") {
  xml::Node root = xml::parse("<v sr=\"<=\" se=\">\" er=\"<\" />");
  CHECK(*root.attr("sr") == "<=");
  CHECK(*root.attr("se") == ">");
  CHECK(*root.attr("er") == "<");
}

TEST_CASE("entities decode; a lone ampersand stays literal") {
  xml::Node root = xml::parse(
      "<a t=\"&lt;&gt;&amp;&quot;&apos;\">x &amp; y &#65;&#x42; AT&T</a>");
  CHECK(*root.attr("t") == "<>&\"'");
  CHECK(root.direct_text() == "x & y AB AT&T");
}

TEST_CASE("attribute whitespace is normalised, text whitespace kept") {
  xml::Node root = xml::parse("<a t=\"one\n\ttwo\">one\n\ttwo</a>");
  CHECK(*root.attr("t") == "one  two");
  CHECK(root.direct_text() == "one\n\ttwo");
}

TEST_CASE("comments, CDATA, declarations and doctype") {
  xml::Node root = xml::parse(
      "<?xml version=\"1.0\"?>\n"
      "<!DOCTYPE a [ <!ELEMENT a ANY> ]>\n"
      "<!-- leading -->\n"
      "<a><!-- inside --><![CDATA[<raw & text>]]><?pi data?></a>\n"
      "<!-- trailing -->");
  CHECK(root.is_element("a"));
  CHECK(root.direct_text() == "<raw & text>");
}

TEST_CASE("a byte order mark is skipped") {
  xml::Node root = xml::parse("\xEF\xBB\xBF<a/>");
  CHECK(root.is_element("a"));
}

TEST_CASE("self-closing and explicitly closed forms are equivalent") {
  xml::Node a = xml::parse("<a x=\"1\"/>");
  xml::Node b = xml::parse("<a x=\"1\"></a>");
  CHECK(a.name == b.name);
  CHECK(a.attrs == b.attrs);
  CHECK(a.children.empty());
  CHECK(b.children.empty());
}

TEST_CASE("unreadable markup throws with a position") {
  CHECK_THROWS_AS(xml::parse(""), rtmml::XmlError);
  CHECK_THROWS_AS(xml::parse("no markup"), rtmml::XmlError);
  CHECK_THROWS_AS(xml::parse("<a><b></a>"), rtmml::XmlError);
  CHECK_THROWS_AS(xml::parse("<a>"), rtmml::XmlError);
  CHECK_THROWS_AS(xml::parse("<a x=1/>"), rtmml::XmlError);
  CHECK_THROWS_AS(xml::parse("<a x=\"1\" x=\"2\"/>"), rtmml::XmlError);
  CHECK_THROWS_AS(xml::parse("<a/><b/>"), rtmml::XmlError);
  CHECK_THROWS_AS(xml::parse("<a>&#xZZ;</a>"), rtmml::XmlError);
  try {
    xml::parse("<a>\n  <b></c>\n</a>");
    FAIL("expected XmlError");
  } catch (const rtmml::XmlError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("escaping round-trips through the parser") {
  std::string wild = "a <b> & \"c\" 'd' <= &amp;";
  std::string markup = "<a t=\"" + xml::escape_attr(wild) + "\">" +
                       xml::escape_text(wild) + "</a>";
  xml::Node root = xml::parse(markup);
  CHECK(*root.attr("t") == wild);
  CHECK(root.direct_text() == wild);
}
