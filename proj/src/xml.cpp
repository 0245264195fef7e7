#include "rtmml/xml.hpp"

#include <cctype>

#include "rtmml/errors.hpp"

namespace rtmml::xml {

namespace {

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

struct Cursor {
  std::string_view src;
  std::size_t pos = 0;

  bool eof() const { return pos >= src.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  bool starts_with(std::string_view lit) const {
    return src.substr(pos, lit.size()) == lit;
  }
  bool eat(std::string_view lit) {
    if (starts_with(lit)) {
      pos += lit.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (!eof() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < src.size(); ++i) {
      if (src[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
    throw XmlError("xml line " + std::to_string(line) + " col " +
                   std::to_string(col) + ": " + msg);
  }

  void skip_until(std::string_view terminator, const char* what) {
    std::size_t found = src.find(terminator, pos);
    if (found == std::string_view::npos) fail(std::string("unterminated ") + what);
    pos = found + terminator.size();
  }
};

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '-' || c == '.';
}

std::string parse_name(Cursor& cur) {
  if (cur.eof() || !is_name_start(cur.peek())) cur.fail("expected a name");
  std::size_t begin = cur.pos;
  while (!cur.eof() && is_name_char(cur.peek())) ++cur.pos;
  return std::string(cur.src.substr(begin, cur.pos - begin));
}

// Decodes the five predefined entities plus numeric references. An '&'
// that does not introduce one of those is passed through unchanged.
void decode_into(std::string& out, std::string_view raw, Cursor& cur,
                 bool attribute_mode) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (attribute_mode && (c == '\t' || c == '\n' || c == '\r')) {
      out += ' ';  // attribute-value whitespace normalization
      continue;
    }
    if (c != '&') {
      out += c;
      continue;
    }
    std::size_t semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out += '&';
      continue;
    }
    std::string_view ent = raw.substr(i + 1, semi - i - 1);
    if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "amp") out += '&';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else if (!ent.empty() && ent[0] == '#') {
      unsigned long cp = 0;
      bool ok = ent.size() > 1;
      if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X')) {
        for (std::size_t k = 2; k < ent.size() && ok; ++k) {
          char h = ent[k];
          cp <<= 4;
          if (h >= '0' && h <= '9') cp += h - '0';
          else if (h >= 'a' && h <= 'f') cp += h - 'a' + 10;
          else if (h >= 'A' && h <= 'F') cp += h - 'A' + 10;
          else ok = false;
        }
      } else {
        for (std::size_t k = 1; k < ent.size() && ok; ++k) {
          char d = ent[k];
          if (d < '0' || d > '9') { ok = false; break; }
          cp = cp * 10 + static_cast<unsigned long>(d - '0');
        }
      }
      if (!ok || cp > 0x10FFFF) cur.fail("bad character reference &" +
                                         std::string(ent) + ";");
      append_utf8(out, cp);
    } else {
      out += '&';
      continue;
    }
    i = semi;
  }
}

std::string parse_attr_value(Cursor& cur) {
  char quote = cur.peek();
  if (quote != '"' && quote != '\'') cur.fail("expected quoted attribute value");
  ++cur.pos;
  std::size_t begin = cur.pos;
  while (!cur.eof() && cur.peek() != quote) ++cur.pos;
  if (cur.eof()) cur.fail("unterminated attribute value");
  std::string_view raw = cur.src.substr(begin, cur.pos - begin);
  ++cur.pos;
  std::string out;
  decode_into(out, raw, cur, /*attribute_mode=*/true);
  return out;
}

void skip_misc(Cursor& cur) {
  for (;;) {
    cur.skip_space();
    if (cur.starts_with("<!--")) {
      cur.pos += 4;
      cur.skip_until("-->", "comment");
    } else if (cur.starts_with("<?")) {
      cur.pos += 2;
      cur.skip_until("?>", "processing instruction");
    } else if (cur.starts_with("<!DOCTYPE")) {
      // Skip to the closing '>', stepping over an internal subset if any.
      cur.pos += 9;
      int brackets = 0;
      while (!cur.eof()) {
        char c = cur.src[cur.pos++];
        if (c == '[') ++brackets;
        else if (c == ']') --brackets;
        else if (c == '>' && brackets <= 0) break;
      }
      if (cur.eof() && cur.src.back() != '>') cur.fail("unterminated DOCTYPE");
    } else {
      return;
    }
  }
}

Node parse_element(Cursor& cur) {
  if (!cur.eat("<")) cur.fail("expected element");
  Node node;
  node.kind = Node::Kind::element;
  node.name = parse_name(cur);

  for (;;) {
    cur.skip_space();
    if (cur.eof()) cur.fail("unterminated start tag <" + node.name);
    if (cur.peek() == '/' || cur.peek() == '>') break;
    std::string key = parse_name(cur);
    cur.skip_space();
    if (!cur.eat("=")) cur.fail("expected = after attribute " + key);
    cur.skip_space();
    std::string value = parse_attr_value(cur);
    for (const auto& [existing, _] : node.attrs) {
      if (existing == key)
        cur.fail("duplicate attribute " + key + " on <" + node.name + ">");
    }
    node.attrs.emplace_back(std::move(key), std::move(value));
  }

  if (cur.eat("/>")) return node;
  if (!cur.eat(">")) cur.fail("malformed start tag <" + node.name);

  auto append_text = [&](std::string&& piece) {
    if (piece.empty()) return;
    if (!node.children.empty() &&
        node.children.back().kind == Node::Kind::text) {
      node.children.back().text += piece;
    } else {
      Node t;
      t.kind = Node::Kind::text;
      t.text = std::move(piece);
      node.children.push_back(std::move(t));
    }
  };

  for (;;) {
    if (cur.eof()) cur.fail("missing </" + node.name + ">");
    if (cur.starts_with("</")) {
      cur.pos += 2;
      std::string closing = parse_name(cur);
      cur.skip_space();
      if (!cur.eat(">")) cur.fail("malformed end tag </" + closing);
      if (closing != node.name)
        cur.fail("mismatched </" + closing + ">, expected </" + node.name +
                 ">");
      return node;
    }
    if (cur.starts_with("<!--")) {
      cur.pos += 4;
      cur.skip_until("-->", "comment");
      continue;
    }
    if (cur.starts_with("<![CDATA[")) {
      cur.pos += 9;
      std::size_t end = cur.src.find("]]>", cur.pos);
      if (end == std::string_view::npos) cur.fail("unterminated CDATA");
      append_text(std::string(cur.src.substr(cur.pos, end - cur.pos)));
      cur.pos = end + 3;
      continue;
    }
    if (cur.starts_with("<?")) {
      cur.pos += 2;
      cur.skip_until("?>", "processing instruction");
      continue;
    }
    if (cur.peek() == '<') {
      node.children.push_back(parse_element(cur));
      continue;
    }
    std::size_t begin = cur.pos;
    while (!cur.eof() && cur.peek() != '<') ++cur.pos;
    std::string decoded;
    decode_into(decoded, cur.src.substr(begin, cur.pos - begin), cur,
                /*attribute_mode=*/false);
    append_text(std::move(decoded));
  }
}

}  // namespace

const std::string* Node::attr(std::string_view key) const {
  for (const auto& [k, v] : attrs)
    if (k == key) return &v;
  return nullptr;
}

std::string Node::direct_text() const {
  std::string out;
  for (const Node& child : children)
    if (child.kind == Kind::text) out += child.text;
  return out;
}

std::string Node::deep_text() const {
  if (kind == Kind::text) return text;
  std::string out;
  for (const Node& child : children) out += child.deep_text();
  return out;
}

Node parse(std::string_view src) {
  Cursor cur{src};
  if (cur.starts_with("\xEF\xBB\xBF")) cur.pos += 3;
  skip_misc(cur);
  if (cur.eof() || cur.peek() != '<') cur.fail("expected a root element");
  Node root = parse_element(cur);
  skip_misc(cur);
  if (!cur.eof()) cur.fail("content after the root element");
  return root;
}

std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_attr(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace rtmml::xml
