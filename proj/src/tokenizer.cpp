#include "rtmml/tokenizer.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "rtmml/errors.hpp"

namespace rtmml {

namespace {

bool is_space(char32_t cp) {
  return cp == U' ' || (cp >= U'\t' && cp <= U'\r') || cp == U' ';
}

bool is_peel_punct(char32_t cp) {
  switch (cp) {
    case U',': case U'.': case U';': case U':': case U'!': case U'?':
    case U'"': case U'\'': case U'(': case U')': case U'[': case U']':
    case U'`':
    case U'“': case U'”':  // curly double quotes
    case U'‘': case U'’':  // curly single quotes
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<Utf8Char> utf8_decode(std::string_view text) {
  std::vector<Utf8Char> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char b = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    char32_t cp = b;
    if (b >= 0xF0) len = 4;
    else if (b >= 0xE0) len = 3;
    else if (b >= 0xC0) len = 2;
    if (len > 1) {
      if (i + len > text.size()) {
        len = 1;  // truncated sequence, fall back to the raw byte
      } else {
        char32_t acc = b & (0x7F >> len);
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
          unsigned char cont = static_cast<unsigned char>(text[i + k]);
          if ((cont & 0xC0) != 0x80) { ok = false; break; }
          acc = (acc << 6) | (cont & 0x3F);
        }
        if (ok) cp = acc; else len = 1;
      }
    }
    out.push_back({cp, i, len});
    i += len;
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Utf8Char> cps = utf8_decode(text);
  std::vector<Token> tokens;

  auto emit = [&](std::size_t cp_begin, std::size_t cp_end) {
    std::size_t byte_begin = cps[cp_begin].byte_pos;
    std::size_t byte_end =
        cps[cp_end - 1].byte_pos + cps[cp_end - 1].byte_len;
    tokens.push_back(Token{tokens.size(),
                           std::string(text.substr(byte_begin,
                                                   byte_end - byte_begin)),
                           cp_begin, cp_end});
  };

  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    while (i < n && is_space(cps[i].cp)) ++i;
    if (i >= n) break;
    std::size_t chunk_end = i;
    while (chunk_end < n && !is_space(cps[chunk_end].cp)) ++chunk_end;

    std::size_t lo = i, hi = chunk_end;
    while (lo < hi && is_peel_punct(cps[lo].cp)) {
      emit(lo, lo + 1);
      ++lo;
    }
    std::size_t core_end = hi;
    while (core_end > lo && is_peel_punct(cps[core_end - 1].cp)) --core_end;
    if (lo < core_end) emit(lo, core_end);
    for (std::size_t p = core_end; p < hi; ++p) emit(p, p + 1);

    i = chunk_end;
  }
  return tokens;
}

namespace {

struct SpecCursor {
  std::string_view spec;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < spec.size() &&
           (spec[pos] == ' ' || spec[pos] == '\t' || spec[pos] == '\n' ||
            spec[pos] == '\r'))
      ++pos;
  }

  bool eat(std::string_view lit) {
    if (spec.substr(pos, lit.size()) == lit) {
      pos += lit.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw TargetError("bad target \"" + std::string(spec) + "\": " + why);
  }

  std::size_t token_index() {
    skip_space();
    if (!eat("#token")) fail("expected #token");
    std::size_t start = pos;
    while (pos < spec.size() && spec[pos] >= '0' && spec[pos] <= '9') ++pos;
    if (pos == start) fail("missing token number");
    std::size_t value = 0;
    auto res = std::from_chars(spec.data() + start, spec.data() + pos, value);
    if (res.ec != std::errc()) fail("token number out of range");
    return value;
  }
};

}  // namespace

TargetRef resolve_target(std::string_view spec, std::size_t token_count,
                         bool strict) {
  SpecCursor cur{spec};
  std::vector<std::size_t> indices;

  while (true) {
    cur.skip_space();
    if (cur.eat("#range")) {
      cur.skip_space();
      if (!cur.eat("(")) cur.fail("expected ( after #range");
      std::size_t a = cur.token_index();
      cur.skip_space();
      if (!cur.eat(",")) cur.fail("expected , inside #range");
      std::size_t b = cur.token_index();
      cur.skip_space();
      if (!cur.eat(")")) cur.fail("expected ) closing #range");
      if (a > b) cur.fail("range start after range end");
      for (std::size_t k = a; k <= b; ++k) indices.push_back(k);
    } else {
      indices.push_back(cur.token_index());
    }
    cur.skip_space();
    if (cur.pos >= cur.spec.size()) break;
    if (!cur.eat(",")) cur.fail("expected , between terms");
  }

  if (indices.empty()) cur.fail("empty target");
  for (std::size_t idx : indices) {
    if (idx >= token_count)
      cur.fail("token index " + std::to_string(idx) + " out of range (" +
               std::to_string(token_count) + " tokens)");
  }

  if (strict) {
    for (std::size_t k = 1; k < indices.size(); ++k) {
      if (indices[k] <= indices[k - 1])
        cur.fail("indices not strictly increasing in strict mode");
    }
  } else {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  }
  return TargetRef{std::move(indices)};
}

}  // namespace rtmml
