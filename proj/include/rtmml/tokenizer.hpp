#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "rtmml/model.hpp"

namespace rtmml {

// One decoded codepoint with its byte position in the original string.
struct Utf8Char {
  char32_t cp = 0;
  std::size_t byte_pos = 0;
  std::size_t byte_len = 1;
};

// Decodes UTF-8; an invalid byte is passed through as a single codepoint so
// tokenization never fails on dirty input.
std::vector<Utf8Char> utf8_decode(std::string_view text);

// Splits text on whitespace, then peels punctuation off both ends of each
// chunk, one character per token. Punctuation interior to a chunk (as in
// "5,745,188", "C$44.3" or "cease-fire") stays attached. The segmentation
// is deterministic; token character offsets count codepoints.
//
// The peel class is , . ; : ! ? " ' ( ) [ ] ` and the curly quote pairs.
// This rule is an inference from the markup this tool consumes, not part of
// any published segmentation standard; see the README.
std::vector<Token> tokenize(std::string_view text);

// Expands a target specification, a comma-separated list of "#tokenN" and
// "#range(#tokenA,#tokenB)" terms (ranges inclusive), into token indices.
// Lenient mode sorts and deduplicates; strict mode requires the expansion
// to already be strictly increasing. Throws TargetError on malformed
// syntax, on a range with A > B, and on any index >= token_count.
TargetRef resolve_target(std::string_view spec, std::size_t token_count,
                         bool strict = false);

}  // namespace rtmml
