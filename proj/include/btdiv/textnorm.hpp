#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace btdiv::textnorm {

// mteval-v13a tokenization as shipped by sacreBLEU (its `13a` tokenizer):
// entity unescaping, ASCII punctuation splitting, digit-aware rules for
// period/comma/dash, whitespace collapse.  Token identity must match the
// reference implementation exactly, so the substitution rules below mirror
// its regex semantics (non-overlapping, left to right, over code points).
std::vector<std::string> tokenize_13a(std::string_view text);

// `wc -w` semantics: maximal runs of bytes outside the C locale's isspace
// set.  Deliberately byte-level and ASCII-only, like the coreutils tool.
std::size_t wc_words(std::string_view text);

struct NGramProfile {
  int order = 1;
  std::size_t total = 0;  // number of n-gram occurrences
  std::unordered_map<std::string, long long> counts;
};

// Character n-grams over Unicode code points.  When strip_whitespace is
// set, every whitespace code point is removed first (chrF's space:no).
NGramProfile char_ngrams(std::string_view text, int n,
                         bool strip_whitespace = true);

// Word n-grams over a token sequence; keys join tokens with a 0x1f byte so
// distinct sequences cannot collide.
NGramProfile word_ngrams(std::span<const std::string> tokens, int n);

}  // namespace btdiv::textnorm
