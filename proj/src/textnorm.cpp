#include "btdiv/textnorm.hpp"

#include <stdexcept>

#include "btdiv/util.hpp"

namespace btdiv::textnorm {

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// [\x20-\x26\x28-\x2b\x2f\x3a-\x40\x5b-\x60\x7b-\x7e] — ASCII punctuation
// minus apostrophe, comma, hyphen and period.
bool punct_class(char32_t c) {
  return (c >= 0x20 && c <= 0x26) || (c >= 0x28 && c <= 0x2B) || c == 0x2F ||
         (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

bool ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool period_comma(char32_t c) { return c == U'.' || c == U','; }

enum class PairEmit { kSpaceAfterEach, kSpaceBeforeBetween };

// Applies one two-character substitution rule with re.sub semantics:
// scan left to right, consume both characters on a match so matches never
// overlap.
template <typename P1, typename P2>
std::u32string sub_pairs(const std::u32string& s, P1 first, P2 second,
                         PairEmit emit) {
  std::u32string out;
  out.reserve(s.size() + 16);
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && first(s[i]) && second(s[i + 1])) {
      if (emit == PairEmit::kSpaceAfterEach) {
        // "\1 \2 "
        out += s[i];
        out += U' ';
        out += s[i + 1];
        out += U' ';
      } else {
        // " \1 \2"
        out += U' ';
        out += s[i];
        out += U' ';
        out += s[i + 1];
      }
      i += 2;
    } else {
      out += s[i++];
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize_13a(std::string_view text) {
  std::string line(text);
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }

  std::u32string u = decode_utf8(" " + line + " ");

  // Pad the punctuation class with spaces.
  std::u32string staged;
  staged.reserve(u.size() * 2);
  for (char32_t c : u) {
    if (punct_class(c)) {
      staged += U' ';
      staged += c;
      staged += U' ';
    } else {
      staged += c;
    }
  }

  // ([^0-9])([\.,]) -> "\1 \2 "  (punctuation after a non-digit)
  staged = sub_pairs(
      staged, [](char32_t c) { return !ascii_digit(c); }, period_comma,
      PairEmit::kSpaceAfterEach);
  // ([\.,])([^0-9]) -> " \1 \2"  (punctuation before a non-digit)
  staged = sub_pairs(staged, period_comma,
                     [](char32_t c) { return !ascii_digit(c); },
                     PairEmit::kSpaceBeforeBetween);
  // ([0-9])(-) -> "\1 \2 "       (dash after a digit)
  staged = sub_pairs(
      staged, ascii_digit, [](char32_t c) { return c == U'-'; },
      PairEmit::kSpaceAfterEach);

  // Collapse whitespace and split.
  std::vector<std::string> tokens;
  std::u32string current;
  for (char32_t c : staged) {
    if (is_uni_space(c)) {
      if (!current.empty()) {
        tokens.push_back(encode_utf8(current));
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) tokens.push_back(encode_utf8(current));
  return tokens;
}

std::size_t wc_words(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_ascii_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  return words;
}

NGramProfile char_ngrams(std::string_view text, int n, bool strip_whitespace) {
  if (n < 1) throw std::invalid_argument("char_ngrams: order must be >= 1");
  std::u32string chars;
  for (char32_t c : decode_utf8(text)) {
    if (strip_whitespace && is_uni_space(c)) continue;
    chars += c;
  }
  NGramProfile profile;
  profile.order = n;
  if (chars.size() < static_cast<std::size_t>(n)) return profile;
  for (std::size_t i = 0; i + n <= chars.size(); ++i) {
    std::string key = encode_utf8(
        std::u32string_view(chars.data() + i, static_cast<std::size_t>(n)));
    ++profile.counts[key];
    ++profile.total;
  }
  return profile;
}

NGramProfile word_ngrams(std::span<const std::string> tokens, int n) {
  if (n < 1) throw std::invalid_argument("word_ngrams: order must be >= 1");
  NGramProfile profile;
  profile.order = n;
  if (tokens.size() < static_cast<std::size_t>(n)) return profile;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
      if (k) key += '\x1f';
      key += tokens[i + k];
    }
    ++profile.counts[key];
    ++profile.total;
  }
  return profile;
}

}  // namespace btdiv::textnorm
