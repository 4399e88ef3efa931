#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace btdiv {

inline constexpr const char* kToolVersion = "0.1.0";

// Bad user input: files, flags, malformed records. Maps to exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- unicode

// Decodes UTF-8; invalid byte sequences become U+FFFD.
std::u32string decode_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view s);

// Whitespace as Python's str.split()/regex \s define it (the reference
// tokenizer's host semantics).
bool is_uni_space(char32_t c);

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

// Number of Unicode scalar values in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

// -------------------------------------------------------------------- rng

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for substream (a, b) of a base seed.  Used to give every
// (group, draw) pair its own independent generator.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

// mt19937_64 with hand-rolled mappings: the standard pins the engine output
// exactly, but not the <random> distributions, and decode results must be
// byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------- hashing

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

// Body of a JSON string literal (no surrounding quotes).
std::string json_escape(std::string_view s);

// --------------------------------------------------------------------- io

std::vector<std::string> read_lines(const std::string& path);
std::string read_file(const std::string& path);
std::uint64_t file_digest(const std::string& path);

// Writes through a temp file in the same directory, then renames.
void write_file_atomic(const std::string& path, std::string_view content);

// ---------------------------------------------------------------- threads

// Runs fn(i) for i in [0, n) across `workers` threads in fixed chunks.
// Exceptions are rethrown on the caller thread (first one wins).
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace btdiv
