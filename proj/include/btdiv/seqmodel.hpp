#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace btdiv::seqmodel {

inline constexpr const char* kBosToken = "<s>";
inline constexpr const char* kEosToken = "</s>";

// Closed token inventory.  Id 0 is reserved for BOS and id 1 for EOS; BOS
// is context-only and must never receive probability mass.
class Vocabulary {
 public:
  static constexpr int kBos = 0;
  static constexpr int kEos = 1;

  Vocabulary();
  // `words` must not contain the reserved tokens or duplicates.
  explicit Vocabulary(std::span<const std::string> words);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::string& token(int id) const { return tokens_.at(id); }
  // -1 when unknown.
  int id(std::string_view token) const;

  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Deterministic next-token model: the same prefix always yields the same
// distribution, which is what makes decoding reproducible and lets the
// brute-force beam oracle enumerate the exact search space.
class SequenceModel {
 public:
  virtual ~SequenceModel() = default;

  virtual const Vocabulary& vocab() const = 0;

  // Fills `out` (resized to vocab size) with P(next token | prefix).
  // `prefix` holds emitted token ids only; models pad with BOS internally.
  // Must sum to 1 and give BOS probability 0.
  virtual void next_distribution(std::span<const int> prefix,
                                 std::vector<double>& out) const = 0;
};

}  // namespace btdiv::seqmodel
