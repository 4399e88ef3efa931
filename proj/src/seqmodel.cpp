#include "btdiv/seqmodel.hpp"

#include "btdiv/util.hpp"

namespace btdiv::seqmodel {

Vocabulary::Vocabulary() : Vocabulary(std::span<const std::string>{}) {}

Vocabulary::Vocabulary(std::span<const std::string> words) {
  tokens_.reserve(words.size() + 2);
  tokens_.push_back(kBosToken);
  tokens_.push_back(kEosToken);
  for (const std::string& w : words) tokens_.push_back(w);
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
    auto [it, inserted] = index_.emplace(tokens_[i], i);
    if (!inserted)
      throw ValidationError("Vocabulary: duplicate or reserved token '" +
                            tokens_[i] + "'");
  }
}

int Vocabulary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? -1 : it->second;
}

}  // namespace btdiv::seqmodel
