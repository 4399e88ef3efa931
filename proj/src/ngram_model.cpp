#include "btdiv/ngram_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_set>

#include "btdiv/util.hpp"
#include "json.hpp"

namespace btdiv::ngram_model {

using seqmodel::Vocabulary;

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::u32string current;
  for (char32_t c : decode_utf8(line)) {
    if (is_uni_space(c)) {
      if (!current.empty()) {
        out.push_back(encode_utf8(current));
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(encode_utf8(current));
  return out;
}

std::string NGramModel::pack_key(std::span<const int> ids) {
  // Big-endian so byte order matches numeric order; keys then sort the
  // same way the canonical save file does.
  std::string key;
  key.reserve(ids.size() * 4);
  for (int id : ids) {
    auto u = static_cast<std::uint32_t>(id);
    key.push_back(static_cast<char>((u >> 24) & 0xFF));
    key.push_back(static_cast<char>((u >> 16) & 0xFF));
    key.push_back(static_cast<char>((u >> 8) & 0xFF));
    key.push_back(static_cast<char>(u & 0xFF));
  }
  return key;
}

NGramModel NGramModel::train(std::span<const std::string> lines,
                             const Params& params) {
  if (params.order < 1)
    throw ValidationError("ngram train: order must be >= 1");
  if (params.alpha < 0.0)
    throw ValidationError("ngram train: alpha must be >= 0");

  // Vocabulary in first-occurrence order.
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(lines.size());
  for (const std::string& line : lines) {
    tokenized.push_back(split_ws(line));
    for (const std::string& w : tokenized.back()) {
      if (seen.insert(w).second) words.push_back(w);
    }
  }
  if (words.empty())
    throw ValidationError("ngram train: corpus has no tokens");

  NGramModel model;
  model.params_ = params;
  model.vocab_ = Vocabulary(words);

  const int L = params.order - 1;
  std::unordered_map<std::string, std::unordered_map<int, long long>> tmp;
  for (const auto& toks : tokenized) {
    std::vector<int> seq(L, Vocabulary::kBos);
    seq.reserve(L + toks.size() + 1);
    for (const std::string& w : toks) seq.push_back(model.vocab_.id(w));
    seq.push_back(Vocabulary::kEos);
    for (std::size_t pos = L; pos < seq.size(); ++pos) {
      // Count every context length so backoff has something to land on.
      for (int len = 0; len <= L; ++len) {
        std::span<const int> ctx(seq.data() + pos - len,
                                 static_cast<std::size_t>(len));
        ++tmp[pack_key(ctx)][seq[pos]];
      }
    }
  }

  model.contexts_.reserve(tmp.size());
  for (auto& [key, counts] : tmp) {
    ContextStats stats;
    stats.counts.assign(counts.begin(), counts.end());
    std::sort(stats.counts.begin(), stats.counts.end());
    for (const auto& [id, c] : stats.counts) stats.total += c;
    model.contexts_.emplace(key, std::move(stats));
  }
  return model;
}

std::vector<int> NGramModel::context_window(
    std::span<const int> prefix) const {
  const int L = params_.order - 1;
  std::vector<int> ctx(static_cast<std::size_t>(L), Vocabulary::kBos);
  for (int k = 0; k < L; ++k) {
    // ctx[L-1] is the most recent token.
    int back = k + 1;
    if (back <= static_cast<int>(prefix.size()))
      ctx[L - back] = prefix[prefix.size() - back];
  }
  return ctx;
}

const NGramModel::ContextStats* NGramModel::resolve(
    std::span<const int> context) const {
  for (int len = static_cast<int>(context.size()); len >= 0; --len) {
    auto it = contexts_.find(
        pack_key(context.last(static_cast<std::size_t>(len))));
    if (it != contexts_.end() && it->second.total > 0) return &it->second;
  }
  return nullptr;
}

void NGramModel::next_distribution(std::span<const int> prefix,
                                   std::vector<double>& out) const {
  const int V = vocab_.size();
  out.assign(static_cast<std::size_t>(V), 0.0);
  std::vector<int> ctx = context_window(prefix);
  const ContextStats* stats = resolve(ctx);
  if (!stats)
    throw std::logic_error("next_distribution called on untrained model");

  const double a = params_.alpha;
  if (a > 0.0) {
    const double denom =
        static_cast<double>(stats->total) + a * static_cast<double>(V - 1);
    for (int w = 1; w < V; ++w) out[w] = a / denom;
    for (const auto& [id, c] : stats->counts)
      out[id] += static_cast<double>(c) / denom;
  } else {
    for (const auto& [id, c] : stats->counts)
      out[id] = static_cast<double>(c) / static_cast<double>(stats->total);
  }
}

double NGramModel::token_prob(std::span<const int> prefix, int token) const {
  if (token <= Vocabulary::kBos || token >= vocab_.size()) return 0.0;
  std::vector<int> ctx = context_window(prefix);
  const ContextStats* stats = resolve(ctx);
  if (!stats)
    throw std::logic_error("token_prob called on untrained model");
  long long c = 0;
  auto it = std::lower_bound(
      stats->counts.begin(), stats->counts.end(), token,
      [](const std::pair<int, long long>& p, int t) { return p.first < t; });
  if (it != stats->counts.end() && it->first == token) c = it->second;
  const double a = params_.alpha;
  if (a > 0.0) {
    return (static_cast<double>(c) + a) /
           (static_cast<double>(stats->total) +
            a * static_cast<double>(vocab_.size() - 1));
  }
  return static_cast<double>(c) / static_cast<double>(stats->total);
}

double NGramModel::perplexity(std::span<const std::string> lines) const {
  double log_sum = 0.0;
  std::size_t emissions = 0;
  std::vector<int> prefix;
  for (const std::string& line : lines) {
    std::vector<std::string> toks = split_ws(line);
    prefix.clear();
    for (const std::string& w : toks) {
      int id = vocab_.id(w);
      if (id < 0)
        throw ValidationError("perplexity: token not in vocabulary: '" + w +
                              "'");
      double p = token_prob(prefix, id);
      if (p <= 0.0) return std::numeric_limits<double>::infinity();
      log_sum += std::log(p);
      ++emissions;
      prefix.push_back(id);
    }
    double p_eos = token_prob(prefix, Vocabulary::kEos);
    if (p_eos <= 0.0) return std::numeric_limits<double>::infinity();
    log_sum += std::log(p_eos);
    ++emissions;
  }
  if (emissions == 0)
    throw ValidationError("perplexity: no emissions in evaluation corpus");
  return std::exp(-log_sum / static_cast<double>(emissions));
}

void NGramModel::save(const std::string& path) const {
  // Hand-rolled canonical form: contexts by (length, ids), counts by id,
  // so identical models serialize to identical bytes.
  std::vector<std::pair<std::string, const ContextStats*>> ordered;
  ordered.reserve(contexts_.size());
  for (const auto& [key, stats] : contexts_) ordered.emplace_back(key, &stats);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) {
              if (a.first.size() != b.first.size())
                return a.first.size() < b.first.size();
              return a.first < b.first;
            });

  char buf[64];
  std::string out;
  out += "{\"format\":\"btdiv-ngram\",\"version\":1,\"order\":";
  out += std::to_string(params_.order);
  std::snprintf(buf, sizeof(buf), "%.17g", params_.alpha);
  out += ",\"alpha\":";
  out += buf;
  out += ",\"vocab\":[";
  for (int i = 0; i < vocab_.size(); ++i) {
    if (i) out += ',';
    out += '"';
    out += json_escape(vocab_.token(i));
    out += '"';
  }
  out += "],\"contexts\":[";
  bool first_ctx = true;
  for (const auto& [key, stats] : ordered) {
    if (!first_ctx) out += ',';
    first_ctx = false;
    out += "{\"ctx\":[";
    for (std::size_t i = 0; i + 4 <= key.size(); i += 4) {
      if (i) out += ',';
      std::uint32_t u = 0;
      for (int k = 0; k < 4; ++k)
        u = (u << 8) | static_cast<unsigned char>(key[i + k]);
      out += std::to_string(u);
    }
    out += "],\"counts\":[";
    for (std::size_t i = 0; i < stats->counts.size(); ++i) {
      if (i) out += ',';
      out += '[';
      out += std::to_string(stats->counts[i].first);
      out += ',';
      out += std::to_string(stats->counts[i].second);
      out += ']';
    }
    out += "]}";
  }
  out += "]}\n";
  write_file_atomic(path, out);
}

NGramModel NGramModel::load(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("model file is not valid JSON: " + path + ": " +
                          e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != "btdiv-ngram")
      throw ValidationError("not a btdiv-ngram model file: " + path);
    if (doc.value("version", 0) != 1)
      throw ValidationError("unsupported model version in " + path);

    NGramModel model;
    model.params_.order = doc.at("order").get<int>();
    model.params_.alpha = doc.at("alpha").get<double>();
    if (model.params_.order < 1 || model.params_.alpha < 0.0)
      throw ValidationError("model parameters out of range in " + path);

    std::vector<std::string> tokens =
        doc.at("vocab").get<std::vector<std::string>>();
    if (tokens.size() < 2 || tokens[0] != seqmodel::kBosToken ||
        tokens[1] != seqmodel::kEosToken)
      throw ValidationError("model vocab missing reserved tokens in " + path);
    model.vocab_ = Vocabulary(
        std::span<const std::string>(tokens.data() + 2, tokens.size() - 2));
    const int V = model.vocab_.size();

    for (const auto& entry : doc.at("contexts")) {
      std::vector<int> ctx = entry.at("ctx").get<std::vector<int>>();
      if (static_cast<int>(ctx.size()) > model.params_.order - 1)
        throw ValidationError("context longer than order allows in " + path);
      for (int id : ctx)
        if (id < 0 || id >= V)
          throw ValidationError("context token id out of range in " + path);
      ContextStats stats;
      for (const auto& pair : entry.at("counts")) {
        int id = pair.at(0).get<int>();
        long long c = pair.at(1).get<long long>();
        if (id <= Vocabulary::kBos || id >= V || c <= 0)
          throw ValidationError("bad count entry in " + path);
        stats.counts.emplace_back(id, c);
        stats.total += c;
      }
      std::sort(stats.counts.begin(), stats.counts.end());
      for (std::size_t i = 1; i < stats.counts.size(); ++i)
        if (stats.counts[i].first == stats.counts[i - 1].first)
          throw ValidationError("duplicate count entry in " + path);
      if (!model.contexts_.emplace(pack_key(ctx), std::move(stats)).second)
        throw ValidationError("duplicate context in " + path);
    }
    if (model.contexts_.find(std::string()) == model.contexts_.end())
      throw ValidationError("model has no root context in " + path);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed model file " + path + ": " + e.what());
  }
}

}  // namespace btdiv::ngram_model
