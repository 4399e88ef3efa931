#include "btdiv/formats.hpp"

#include <unordered_set>

#include "btdiv/util.hpp"
#include "json.hpp"

namespace btdiv::formats {

namespace {

bool blank_line(const std::string& line) {
  for (char32_t c : decode_utf8(line))
    if (!is_uni_space(c)) return false;
  return true;
}

}  // namespace

CandidateFile parse_candidate_lines(std::span<const std::string> lines,
                                    const std::string& origin) {
  CandidateFile out;
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank_line(lines[i])) continue;
    std::string where = origin + ":" + std::to_string(i + 1);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(where + ": invalid JSON: " + e.what());
    }
    if (!record.is_object())
      throw ValidationError(where + ": expected a JSON object");

    CandidateGroup group;
    if (!record.contains("id") || !record["id"].is_string())
      throw ValidationError(where + ": missing string field 'id'");
    group.id = record["id"].get<std::string>();
    if (group.id.empty())
      throw ValidationError(where + ": 'id' must be non-empty");
    if (!ids.insert(group.id).second)
      throw ValidationError(where + ": duplicate group id '" + group.id + "'");

    if (record.contains("source")) {
      if (!record["source"].is_string())
        throw ValidationError(where + ": 'source' must be a string");
      group.source = record["source"].get<std::string>();
    }

    if (!record.contains("candidates") || !record["candidates"].is_array())
      throw ValidationError(where + ": missing array field 'candidates'");
    for (const auto& c : record["candidates"]) {
      if (!c.is_string())
        throw ValidationError(where + ": candidates must all be strings");
      group.candidates.push_back(c.get<std::string>());
    }
    if (group.candidates.size() < 2)
      throw ValidationError(where + ": need at least 2 candidates, got " +
                            std::to_string(group.candidates.size()));
    if (out.k == 0) {
      out.k = group.candidates.size();
    } else if (group.candidates.size() != out.k) {
      throw ValidationError(
          where + ": candidate count " +
          std::to_string(group.candidates.size()) +
          " differs from earlier groups (" + std::to_string(out.k) + ")");
    }
    out.groups.push_back(std::move(group));
  }
  if (out.groups.empty())
    throw ValidationError(origin + ": no candidate groups found");
  return out;
}

CandidateFile read_candidate_file(const std::string& path) {
  return parse_candidate_lines(read_lines(path), path);
}

std::string render_candidate_jsonl(std::span<const CandidateGroup> groups) {
  std::string out;
  for (const CandidateGroup& g : groups) {
    out += "{\"id\":\"";
    out += json_escape(g.id);
    out += '"';
    if (!g.source.empty()) {
      out += ",\"source\":\"";
      out += json_escape(g.source);
      out += '"';
    }
    out += ",\"candidates\":[";
    for (std::size_t i = 0; i < g.candidates.size(); ++i) {
      if (i) out += ',';
      out += '"';
      out += json_escape(g.candidates[i]);
      out += '"';
    }
    out += "]}\n";
  }
  return out;
}

void write_candidate_file(const std::string& path,
                          std::span<const CandidateGroup> groups) {
  write_file_atomic(path, render_candidate_jsonl(groups));
}

TreeLayout parse_tree_layout(std::string_view name) {
  if (name == "flat") return TreeLayout::kFlat;
  if (name == "blocks") return TreeLayout::kBlocks;
  throw ValidationError("unknown tree layout '" + std::string(name) +
                        "' (expected flat or blocks)");
}

GroupTrees read_group_trees(const std::string& path, TreeLayout layout,
                            std::size_t n_groups, std::size_t k) {
  std::vector<std::string> lines = read_lines(path);
  // Trailing blank lines are editor noise in both layouts; interior ones
  // are meaningful.
  while (!lines.empty() && blank_line(lines.back())) lines.pop_back();

  std::vector<std::string> flat;
  if (layout == TreeLayout::kFlat) {
    flat = std::move(lines);
  } else {
    // Blocks: k tree lines per group, single blank separators.
    std::size_t expect_in_block = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (blank_line(lines[i])) {
        if (expect_in_block != k)
          throw ValidationError(
              path + ":" + std::to_string(i + 1) + ": block has " +
              std::to_string(expect_in_block) + " trees, expected " +
              std::to_string(k));
        expect_in_block = 0;
      } else {
        if (expect_in_block == k)
          throw ValidationError(path + ":" + std::to_string(i + 1) +
                                ": block longer than " + std::to_string(k) +
                                " trees (missing separator?)");
        ++expect_in_block;
        flat.push_back(lines[i]);
      }
    }
    if (expect_in_block != 0 && expect_in_block != k)
      throw ValidationError(path + ": final block has " +
                            std::to_string(expect_in_block) +
                            " trees, expected " + std::to_string(k));
  }

  if (flat.size() != n_groups * k)
    throw ValidationError(path + ": expected " + std::to_string(n_groups * k) +
                          " tree lines (" + std::to_string(n_groups) +
                          " groups x " + std::to_string(k) + "), found " +
                          std::to_string(flat.size()));

  treebank::TreeFile parsed = treebank::parse_tree_lines(flat);
  GroupTrees out;
  out.missing = parsed.missing;
  out.malformed = parsed.malformed;
  for (std::string& e : parsed.errors) out.errors.push_back(path + ":" + e);
  out.trees.resize(n_groups);
  for (std::size_t g = 0; g < n_groups; ++g) {
    out.trees[g].reserve(k);
    for (std::size_t c = 0; c < k; ++c)
      out.trees[g].push_back(std::move(parsed.trees[g * k + c]));
  }
  return out;
}

}  // namespace btdiv::formats
