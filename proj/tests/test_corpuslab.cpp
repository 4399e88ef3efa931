#include <string>
#include <unordered_set>
#include <vector>

#include "btdiv/corpuslab.hpp"
#include "btdiv/util.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace btdiv;
using namespace btdiv::corpuslab;

TEST_SUITE_BEGIN("corpuslab");

TEST_CASE("corpus stats on a tiny hand example") {
  std::vector<std::string> lines = {"one two", "", "three"};
  CorpusStats s = corpus_stats(lines);
  CHECK(s.lines == 3);
  CHECK(s.words == 3);
  CHECK(s.vocab_size == 3);
  CHECK(s.mean_sentence_length == doctest::Approx(1.0));
  CHECK(s.mean_word_length == doctest::Approx(11.0 / 3.0));
}

TEST_CASE("word lengths count unicode scalars, not bytes") {
  std::vector<std::string> lines = {"héllo wörld"};
  CorpusStats s = corpus_stats(lines);
  CHECK(s.words == 2);
  CHECK(s.mean_word_length == doctest::Approx(5.0));
}

TEST_CASE("empty corpus yields zeros, not NaNs") {
  std::vector<std::string> lines;
  CorpusStats s = corpus_stats(lines);
  CHECK(s.lines == 0);
  CHECK(s.words == 0);
  CHECK(s.mean_sentence_length == 0.0);
  CHECK(s.mean_word_length == 0.0);
}

TEST_CASE("accumulator merge is order independent") {
  std::vector<std::string> lines = {
      "the cat sat",  "on the mat",   "a dog barked",
      "the end came", "birds flew by"};

  CorpusAccumulator whole;
  for (const auto& l : lines) whole.add_line(l);

  CorpusAccumulator left, right, merged_lr, merged_rl;
  for (std::size_t i = 0; i < lines.size(); ++i)
    (i < 2 ? left : right).add_line(lines[i]);
  merged_lr.merge(left);
  merged_lr.merge(right);
  merged_rl.merge(right);
  merged_rl.merge(left);

  auto same = [](const CorpusStats& a, const CorpusStats& b) {
    return a.lines == b.lines && a.words == b.words &&
           a.vocab_size == b.vocab_size &&
           a.mean_sentence_length == b.mean_sentence_length &&
           a.mean_word_length == b.mean_word_length;
  };
  CHECK(same(whole.stats(), merged_lr.stats()));
  CHECK(same(merged_lr.stats(), merged_rl.stats()));
}

TEST_CASE("stats agree with the frozen wc fixture") {
  auto lines = read_lines(testutil::fixture_path("wc_fixture.txt"));
  CorpusStats s = corpus_stats(lines);
  CHECK(s.lines == 10);
  CHECK(s.words == 28);  // frozen `wc -w` output
}

TEST_CASE("neologisms list first occurrences in order") {
  std::vector<std::string> lines = {"a b c", "b d c"};
  std::unordered_set<std::string> known = {"a", "b"};
  auto r = find_neologisms(lines, known);
  CHECK(r.count == 2);
  CHECK(r.sample == std::vector<std::string>{"c", "d"});

  auto capped = find_neologisms(lines, known, 1);
  CHECK(capped.count == 2);
  CHECK(capped.sample == std::vector<std::string>{"c"});

  std::unordered_set<std::string> all = {"a", "b", "c", "d"};
  CHECK(find_neologisms(lines, all).count == 0);
}

namespace {

std::vector<CandidateGroup> numbered_groups(std::size_t n) {
  std::vector<CandidateGroup> out;
  for (std::size_t i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "g%04zu", i);
    out.push_back({id, "", {"first " + std::string(id), "second"}});
  }
  return out;
}

}  // namespace

TEST_CASE("reservoir keeps everything when capacity allows") {
  auto groups = numbered_groups(5);
  GroupReservoir res(10, 1);
  for (const auto& g : groups) res.offer(g);
  auto got = res.take();
  REQUIRE(got.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(got[i].id == groups[i].id);
}

TEST_CASE("reservoir sampling is deterministic per seed") {
  auto groups = numbered_groups(100);
  auto draw = [&](std::uint64_t seed) {
    GroupReservoir res(10, seed);
    for (const auto& g : groups) res.offer(g);
    return res.take();
  };
  auto a = draw(7);
  auto b = draw(7);
  REQUIRE(a.size() == 10);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == b[i].id);
  // results come back sorted by id
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].id < a[i].id);

  auto c = draw(8);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].id != c[i].id) differs = true;
  CHECK(differs);

  CHECK_THROWS_AS(GroupReservoir(0, 1), ValidationError);
}

TEST_CASE("index sampling and group sampling stay in lockstep") {
  auto groups = numbered_groups(60);
  std::vector<std::string> ids;
  for (const auto& g : groups) ids.push_back(g.id);

  SampleSpec spec;
  spec.size = 12;
  spec.seed = 99;
  auto idx = sample_indices(ids, spec);
  auto sampled = sample_groups(groups, spec);
  REQUIRE(idx.size() == 12);
  REQUIRE(sampled.size() == 12);
  for (std::size_t i = 0; i < idx.size(); ++i)
    CHECK(groups[idx[i]].id == sampled[i].id);

  // the reservoir class draws the same positions for the same seed
  GroupReservoir res(12, 99);
  for (const auto& g : groups) res.offer(g);
  auto via_res = res.take();
  REQUIRE(via_res.size() == 12);
  for (std::size_t i = 0; i < idx.size(); ++i)
    CHECK(via_res[i].id == sampled[i].id);

  SampleSpec zero;
  zero.size = 0;
  CHECK_THROWS_AS((void)sample_indices(ids, zero), ValidationError);
}

TEST_CASE("sampling a small stream keeps every group") {
  auto groups = numbered_groups(4);
  SampleSpec spec;
  spec.size = 30000;
  auto sampled = sample_groups(groups, spec);
  REQUIRE(sampled.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(sampled[i].id == groups[i].id);
}

TEST_SUITE_END();
