#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "btdiv/lexdiv.hpp"
#include "btdiv/util.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace btdiv;
using namespace btdiv::lexdiv;

TEST_SUITE_BEGIN("lexdiv");

// 100 hypothesis/reference pairs scored once by an independent Python
// transcription of the reference algorithms and frozen.  The unit bound is
// tighter than the acceptance one because only float formatting separates
// the two implementations.
TEST_CASE("sentence scores match the frozen oracle pairs") {
  auto lines = read_lines(testutil::fixture_path("score_pairs.tsv"));
  REQUIRE(lines.size() == 100);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto f = testutil::tsv_fields(lines[i]);
    REQUIRE(f.size() == 4);
    double want_bleu = std::strtod(f[0].c_str(), nullptr);
    double want_chrf = std::strtod(f[1].c_str(), nullptr);
    CAPTURE(i);
    CAPTURE(f[2]);
    CAPTURE(f[3]);
    CHECK(std::fabs(sentence_bleu(f[2], f[3]) - want_bleu) < 1e-5);
    CHECK(std::fabs(sentence_chrf(f[2], f[3]) - want_chrf) < 1e-5);
  }
}

TEST_CASE("identical sentences score exactly 100 BLEU and chrF") {
  std::string s = "the minister announced the new budget on tuesday";
  CHECK(sentence_bleu(s, s) == 100.0);
  CHECK(sentence_chrf(s, s) == 100.0);
  CHECK(sentence_chrf("ab", "ab") == 100.0);  // shorter than char order
}

TEST_CASE("short identical sentences still lose all 4-gram precision") {
  // eff:no keeps the 4-gram term even when no 4-grams exist, so a 3-token
  // identity pair collapses to 0 while chrF stays at 100
  CHECK(sentence_bleu("one two three", "one two three") ==
        doctest::Approx(0.0));
  CHECK(sentence_chrf("one two three", "one two three") == 100.0);
}

TEST_CASE("empty sides degrade or reject") {
  CHECK(sentence_bleu("", "a real reference") == 0.0);
  CHECK(sentence_chrf("", "a real reference") == 0.0);
  CHECK_THROWS_AS((void)sentence_bleu("", ""), ValidationError);
  CHECK_THROWS_AS((void)sentence_chrf("  ", "\t"), ValidationError);
}

TEST_CASE("pairwise scores cover all ordered pairs") {
  std::vector<std::string> cands = {"the cat sat on the mat today",
                                    "the cat sat on a mat today",
                                    "a dog stood on the mat today"};
  BleuConfig cfg;
  auto scores = pairwise_scores(
      cands, [&](std::string_view h, std::string_view r) {
        return sentence_bleu(h, r, cfg);
      });
  REQUIRE(scores.size() == 6);
  // row-major (hyp, ref) order, diagonal excluded
  CHECK(scores[0] == sentence_bleu(cands[0], cands[1]));
  CHECK(scores[1] == sentence_bleu(cands[0], cands[2]));
  CHECK(scores[2] == sentence_bleu(cands[1], cands[0]));
  CHECK(scores[5] == sentence_bleu(cands[2], cands[1]));

  std::vector<std::string> one = {"alone"};
  CHECK_THROWS_AS((void)pairwise_scores(
                      one, [](std::string_view, std::string_view) {
                        return 0.0;
                      }),
                  ValidationError);
}

TEST_CASE("i-score identities") {
  std::vector<std::string> same = {"the cat sat on the mat today",
                                   "the cat sat on the mat today",
                                   "the cat sat on the mat today"};
  CHECK(i_bleu(same) == 0.0);
  CHECK(i_chrf(same) == 0.0);

  // a constant pairwise score of 60 leaves an i-score of exactly 40
  std::vector<std::string> two = {"a", "b"};
  CHECK(i_score(two, [](std::string_view, std::string_view) {
          return 60.0;
        }) == 40.0);
}

TEST_CASE("dataset scoring sorts by id and tolerates failing groups") {
  std::vector<CandidateGroup> groups;
  groups.push_back({"g2", "", {"the red house", "the blue house"}});
  groups.push_back({"g1", "", {"a quick fox", "a slow fox"}});
  groups.push_back({"bad", "", {"only one candidate"}});  // k < 2 fails

  auto scorer = [](std::string_view h, std::string_view r) {
    return sentence_chrf(h, r);
  };
  auto score = dataset_i_score(groups, scorer);
  REQUIRE(score.per_group.size() == 2);
  CHECK(score.per_group[0].id == "g1");
  CHECK(score.per_group[1].id == "g2");
  CHECK(score.failed == 1);
  REQUIRE(score.errors.size() == 1);
  CHECK(score.errors[0].find("bad") != std::string::npos);
  double mean =
      (score.per_group[0].value + score.per_group[1].value) / 2.0;
  CHECK(score.aggregate == mean);

  // same numbers regardless of input order or worker count
  std::vector<CandidateGroup> reordered = {groups[1], groups[2], groups[0]};
  auto again = dataset_i_score(reordered, scorer, 4);
  CHECK(again.aggregate == score.aggregate);
  REQUIRE(again.per_group.size() == 2);
  CHECK(again.per_group[0].value == score.per_group[0].value);
  CHECK(again.per_group[1].value == score.per_group[1].value);

  std::vector<CandidateGroup> all_bad = {{"x", "", {"solo"}}};
  CHECK_THROWS_AS((void)dataset_i_score(all_bad, scorer), ValidationError);
}

TEST_CASE("chrf beta weighting favors recall") {
  // hyp shares a prefix with ref; higher beta should weight the (worse)
  // recall more heavily and lower the score
  std::string hyp = "abcdefgh";
  std::string ref = "abcdefgh plus a much longer tail here";
  ChrfConfig b2;
  ChrfConfig b05 = b2;
  b05.beta = 0.5;
  CHECK(sentence_chrf(hyp, ref, b2) < sentence_chrf(hyp, ref, b05));
}

TEST_SUITE_END();
