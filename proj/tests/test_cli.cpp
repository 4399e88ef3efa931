#include <string>
#include <vector>

#include "btdiv/util.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace btdiv;
using testutil::run_cli;

namespace {

// Golden outputs embed input paths exactly as given on the command line,
// so golden runs execute from the fixture directory with relative paths;
// the recorded headers stay machine-independent.
testutil::CommandResult run_fx(const std::string& args) {
  static int counter = 0;
  std::string out_path = testutil::temp_path("fx_out_" + std::to_string(counter));
  std::string err_path = testutil::temp_path("fx_err_" + std::to_string(counter));
  ++counter;
  std::string cmd = std::string("cd ") + BTDIV_FIXTURE_DIR + " && " +
                    BTDIV_CLI_PATH + " " + args + " >" + out_path + " 2>" +
                    err_path;
  int status = std::system(cmd.c_str());
  testutil::CommandResult r;
  r.exit_code = (status == -1) ? -1 : WEXITSTATUS(status);
  try {
    r.out = read_file(out_path);
  } catch (...) {
  }
  try {
    r.err = read_file(err_path);
  } catch (...) {
  }
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("help succeeds, bad invocations fail with JSON errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("diversity --help").exit_code == 0);

  auto none = run_cli("");
  CHECK(none.exit_code == 1);
  CHECK(none.err.find("\"error\"") != std::string::npos);

  auto unknown = run_cli("diversity --no-such-flag");
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("\"error\"") != std::string::npos);

  auto missing = run_cli("diversity -c /nonexistent/file.jsonl");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("validation") != std::string::npos);
}

TEST_CASE("diversity reproduces the golden TSV byte for byte") {
  std::string args =
      "diversity -c mixed_groups.jsonl -t mixed_groups.trees "
      "--metrics bleu,chrf,kernel";
  auto golden = read_file(testutil::fixture_path("golden_diversity.tsv"));

  auto r = run_fx(args);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == golden);

  // worker count must never leak into the output
  auto r4 = run_fx(args + " --workers 4");
  CHECK(r4.exit_code == 0);
  CHECK(r4.out == golden);

  // writing to a file produces the same bytes
  std::string out_path = testutil::temp_path("div_out.tsv");
  auto rf = run_fx(args + " -o " + out_path);
  CHECK(rf.exit_code == 0);
  CHECK(read_file(out_path) == golden);
}

TEST_CASE("diversity reproduces the golden JSONL byte for byte") {
  std::string args =
      "diversity -c mixed_groups.jsonl -t mixed_groups.trees "
      "--metrics bleu,chrf,kernel --format jsonl";
  auto golden = read_file(testutil::fixture_path("golden_diversity.jsonl"));
  auto r = run_fx(args);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == golden);
  auto r4 = run_fx(args + " --workers 3");
  CHECK(r4.out == golden);
}

TEST_CASE("diversity plot format emits label metric value rows") {
  auto r = run_fx(
      "diversity -c mixed_groups.jsonl --metrics bleu,chrf --format plot");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("mixed_groups\ti_bleu\t") != std::string::npos);
  CHECK(r.out.find("mixed_groups\ti_chrf\t") != std::string::npos);
  auto relabeled = run_fx(
      "diversity -c mixed_groups.jsonl --metrics bleu --format plot "
      "--label run1");
  CHECK(relabeled.out.find("run1\ti_bleu\t") != std::string::npos);
}

TEST_CASE("diversity sampling is seeded and deterministic") {
  std::string args =
      "diversity -c mixed_groups.jsonl --metrics bleu --sample 10 --seed 7";
  auto a = run_fx(args);
  auto b = run_fx(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  auto c = run_fx(
      "diversity -c mixed_groups.jsonl --metrics bleu --sample 10 --seed 8");
  CHECK(c.out != a.out);
}

TEST_CASE("kernel-only scoring on unusable trees is a validation error") {
  std::string trees = testutil::temp_path("all_bad.trees");
  std::string content;
  for (int i = 0; i < 120; ++i) content += "((\n";
  testutil::write_text(trees, content);
  auto r = run_fx("diversity -c mixed_groups.jsonl -t " + trees +
                  " --metrics kernel");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("validation") != std::string::npos);
}

TEST_CASE("stats reproduces the golden TSV and wc parity") {
  auto golden = read_file(testutil::fixture_path("golden_stats.tsv"));
  auto r = run_fx("stats -i wc_fixture.txt");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == golden);
  CHECK(r.out.find("words\t28") != std::string::npos);
}

TEST_CASE("stats reports neologisms against a reference vocabulary") {
  std::string ref = testutil::temp_path("ref_vocab.txt");
  testutil::write_text(ref, "one two three\n");
  auto r = run_fx("stats -i wc_fixture.txt --ref-vocab " + ref);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("neologisms\t") != std::string::npos);

  // all words known -> zero neologisms
  auto self = run_fx("stats -i wc_fixture.txt --ref-vocab wc_fixture.txt");
  CHECK(self.out.find("neologisms\t0") != std::string::npos);
}

TEST_CASE("stats on an empty file reports zeros") {
  std::string empty = testutil::temp_path("empty.txt");
  testutil::write_text(empty, "");
  auto r = run_cli("stats -i " + empty);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("words\t0") != std::string::npos);
  CHECK(r.out.find("lines\t0") != std::string::npos);
}

TEST_CASE("train-decode-score pipeline holds together") {
  // reuse a slice of the bundled corpus as training text
  auto corpus = read_lines(testutil::data_path("corpus10k.txt"));
  std::string train_path = testutil::temp_path("mini_corpus.txt");
  std::string text;
  for (std::size_t i = 0; i < 200; ++i) text += corpus[i] + "\n";
  testutil::write_text(train_path, text);

  std::string model_path = testutil::temp_path("mini_model.json");
  auto t = run_cli("train-lm -i " + train_path + " --order 2 --alpha 0.05 -o " +
                   model_path);
  REQUIRE(t.exit_code == 0);

  std::string gen_path = testutil::temp_path("mini_gen.jsonl");
  std::string decode_args = "decode -m " + model_path +
                            " --count 8 --strategy nucleus -k 3 --seed 11 -o " +
                            gen_path;
  auto d = run_cli(decode_args);
  REQUIRE(d.exit_code == 0);
  auto first = read_file(gen_path);
  CHECK(first.find("\"candidates\"") != std::string::npos);

  // byte-identical rerun, also under a different worker count
  auto d2 = run_cli(decode_args + " --workers 2");
  REQUIRE(d2.exit_code == 0);
  CHECK(read_file(gen_path) == first);

  auto s = run_cli("diversity -c " + gen_path + " --metrics bleu,chrf");
  REQUIRE(s.exit_code == 0);
  CHECK(s.out.find("# aggregate") != std::string::npos);
}

TEST_CASE("decode validates its prompt source flags") {
  std::string model_path = testutil::temp_path("mini_model.json");
  auto both = run_cli("decode -m " + model_path +
                      " --prompts x.txt --count 5 -o /tmp/x.jsonl");
  CHECK(both.exit_code == 1);
  auto neither = run_cli("decode -m " + model_path + " -o /tmp/x.jsonl");
  CHECK(neither.exit_code == 1);
}

TEST_CASE("group writes aligned finetuning sets and a manifest") {
  std::string dir = testutil::temp_path("groupout");
  std::string src = testutil::temp_path("g.src");
  std::string tgt = testutil::temp_path("g.tgt");
  std::string trees = testutil::temp_path("g.trees");
  testutil::write_text(src, "s0\ns1\ns2\ns3\ns4\ns5\n");
  testutil::write_text(tgt, "t0\nt1\nt2\nt3\nt4\nt5\n");
  testutil::write_text(trees,
                       "(S (NP (NN a)) (VP (VB b)))\n"
                       "(S (VP (VB b)))\n"
                       "(S (NP (NN a)) (VP (VB b)))\n"
                       "(S (VP (VB b)))\n"
                       "(S (NP (NN a)) (VP (VB b)))\n"
                       "(S (NP (NN a)) (VP (VB b)))\n");
  auto r = run_cli("group --source " + src + " --target " + tgt + " --trees " +
                   trees + " --num-sets 2 --outdir " + dir);
  REQUIRE(r.exit_code == 0);

  auto set1 = read_file(dir + "/set1.src");
  CHECK(set1 == "s0\ns2\ns4\ns5\n");
  auto set1t = read_file(dir + "/set1.tgt");
  CHECK(set1t == "t0\nt2\nt4\nt5\n");
  auto set2 = read_file(dir + "/set2.src");
  CHECK(set2 == "s1\ns3\n");
  auto manifest = read_file(dir + "/manifest.json");
  CHECK(manifest.find("\"S -> NP VP\"") != std::string::npos);
  CHECK(manifest.find("\"total_lines\":6") != std::string::npos);

  // ragged inputs are rejected
  testutil::write_text(src, "s0\ns1\n");
  auto bad = run_cli("group --source " + src + " --target " + tgt +
                     " --trees " + trees + " --num-sets 2 --outdir " + dir);
  CHECK(bad.exit_code == 1);
}

TEST_CASE("sighist tabulates signatures across tree files") {
  auto r = run_fx("sighist mixed_groups.trees --top-n 3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("S -> NP VP .") != std::string::npos);
  CHECK(r.out.find("# unparsed") != std::string::npos);
}

TEST_SUITE_END();
