// btdiv — diversity metrics, syntactic grouping and a small decoding lab
// for candidate-translation sets.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "btdiv/commands.hpp"
#include "btdiv/util.hpp"

namespace {

using namespace btdiv;

int run(int argc, char** argv) {
  CLI::App app{"diversity metrics and decoding lab for candidate sets"};
  app.set_version_flag("--version", std::string("btdiv v") + kToolVersion);
  app.require_subcommand(1);

  // ---- diversity
  commands::DiversityOptions dopt;
  std::string d_metrics = "bleu,chrf";
  std::string d_layout = "flat";
  std::string d_format = "tsv";
  long long d_sample = -1;
  auto* div = app.add_subcommand(
      "diversity", "score candidate sets for lexical/syntactic diversity");
  div->add_option("-c,--candidates", dopt.candidates_path,
                  "candidate groups (JSONL)")
      ->required();
  div->add_option("-t,--trees", dopt.trees_path,
                  "parse trees for the candidates");
  div->add_option("--tree-layout", d_layout, "flat|blocks (default flat)");
  div->add_option("--metrics", d_metrics,
                  "comma list of bleu,chrf,kernel (default bleu,chrf)");
  div->add_option("--bleu-order", dopt.bleu.max_order, "BLEU n-gram order");
  div->add_flag("--bleu-eff-order", dopt.bleu.effective_order,
                "divide by highest non-empty order instead of max order");
  div->add_option("--chrf-order", dopt.chrf.char_order, "chrF char order");
  div->add_option("--chrf-word-order", dopt.chrf.word_order,
                  "chrF word order (0 for plain chrF)");
  div->add_option("--chrf-beta", dopt.chrf.beta, "chrF recall weight");
  div->add_option("--lambda", dopt.kernel.lambda, "tree kernel decay");
  div->add_option("--sample", d_sample, "score a reservoir sample of groups");
  div->add_option("--seed", dopt.seed, "sampling seed");
  div->add_option("--format", d_format, "tsv|jsonl|plot");
  div->add_option("--label", dopt.label, "dataset label for plot output");
  div->add_option("-o,--output", dopt.output_path, "output file (default stdout)");
  div->add_option("--workers", dopt.workers, "worker threads");

  // ---- stats
  commands::StatsOptions sopt;
  std::string s_format = "tsv";
  auto* stats = app.add_subcommand("stats", "corpus summary statistics");
  stats->add_option("-i,--input", sopt.text_path, "text file")->required();
  stats->add_option("--ref-vocab", sopt.ref_vocab_path,
                    "reference corpus; report words not in its vocabulary");
  stats->add_option("--neologism-sample", sopt.sample_cap,
                    "max sampled unknown words to list");
  stats->add_option("--format", s_format, "tsv|jsonl");
  stats->add_option("-o,--output", sopt.output_path,
                    "output file (default stdout)");

  // ---- decode
  commands::DecodeOptions copt;
  std::string c_strategy = "nucleus";
  auto* dec = app.add_subcommand(
      "decode", "generate candidate groups from a sequence model");
  dec->add_option("-m,--model", copt.model_path, "model file (JSON)")
      ->required();
  dec->add_option("--prompts", copt.prompts_path,
                  "prompt file, one per line (blank = unconditioned)");
  dec->add_option("-n,--count", copt.count,
                  "number of unconditioned groups instead of --prompts");
  dec->add_option("--strategy", c_strategy, "beam|sampling|nucleus");
  dec->add_option("-k,--candidates", copt.spec.num_candidates,
                  "candidates per group");
  dec->add_option("--beam-size", copt.spec.decode.beam_size, "beam width");
  dec->add_option("--max-len", copt.spec.decode.max_len,
                  "max generated tokens");
  dec->add_option("-p,--nucleus-p", copt.spec.decode.nucleus_p,
                  "nucleus mass");
  dec->add_option("--seed", copt.spec.seed, "sampling seed");
  dec->add_option("--workers", copt.spec.workers, "worker threads");
  dec->add_option("-o,--output", copt.output_path, "output JSONL")
      ->required();

  // ---- train-lm
  commands::TrainLmOptions topt;
  auto* train = app.add_subcommand("train-lm",
                                   "fit the add-alpha n-gram model");
  train->add_option("-i,--corpus", topt.corpus_path, "training text")
      ->required();
  train->add_option("--order", topt.params.order, "n-gram order");
  train->add_option("--alpha", topt.params.alpha, "additive smoothing mass");
  train->add_option("-o,--output", topt.output_path, "model file")
      ->required();

  // ---- group
  commands::GroupOptions gopt;
  auto* grp = app.add_subcommand(
      "group", "build fine-tuning sets from first-split signatures");
  grp->add_option("--source", gopt.source_path, "source-side lines")
      ->required();
  grp->add_option("--target", gopt.target_path, "target-side lines")
      ->required();
  grp->add_option("--trees", gopt.trees_path,
                  "target parses, line-aligned (blank = no parse)")
      ->required();
  grp->add_option("--num-sets", gopt.num_sets, "sets to build");
  grp->add_option("--min-size", gopt.min_size, "minimum lines per set");
  grp->add_flag("--merge", gopt.merge_next_until_min,
                "fold next-largest buckets into the last set until min-size");
  grp->add_option("--outdir", gopt.outdir, "output directory")->required();

  // ---- sighist
  commands::SighistOptions hopt;
  auto* hist = app.add_subcommand(
      "sighist", "first-split signature histogram of tree files");
  hist->add_option("trees", hopt.tree_paths, "tree files (ranked by first)")
      ->required();
  hist->add_option("--top-n", hopt.top_n, "rows to keep");
  hist->add_option("-o,--output", hopt.output_path,
                   "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "{\"error\":\"validation\",\"message\":\""
              << json_escape(e.what()) << "\"}\n";
    return 1;
  }

  if (div->parsed()) {
    commands::set_metrics(dopt, d_metrics);
    dopt.tree_layout = formats::parse_tree_layout(d_layout);
    dopt.format = commands::parse_report_format(d_format);
    if (d_sample >= 0) {
      if (d_sample == 0) throw ValidationError("--sample must be positive");
      dopt.sample = static_cast<std::size_t>(d_sample);
    }
    commands::cmd_diversity(dopt);
  } else if (stats->parsed()) {
    sopt.format = commands::parse_report_format(s_format);
    commands::cmd_stats(sopt);
  } else if (dec->parsed()) {
    copt.spec.strategy = decoders::parse_strategy(c_strategy);
    commands::cmd_decode(copt);
  } else if (train->parsed()) {
    commands::cmd_train_lm(topt);
  } else if (grp->parsed()) {
    commands::cmd_group(gopt);
  } else if (hist->parsed()) {
    commands::cmd_sighist(hopt);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const btdiv::ValidationError& e) {
    std::cerr << "{\"error\":\"validation\",\"message\":\""
              << btdiv::json_escape(e.what()) << "\"}\n";
    return 1;
  } catch (const btdiv::treebank::TreeParseError& e) {
    std::cerr << "{\"error\":\"parse\",\"message\":\""
              << btdiv::json_escape(e.what()) << "\"}\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    // Out-of-range flag values surface here from the library contracts.
    std::cerr << "{\"error\":\"validation\",\"message\":\""
              << btdiv::json_escape(e.what()) << "\"}\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"internal\",\"message\":\""
              << btdiv::json_escape(e.what()) << "\"}\n";
    return 2;
  }
}
