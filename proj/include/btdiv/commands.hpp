#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btdiv/decoders.hpp"
#include "btdiv/formats.hpp"
#include "btdiv/lexdiv.hpp"
#include "btdiv/ngram_model.hpp"
#include "btdiv/synkernel.hpp"

namespace btdiv::commands {

// Report format shared by the scoring/stat commands.
enum class ReportFormat { kTsv, kJsonl, kPlot };

ReportFormat parse_report_format(std::string_view name);

struct DiversityOptions {
  std::string candidates_path;
  std::string trees_path;  // required iff kernel metric enabled
  formats::TreeLayout tree_layout = formats::TreeLayout::kFlat;

  bool metric_bleu = true;
  bool metric_chrf = true;
  bool metric_kernel = false;

  lexdiv::BleuConfig bleu;
  lexdiv::ChrfConfig chrf;
  synkernel::KernelConfig kernel;

  std::optional<std::size_t> sample;  // group subsample size
  std::uint64_t seed = 0;

  ReportFormat format = ReportFormat::kTsv;
  std::string label;        // plot dataset label; defaults to file stem
  std::string output_path;  // empty = stdout
  int workers = 1;
};

// Parses --metrics values like "bleu,chrf,kernel" into the option flags.
void set_metrics(DiversityOptions& opt, std::string_view spec);

void cmd_diversity(const DiversityOptions& opt);

struct StatsOptions {
  std::string text_path;
  std::string ref_vocab_path;  // optional; enables the neologism report
  std::size_t sample_cap = 20;
  ReportFormat format = ReportFormat::kTsv;
  std::string output_path;  // empty = stdout
};

void cmd_stats(const StatsOptions& opt);

struct DecodeOptions {
  std::string model_path;
  std::string prompts_path;  // one prompt per line; blank = unconditioned
  std::size_t count = 0;     // alternative: n unconditioned groups
  decoders::GenerationSpec spec;
  std::string output_path;
};

void cmd_decode(const DecodeOptions& opt);

struct TrainLmOptions {
  std::string corpus_path;
  ngram_model::NGramModel::Params params;
  std::string output_path;
};

void cmd_train_lm(const TrainLmOptions& opt);

struct GroupOptions {
  std::string source_path;
  std::string target_path;
  std::string trees_path;  // line-aligned with target; blank = no parse
  std::size_t num_sets = 3;
  std::size_t min_size = 0;
  bool merge_next_until_min = false;
  std::string outdir;
};

void cmd_group(const GroupOptions& opt);

struct SighistOptions {
  std::vector<std::string> tree_paths;  // ranking follows the first file
  std::size_t top_n = 15;
  std::string output_path;  // empty = stdout
};

void cmd_sighist(const SighistOptions& opt);

}  // namespace btdiv::commands
