#include "btdiv/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>

#include "btdiv/corpuslab.hpp"
#include "btdiv/grouper.hpp"
#include "btdiv/util.hpp"

namespace btdiv::commands {

namespace {

namespace fs = std::filesystem;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

double round6(double v) { return std::stod(fmt6(v)); }

std::string fmtg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct InputRecord {
  std::string role;
  std::string path;
  std::uint64_t digest = 0;
};

// Shared report preamble: tool line, canonical config echo with its hash,
// one line per input with an FNV-1a-64 digest.  No timestamps, no absolute
// paths beyond what the user passed — rerunning a command must reproduce
// the bytes exactly.
struct ReportHeader {
  std::string command;
  std::string config_line;
  std::vector<InputRecord> inputs;

  std::string config_hash() const { return hex64(fnv1a64(config_line)); }

  std::string tsv() const {
    std::string out = "# btdiv " + command + " v" + kToolVersion + "\n";
    out += "# config: " + config_line + " config_hash=" + config_hash() + "\n";
    for (const InputRecord& in : inputs)
      out += "# input: " + in.role + " path=" + in.path +
             " fnv1a64=" + hex64(in.digest) + "\n";
    return out;
  }

  std::string json_fields() const {
    std::string out = "\"tool\":\"btdiv " + command + "\",\"version\":\"";
    out += kToolVersion;
    out += "\",\"config\":\"" + json_escape(config_line) + "\",";
    out += "\"config_hash\":\"" + config_hash() + "\",\"inputs\":[";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (i) out += ',';
      out += "{\"role\":\"" + json_escape(inputs[i].role) + "\",\"path\":\"" +
             json_escape(inputs[i].path) + "\",\"fnv1a64\":\"" +
             hex64(inputs[i].digest) + "\"}";
    }
    out += ']';
    return out;
  }
};

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
  } else {
    write_file_atomic(output_path, content);
  }
}

// Mean of the values exactly as they appear in the report, so the
// aggregate can be recomputed from the emitted rows alone.
double aggregate_of(const std::vector<double>& rounded) {
  return std::accumulate(rounded.begin(), rounded.end(), 0.0) /
         static_cast<double>(rounded.size());
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "tsv") return ReportFormat::kTsv;
  if (name == "jsonl") return ReportFormat::kJsonl;
  if (name == "plot") return ReportFormat::kPlot;
  throw ValidationError("unknown report format '" + std::string(name) +
                        "' (expected tsv, jsonl or plot)");
}

void set_metrics(DiversityOptions& opt, std::string_view spec) {
  opt.metric_bleu = opt.metric_chrf = opt.metric_kernel = false;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string_view name = spec.substr(
        start, comma == std::string_view::npos ? spec.size() - start
                                               : comma - start);
    if (name == "bleu") {
      opt.metric_bleu = true;
    } else if (name == "chrf") {
      opt.metric_chrf = true;
    } else if (name == "kernel") {
      opt.metric_kernel = true;
    } else {
      throw ValidationError("unknown metric '" + std::string(name) +
                            "' (expected bleu, chrf or kernel)");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!opt.metric_bleu && !opt.metric_chrf && !opt.metric_kernel)
    throw ValidationError("--metrics selected nothing");
}

void cmd_diversity(const DiversityOptions& opt) {
  if (opt.metric_kernel && opt.trees_path.empty())
    throw ValidationError("kernel metric requires --trees");
  if (opt.workers < 1) throw ValidationError("--workers must be >= 1");

  formats::CandidateFile cf = formats::read_candidate_file(opt.candidates_path);

  formats::GroupTrees trees;
  if (opt.metric_kernel)
    trees = formats::read_group_trees(opt.trees_path, opt.tree_layout,
                                      cf.groups.size(), cf.k);

  // Subsample after validation so tree alignment is checked against the
  // full file.
  std::vector<std::size_t> picked(cf.groups.size());
  std::iota(picked.begin(), picked.end(), 0);
  if (opt.sample) {
    std::vector<std::string> ids;
    ids.reserve(cf.groups.size());
    for (const CandidateGroup& g : cf.groups) ids.push_back(g.id);
    picked = corpuslab::sample_indices(ids, {*opt.sample, opt.seed});
  } else {
    std::sort(picked.begin(), picked.end(),
              [&](std::size_t a, std::size_t b) {
                return cf.groups[a].id < cf.groups[b].id;
              });
  }
  std::vector<CandidateGroup> groups;
  groups.reserve(picked.size());
  for (std::size_t i : picked) groups.push_back(cf.groups[i]);

  struct MetricColumn {
    std::string name;
    std::map<std::string, double> by_id;
    std::size_t skipped = 0;
    std::vector<std::string> errors;
  };
  std::vector<MetricColumn> columns;

  auto run_lexdiv = [&](const std::string& name,
                        const lexdiv::SentenceScorer& scorer) {
    lexdiv::DatasetScore score =
        lexdiv::dataset_i_score(groups, scorer, opt.workers);
    MetricColumn col;
    col.name = name;
    for (const lexdiv::GroupScore& g : score.per_group)
      col.by_id.emplace(g.id, g.value);
    col.skipped = score.failed;
    col.errors = score.errors;
    columns.push_back(std::move(col));
  };

  if (opt.metric_bleu)
    run_lexdiv("i_bleu", [&](std::string_view h, std::string_view r) {
      return lexdiv::sentence_bleu(h, r, opt.bleu);
    });
  if (opt.metric_chrf)
    run_lexdiv("i_chrf", [&](std::string_view h, std::string_view r) {
      return lexdiv::sentence_chrf(h, r, opt.chrf);
    });

  if (opt.metric_kernel) {
    MetricColumn col;
    col.name = "kernel_diff";
    std::vector<std::optional<double>> values(picked.size());
    std::vector<std::string> messages(picked.size());
    parallel_for(picked.size(), opt.workers, [&](std::size_t rank) {
      const auto& slot = trees.trees[picked[rank]];
      // A group with any unusable parse is skipped whole; mixing parsed
      // and unparsed members would silently change what the mean is over.
      std::vector<treebank::ParseTree> parsed;
      for (const auto& t : slot)
        if (t) parsed.push_back(*t);
      if (parsed.size() != slot.size()) {
        messages[rank] = groups[rank].id + ": unparsed candidate tree";
        return;
      }
      try {
        values[rank] =
            synkernel::kernel_difference(parsed, opt.kernel).difference;
      } catch (const std::exception& e) {
        messages[rank] = groups[rank].id + ": " + e.what();
      }
    });
    for (std::size_t rank = 0; rank < picked.size(); ++rank) {
      if (values[rank]) {
        col.by_id.emplace(groups[rank].id, *values[rank]);
      } else {
        ++col.skipped;
        if (col.errors.size() < 10) col.errors.push_back(messages[rank]);
      }
    }
    if (col.by_id.empty())
      throw ValidationError("kernel_diff: no group had a full set of parses");
    columns.push_back(std::move(col));
  }

  // Canonical config echo (workers deliberately excluded: outputs must not
  // depend on scheduling).
  std::string config = "metrics=";
  {
    bool first = true;
    auto add = [&](const char* name) {
      if (!first) config += ',';
      first = false;
      config += name;
    };
    if (opt.metric_bleu) add("bleu");
    if (opt.metric_chrf) add("chrf");
    if (opt.metric_kernel) add("kernel");
  }
  if (opt.metric_bleu)
    config += " bleu_max_order=" + std::to_string(opt.bleu.max_order) +
              std::string(" bleu_eff_order=") +
              (opt.bleu.effective_order ? "yes" : "no");
  if (opt.metric_chrf)
    config += " chrf_char_order=" + std::to_string(opt.chrf.char_order) +
              " chrf_word_order=" + std::to_string(opt.chrf.word_order) +
              " chrf_beta=" + fmtg(opt.chrf.beta);
  if (opt.metric_kernel)
    config += " kernel_lambda=" + fmtg(opt.kernel.lambda) +
              std::string(" kernel_mask=") +
              (opt.kernel.mask_terminals ? "yes" : "no");
  config += " sample=" +
            (opt.sample ? std::to_string(*opt.sample) : std::string("none"));
  config += " seed=" + std::to_string(opt.seed);

  ReportHeader header;
  header.command = "diversity";
  header.config_line = config;
  header.inputs.push_back(
      {"candidates", opt.candidates_path, file_digest(opt.candidates_path)});
  if (opt.metric_kernel)
    header.inputs.push_back(
        {"trees", opt.trees_path, file_digest(opt.trees_path)});

  // Sorted group ids define row order; a cell is NA when that metric
  // skipped the group.
  std::vector<std::string> row_ids;
  row_ids.reserve(groups.size());
  for (const CandidateGroup& g : groups) row_ids.push_back(g.id);

  struct Aggregate {
    std::string name;
    double value = 0.0;
    std::size_t scored = 0;
    std::size_t skipped = 0;
  };
  std::vector<Aggregate> aggs;
  for (const MetricColumn& col : columns) {
    std::vector<double> rounded;
    rounded.reserve(col.by_id.size());
    for (const auto& [id, v] : col.by_id) rounded.push_back(round6(v));
    aggs.push_back(
        {col.name, aggregate_of(rounded), col.by_id.size(), col.skipped});
  }

  std::string out;
  if (opt.format == ReportFormat::kTsv) {
    out = header.tsv();
    out += "group_id";
    for (const MetricColumn& col : columns) out += "\t" + col.name;
    out += '\n';
    for (const std::string& id : row_ids) {
      out += id;
      for (const MetricColumn& col : columns) {
        auto it = col.by_id.find(id);
        out += '\t';
        out += it == col.by_id.end() ? "NA" : fmt6(it->second);
      }
      out += '\n';
    }
    out += "# aggregate";
    for (const Aggregate& a : aggs) out += "\t" + a.name + "=" + fmt6(a.value);
    out += "\n# groups\ttotal=" + std::to_string(groups.size());
    for (const Aggregate& a : aggs)
      out += "\tscored_" + a.name + "=" + std::to_string(a.scored) +
             "\tskipped_" + a.name + "=" + std::to_string(a.skipped);
    out += '\n';
  } else if (opt.format == ReportFormat::kJsonl) {
    for (const std::string& id : row_ids) {
      out += "{\"type\":\"group\",\"id\":\"" + json_escape(id) + "\"";
      for (const MetricColumn& col : columns) {
        auto it = col.by_id.find(id);
        out += ",\"" + col.name + "\":";
        out += it == col.by_id.end() ? "null" : fmt6(it->second);
      }
      out += "}\n";
    }
    out += "{\"type\":\"summary\"," + header.json_fields();
    out += ",\"groups\":" + std::to_string(groups.size());
    out += ",\"aggregate\":{";
    for (std::size_t i = 0; i < aggs.size(); ++i) {
      if (i) out += ',';
      out += "\"" + aggs[i].name + "\":" + fmt6(aggs[i].value);
    }
    out += "},\"scored\":{";
    for (std::size_t i = 0; i < aggs.size(); ++i) {
      if (i) out += ',';
      out += "\"" + aggs[i].name + "\":" + std::to_string(aggs[i].scored);
    }
    out += "},\"skipped\":{";
    for (std::size_t i = 0; i < aggs.size(); ++i) {
      if (i) out += ',';
      out += "\"" + aggs[i].name + "\":" + std::to_string(aggs[i].skipped);
    }
    out += "}}\n";
  } else {
    std::string label = opt.label;
    if (label.empty())
      label = fs::path(opt.candidates_path).stem().string();
    out = header.tsv();
    out += "dataset\tmetric\tvalue\n";
    for (const Aggregate& a : aggs)
      out += label + "\t" + a.name + "\t" + fmt6(a.value) + "\n";
  }

  emit(opt.output_path, out);

  for (const MetricColumn& col : columns)
    for (const std::string& e : col.errors)
      std::cerr << "warning: " << col.name << " skipped " << e << "\n";
}

void cmd_stats(const StatsOptions& opt) {
  if (opt.format == ReportFormat::kPlot)
    throw ValidationError("stats does not support the plot format");

  std::vector<std::string> lines = read_lines(opt.text_path);
  corpuslab::CorpusAccumulator acc;
  for (const std::string& line : lines) acc.add_line(line);
  corpuslab::CorpusStats stats = acc.stats();

  bool with_ref = !opt.ref_vocab_path.empty();
  corpuslab::NeologismReport neo;
  if (with_ref) {
    corpuslab::CorpusAccumulator ref;
    for (const std::string& line : read_lines(opt.ref_vocab_path))
      ref.add_line(line);
    neo = corpuslab::find_neologisms(lines, ref.vocab(), opt.sample_cap);
  }

  ReportHeader header;
  header.command = "stats";
  header.config_line =
      "sample_cap=" + std::to_string(opt.sample_cap);
  header.inputs.push_back({"text", opt.text_path, file_digest(opt.text_path)});
  if (with_ref)
    header.inputs.push_back({"ref_vocab", opt.ref_vocab_path,
                             file_digest(opt.ref_vocab_path)});

  std::string out;
  if (opt.format == ReportFormat::kTsv) {
    out = header.tsv();
    out += "lines\t" + std::to_string(stats.lines) + "\n";
    out += "words\t" + std::to_string(stats.words) + "\n";
    out += "vocab_size\t" + std::to_string(stats.vocab_size) + "\n";
    out += "mean_sentence_length\t" + fmt6(stats.mean_sentence_length) + "\n";
    out += "mean_word_length\t" + fmt6(stats.mean_word_length) + "\n";
    if (with_ref) {
      out += "neologisms\t" + std::to_string(neo.count) + "\n";
      out += "neologism_sample\t";
      for (std::size_t i = 0; i < neo.sample.size(); ++i) {
        if (i) out += ' ';
        out += neo.sample[i];
      }
      out += '\n';
    }
  } else {
    out = "{\"type\":\"stats\"," + header.json_fields();
    out += ",\"lines\":" + std::to_string(stats.lines);
    out += ",\"words\":" + std::to_string(stats.words);
    out += ",\"vocab_size\":" + std::to_string(stats.vocab_size);
    out += ",\"mean_sentence_length\":" + fmt6(stats.mean_sentence_length);
    out += ",\"mean_word_length\":" + fmt6(stats.mean_word_length);
    if (with_ref) {
      out += ",\"neologisms\":" + std::to_string(neo.count);
      out += ",\"neologism_sample\":[";
      for (std::size_t i = 0; i < neo.sample.size(); ++i) {
        if (i) out += ',';
        out += "\"" + json_escape(neo.sample[i]) + "\"";
      }
      out += ']';
    }
    out += "}\n";
  }
  emit(opt.output_path, out);
}

void cmd_decode(const DecodeOptions& opt) {
  if (opt.output_path.empty())
    throw ValidationError("decode requires --output");
  if (opt.prompts_path.empty() == (opt.count == 0))
    throw ValidationError("decode needs exactly one of --prompts / --count");

  ngram_model::NGramModel model = ngram_model::NGramModel::load(opt.model_path);

  std::vector<std::string> prompts;
  if (!opt.prompts_path.empty()) {
    prompts = read_lines(opt.prompts_path);
    if (prompts.empty())
      throw ValidationError("prompts file is empty: " + opt.prompts_path);
  } else {
    prompts.assign(opt.count, std::string());
  }

  decoders::GenerationResult result =
      decoders::generate_candidates(model, prompts, opt.spec);
  formats::write_candidate_file(opt.output_path, result.groups);

  if (result.incomplete)
    std::cerr << "warning: " << result.incomplete
              << " hypotheses hit max_len before EOS\n";
  if (result.failed) {
    std::cerr << "warning: " << result.failed << " groups failed\n";
    for (const std::string& e : result.errors)
      std::cerr << "warning: " << e << "\n";
  }
}

void cmd_train_lm(const TrainLmOptions& opt) {
  if (opt.output_path.empty())
    throw ValidationError("train-lm requires --output");
  std::vector<std::string> lines = read_lines(opt.corpus_path);
  ngram_model::NGramModel model = ngram_model::NGramModel::train(
      lines, opt.params);
  model.save(opt.output_path);
  std::cerr << "trained order=" << opt.params.order
            << " alpha=" << fmtg(opt.params.alpha)
            << " vocab=" << model.vocab().size()
            << " contexts=" << model.context_count() << "\n";
}

void cmd_group(const GroupOptions& opt) {
  if (opt.outdir.empty()) throw ValidationError("group requires --outdir");

  std::vector<std::string> source = read_lines(opt.source_path);
  std::vector<std::string> target = read_lines(opt.target_path);
  treebank::TreeFile trees = treebank::read_tree_file(opt.trees_path);
  if (source.size() != target.size() ||
      source.size() != trees.trees.size()) {
    throw ValidationError(
        "line counts differ: source=" + std::to_string(source.size()) +
        " target=" + std::to_string(target.size()) +
        " trees=" + std::to_string(trees.trees.size()));
  }

  grouper::Partition partition = grouper::partition_by_signature(trees.trees);
  grouper::FinetuneSpec spec;
  spec.num_sets = opt.num_sets;
  spec.min_size = opt.min_size;
  spec.merge_next_until_min = opt.merge_next_until_min;
  std::vector<grouper::FinetuneSet> sets =
      grouper::build_finetune_sets(partition, spec);

  ReportHeader header;
  header.command = "group";
  header.config_line =
      "num_sets=" + std::to_string(opt.num_sets) +
      " min_size=" + std::to_string(opt.min_size) +
      std::string(" merge=") + (opt.merge_next_until_min ? "yes" : "no");
  header.inputs.push_back(
      {"source", opt.source_path, file_digest(opt.source_path)});
  header.inputs.push_back(
      {"target", opt.target_path, file_digest(opt.target_path)});
  header.inputs.push_back(
      {"trees", opt.trees_path, file_digest(opt.trees_path)});

  fs::create_directories(opt.outdir);
  std::string manifest = "{" + header.json_fields();
  manifest += ",\"total_lines\":" + std::to_string(partition.total);
  manifest += ",\"unparsed\":" + std::to_string(partition.unparsed);
  manifest += ",\"sets\":[";
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::vector<std::size_t> lines = sets[s].lines;
    std::sort(lines.begin(), lines.end());
    std::string src_name = "set" + std::to_string(s + 1) + ".src";
    std::string tgt_name = "set" + std::to_string(s + 1) + ".tgt";
    std::string src_out, tgt_out;
    for (std::size_t i : lines) {
      src_out += source[i];
      src_out += '\n';
      tgt_out += target[i];
      tgt_out += '\n';
    }
    write_file_atomic((fs::path(opt.outdir) / src_name).string(), src_out);
    write_file_atomic((fs::path(opt.outdir) / tgt_name).string(), tgt_out);

    if (s) manifest += ',';
    manifest += "{\"index\":" + std::to_string(s + 1) + ",\"signatures\":[";
    for (std::size_t i = 0; i < sets[s].signatures.size(); ++i) {
      if (i) manifest += ',';
      manifest += "\"" + json_escape(sets[s].signatures[i]) + "\"";
    }
    manifest += "],\"size\":" + std::to_string(lines.size());
    manifest += std::string(",\"below_min\":") +
                (sets[s].below_min ? "true" : "false");
    manifest += ",\"source\":\"" + json_escape(src_name) + "\"";
    manifest += ",\"target\":\"" + json_escape(tgt_name) + "\"}";
  }
  manifest += "]}\n";
  write_file_atomic((fs::path(opt.outdir) / "manifest.json").string(),
                    manifest);
}

void cmd_sighist(const SighistOptions& opt) {
  if (opt.tree_paths.empty())
    throw ValidationError("sighist requires at least one tree file");

  struct FileHist {
    grouper::Partition partition;
    std::map<std::string, std::size_t> counts;
  };
  std::vector<FileHist> files;
  files.reserve(opt.tree_paths.size());
  for (const std::string& path : opt.tree_paths) {
    treebank::TreeFile tf = treebank::read_tree_file(path);
    FileHist fh;
    fh.partition = grouper::partition_by_signature(tf.trees);
    for (const grouper::SignatureBucket& b : fh.partition.buckets)
      fh.counts.emplace(b.signature, b.lines.size());
    files.push_back(std::move(fh));
  }

  // Row order comes from the first file's histogram.
  std::vector<grouper::HistogramEntry> ranked =
      grouper::signature_histogram(files[0].partition, opt.top_n);

  ReportHeader header;
  header.command = "sighist";
  header.config_line = "top_n=" + std::to_string(opt.top_n);
  for (const std::string& path : opt.tree_paths)
    header.inputs.push_back({"trees", path, file_digest(path)});

  std::string out = header.tsv();
  out += "signature";
  for (std::size_t f = 0; f < files.size(); ++f)
    out += "\tfile" + std::to_string(f + 1);
  out += '\n';
  for (const grouper::HistogramEntry& row : ranked) {
    out += row.signature;
    for (const FileHist& fh : files) {
      auto it = fh.counts.find(row.signature);
      out += '\t';
      out += std::to_string(it == fh.counts.end() ? 0 : it->second);
    }
    out += '\n';
  }
  out += "# unparsed";
  for (std::size_t f = 0; f < files.size(); ++f)
    out += "\tfile" + std::to_string(f + 1) + "=" +
           std::to_string(files[f].partition.unparsed);
  out += '\n';
  emit(opt.output_path, out);
}

}  // namespace btdiv::commands
