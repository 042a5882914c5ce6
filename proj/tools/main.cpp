// convograph: conversation-graph metrics, community detection and
// Naive Bayes sentiment labeling for brand comparison reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "app/run_config.hpp"
#include "convograph/error.hpp"

namespace {

using namespace convograph;
using namespace convograph::app;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct Globals {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<std::string> since;
  std::optional<std::string> until;
};

struct SourceFlags {
  std::optional<std::string> brand;
  std::optional<std::string> records;
  bool no_mentions = false;
  bool no_replies = false;

  RecordSelection selection() const {
    RecordSelection sel;
    sel.brand = brand;
    if (records) sel.records = fs::path(*records);
    return sel;
  }
};

void add_source_flags(CLI::App* cmd, SourceFlags& flags) {
  cmd->add_option("--brand", flags.brand, "Brand name from the config's [brands] section");
  cmd->add_option("--records", flags.records, "Records file (.jsonl or .csv)");
  cmd->add_flag("--no-mentions", flags.no_mentions, "Do not turn mentions into edges");
  cmd->add_flag("--no-replies", flags.no_replies, "Do not turn replies into edges");
}

RunConfig resolve_config(const Globals& g, const SourceFlags* source) {
  RunConfig cfg = g.config ? load_run_config(*g.config) : RunConfig{};
  if (g.seed) cfg.seed = *g.seed;
  if (g.format) cfg.output_format = parse_output_format(*g.format);
  if (g.since) cfg.since = g.since;
  if (g.until) cfg.until = g.until;
  if (source != nullptr) {
    if (source->no_mentions) cfg.edge_policy.use_mentions = false;
    if (source->no_replies) cfg.edge_policy.use_replies = false;
  }
  cfg.validate();
  return cfg;
}

void emit(const Globals& g, const std::string& text) {
  if (!g.out) {
    std::cout << text;
    return;
  }
  std::ofstream out(*g.out, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + *g.out + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convograph: conversation networks, communities and sentiment for brand comparison"};
  app.require_subcommand(1);

  Globals globals;
  app.add_option("--config", globals.config, "INI run configuration");
  app.add_option("--seed", globals.seed, "Seed for community detection, splits and sampling");
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", globals.out, "Write output to PATH instead of stdout");
  app.add_option("--since", globals.since, "Keep records with created_at >= this timestamp");
  app.add_option("--until", globals.until, "Keep records with created_at < this timestamp");

  std::function<std::string()> action;

  // ingest validate
  auto* ingest = app.add_subcommand("ingest", "Record ingestion");
  ingest->require_subcommand(1);
  std::vector<std::string> validate_files;
  auto* validate = ingest->add_subcommand("validate", "Parse record files and report counts");
  validate->add_option("files", validate_files, "Record files (default: every configured brand)");
  validate->callback([&] {
    action = [&] {
      std::vector<fs::path> files(validate_files.begin(), validate_files.end());
      return cmd_ingest_validate(resolve_config(globals, nullptr), files);
    };
  });

  // graph metrics | export
  auto* graph = app.add_subcommand("graph", "Conversation graph");
  graph->require_subcommand(1);
  SourceFlags metrics_src;
  unsigned threads = 0;
  std::optional<std::size_t> exact_limit;
  auto* metrics = graph->add_subcommand("metrics", "Compute the network properties");
  add_source_flags(metrics, metrics_src);
  metrics->add_option("--threads", threads, "BFS worker threads (0 = all cores)");
  metrics->add_option("--exact-limit", exact_limit,
                      "Largest node count for exact all-pairs distances");
  metrics->callback([&] {
    action = [&] {
      RunConfig cfg = resolve_config(globals, &metrics_src);
      if (exact_limit) cfg.exact_metrics_node_limit = *exact_limit;
      return cmd_graph_metrics(cfg, metrics_src.selection(), threads);
    };
  });

  SourceFlags export_src;
  std::string export_as = "tsv";
  auto* exporter = graph->add_subcommand("export", "Write the edge list as TSV or DOT");
  add_source_flags(exporter, export_src);
  exporter->add_option("--as", export_as, "Edge list format")
      ->check(CLI::IsMember({"tsv", "dot"}));
  exporter->callback([&] {
    action = [&] {
      return cmd_graph_export(resolve_config(globals, &export_src), export_src.selection(),
                              export_as == "dot" ? EdgeListFormat::dot : EdgeListFormat::tsv);
    };
  });

  // community detect
  auto* community = app.add_subcommand("community", "Community structure");
  community->require_subcommand(1);
  SourceFlags detect_src;
  auto* detect = community->add_subcommand("detect", "Louvain partition and its modularity");
  add_source_flags(detect, detect_src);
  detect->callback([&] {
    action = [&] {
      return cmd_community_detect(resolve_config(globals, &detect_src), detect_src.selection());
    };
  });

  // sentiment train | eval | label
  auto* sentiment = app.add_subcommand("sentiment", "Naive Bayes sentiment");
  sentiment->require_subcommand(1);
  std::optional<std::string> labeled;
  std::string model_path;
  auto labeled_or_config = [&](const RunConfig& cfg, const SourceFlags& src) -> fs::path {
    if (labeled) return *labeled;
    if (src.brand && cfg.brand(*src.brand).labeled) return *cfg.brand(*src.brand).labeled;
    if (cfg.labeled) return *cfg.labeled;
    throw Error(ErrorKind::usage, "no labeled corpus: pass --labeled PATH or set run.labeled");
  };

  SourceFlags train_src;
  auto* train_cmd = sentiment->add_subcommand("train", "Train on a labeled CSV and save the model");
  train_cmd->add_option("--labeled", labeled, "Labeled CSV with text,label columns");
  train_cmd->add_option("--model", model_path, "Where to write the model JSON")->required();
  train_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve_config(globals, nullptr);
      return cmd_sentiment_train(cfg, labeled_or_config(cfg, train_src), model_path);
    };
  });

  SourceFlags eval_src;
  auto* eval_cmd = sentiment->add_subcommand(
      "eval", "Split, train, evaluate on held-out data and tally a record stream");
  eval_cmd->add_option("--labeled", labeled, "Labeled CSV with text,label columns");
  add_source_flags(eval_cmd, eval_src);
  eval_cmd->callback([&] {
    action = [&] {
      const RunConfig cfg = resolve_config(globals, &eval_src);
      return cmd_sentiment_eval(cfg, labeled_or_config(cfg, eval_src), eval_src.selection());
    };
  });

  SourceFlags label_src;
  auto* label_cmd = sentiment->add_subcommand("label", "Label records with a saved model");
  label_cmd->add_option("--model", model_path, "Model JSON from `sentiment train`")->required();
  add_source_flags(label_cmd, label_src);
  label_cmd->callback([&] {
    action = [&] {
      return cmd_sentiment_label(resolve_config(globals, &label_src), model_path,
                                 label_src.selection());
    };
  });

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Side-by-side brand report");
  compare_cmd->callback([&] {
    action = [&] {
      if (!globals.config) throw Error(ErrorKind::usage, "compare needs --config");
      return cmd_compare(resolve_config(globals, nullptr));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    emit(globals, action());
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "convograph: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "convograph: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
