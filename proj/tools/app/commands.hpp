#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "convograph/classify.hpp"
#include "convograph/community.hpp"
#include "convograph/eval.hpp"
#include "convograph/graph.hpp"
#include "convograph/ingest.hpp"
#include "convograph/metrics.hpp"
#include "run_config.hpp"

namespace convograph::app {

/// Records come from a configured brand or straight from a file.
struct RecordSelection {
  std::optional<std::string> brand;
  std::optional<std::filesystem::path> records;
};

/// Applies the config's time window. Throws Error{empty_input} when the
/// window leaves nothing.
std::vector<InteractionRecord> load_records(const RunConfig& cfg, const RecordSelection& sel);

struct IngestSummary {
  std::string source;
  std::size_t records = 0;
  std::size_t skipped = 0;
  std::size_t authors = 0;
  std::size_t mentions = 0;
  std::size_t replies = 0;
  std::vector<SkippedLine> skipped_lines;
};

IngestSummary summarize_ingest(const std::filesystem::path& file);
std::string cmd_ingest_validate(const RunConfig& cfg, const std::vector<std::filesystem::path>& files);

MetricsReport graph_metrics(const RunConfig& cfg, const RecordSelection& sel, unsigned threads = 0);
/// Builds the graph, detects communities with cfg.seed and computes every property.
MetricsReport graph_metrics(const RunConfig& cfg, const std::vector<InteractionRecord>& records,
                            unsigned threads = 0);
std::string cmd_graph_metrics(const RunConfig& cfg, const RecordSelection& sel, unsigned threads = 0);
std::string cmd_graph_export(const RunConfig& cfg, const RecordSelection& sel, EdgeListFormat format);
std::string cmd_community_detect(const RunConfig& cfg, const RecordSelection& sel);

/// Held-out evaluation (Table VI shape) plus, when records are given, the
/// automatic labeling tally (Table V shape).
struct SentimentRun {
  std::size_t train_docs = 0;
  std::size_t test_docs = 0;
  EvalReport evaluation;
  std::optional<SentimentShare> tally;
};

SentimentRun sentiment_run(const RunConfig& cfg, const std::filesystem::path& labeled,
                           const std::vector<InteractionRecord>* records);
std::string cmd_sentiment_eval(const RunConfig& cfg, const std::filesystem::path& labeled,
                               const RecordSelection& sel);
/// Trains on the full labeled corpus and writes the model JSON to model_out.
std::string cmd_sentiment_train(const RunConfig& cfg, const std::filesystem::path& labeled,
                                const std::filesystem::path& model_out);
std::string cmd_sentiment_label(const RunConfig& cfg, const std::filesystem::path& model,
                                const RecordSelection& sel);

enum class Direction { higher, lower };

struct CompareRow {
  std::string property;
  Direction direction = Direction::higher;
  /// One slot per brand, config order; std::nullopt renders as n/a.
  std::vector<std::optional<double>> values;
  /// Index of the unique best brand; std::nullopt on ties or when fewer
  /// than two brands have a value.
  std::optional<std::size_t> best;
  /// Rows excluded from the win tally (negative share mirrors positive).
  bool scored = true;

  friend bool operator==(const CompareRow&, const CompareRow&) = default;
};

struct CompareReport {
  std::vector<std::string> brands;
  std::vector<CompareRow> rows;
  std::vector<std::size_t> wins;

  friend bool operator==(const CompareReport&, const CompareReport&) = default;
};

/// Picks the winner of a row and returns it; exposed for tests.
std::optional<std::size_t> best_index(const std::vector<std::optional<double>>& values,
                                      Direction direction);

CompareReport build_compare(const std::vector<std::string>& brands,
                            const std::vector<MetricsReport>& metrics,
                            const std::vector<std::optional<SentimentShare>>& sentiment);
CompareReport compare(const RunConfig& cfg);
std::string cmd_compare(const RunConfig& cfg);

std::string render(const MetricsReport& report, OutputFormat format);
std::string render(const SentimentRun& run, OutputFormat format);
std::string render(const CompareReport& report, OutputFormat format);
std::string to_json(const CompareReport& report);
CompareReport compare_report_from_json(const std::string& text);

}  // namespace convograph::app
