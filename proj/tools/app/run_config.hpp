#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "convograph/eval.hpp"
#include "convograph/graph.hpp"
#include "convograph/textprep.hpp"

namespace convograph::app {

enum class OutputFormat { table, json, csv };

OutputFormat parse_output_format(const std::string& text);

struct BrandSource {
  std::string name;
  std::filesystem::path records;
  /// Brand-specific labeled corpus; falls back to RunConfig::labeled.
  std::optional<std::filesystem::path> labeled;
};

struct PipelinePaths {
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> stem_rules;
  bool strip_mentions = true;
  bool strip_urls = true;
  std::size_t min_token_len = 2;
};

/// Everything a run needs. Loaded from an INI file:
///
///   [run]       seed, train_fraction, alpha, exact_metrics_node_limit,
///               format, labeled, since, until, averaging
///   [edges]     mentions, replies
///   [pipeline]  stopwords, stem_rules, strip_mentions, strip_urls, min_token_len
///   [brands]    <name> = <records file>   (one per line, order kept)
///   [labeled]   <name> = <labeled csv>
///
/// Relative paths resolve against $CONVOGRAPH_DATA_DIR when set, otherwise
/// against the config file's directory.
struct RunConfig {
  std::vector<BrandSource> brands;
  EdgePolicy edge_policy;
  PipelinePaths pipeline;
  std::optional<std::filesystem::path> labeled;
  double train_fraction = 0.8;
  double alpha = 1.0;
  std::uint64_t seed = 42;
  std::size_t exact_metrics_node_limit = 50'000;
  OutputFormat output_format = OutputFormat::table;
  Averaging averaging = Averaging::positive_class;
  std::optional<std::string> since;
  std::optional<std::string> until;

  /// Throws Error{validation} on bad values or missing files.
  void validate() const;
  const BrandSource& brand(const std::string& name) const;
  TokenPipelineConfig load_pipeline() const;
};

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace convograph::app
