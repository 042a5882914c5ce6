#include "run_config.hpp"

#include <cstdlib>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "convograph/error.hpp"

namespace convograph::app {
namespace {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

fs::path resolve(const fs::path& base, const std::string& raw) {
  fs::path p(raw);
  return p.is_absolute() ? p : base / p;
}

template <typename T>
T get_or(const pt::ptree& tree, const std::string& key, T fallback) {
  try {
    return tree.get<T>(key, fallback);
  } catch (const pt::ptree_bad_data&) {
    throw Error(ErrorKind::validation, "config key '" + key + "' has an invalid value");
  }
}

void require_file(const fs::path& p, const std::string& what) {
  if (!fs::is_regular_file(p)) {
    throw Error(ErrorKind::validation, what + " '" + p.string() + "' does not exist");
  }
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "table") return OutputFormat::table;
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw Error(ErrorKind::validation, "unknown output format '" + text + "'");
}

void RunConfig::validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorKind::validation, "train_fraction must lie strictly between 0 and 1");
  }
  if (!(alpha >= 0.0)) throw Error(ErrorKind::validation, "alpha must be >= 0");
  edge_policy.validate();
  for (const auto& b : brands) {
    require_file(b.records, "records file for brand " + b.name);
    if (b.labeled) require_file(*b.labeled, "labeled corpus for brand " + b.name);
  }
  if (labeled) require_file(*labeled, "labeled corpus");
  if (pipeline.stopwords) require_file(*pipeline.stopwords, "stopword file");
  if (pipeline.stem_rules) require_file(*pipeline.stem_rules, "stem rule file");
}

const BrandSource& RunConfig::brand(const std::string& name) const {
  for (const auto& b : brands) {
    if (b.name == name) return b;
  }
  throw Error(ErrorKind::usage, "brand '" + name + "' is not in the config");
}

TokenPipelineConfig RunConfig::load_pipeline() const {
  const fs::path data = (pipeline.stopwords && pipeline.stem_rules) ? fs::path{}
                                                                    : default_data_dir();
  TokenPipelineConfig cfg = TokenPipelineConfig::load(
      pipeline.stopwords.value_or(data / "stopwords_id.txt"),
      pipeline.stem_rules.value_or(data / "stem_rules_id.tsv"));
  cfg.strip_mentions = pipeline.strip_mentions;
  cfg.strip_urls = pipeline.strip_urls;
  cfg.min_token_len = pipeline.min_token_len;
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(fs::exists(path) ? ErrorKind::validation : ErrorKind::io, e.what());
  }

  fs::path base = path.parent_path();
  if (const char* env = std::getenv("CONVOGRAPH_DATA_DIR"); env != nullptr && *env != '\0') {
    base = env;
  }

  RunConfig cfg;
  cfg.seed = get_or<std::uint64_t>(tree, "run.seed", cfg.seed);
  cfg.train_fraction = get_or<double>(tree, "run.train_fraction", cfg.train_fraction);
  cfg.alpha = get_or<double>(tree, "run.alpha", cfg.alpha);
  cfg.exact_metrics_node_limit =
      get_or<std::size_t>(tree, "run.exact_metrics_node_limit", cfg.exact_metrics_node_limit);
  cfg.output_format = parse_output_format(get_or<std::string>(tree, "run.format", "table"));
  const auto averaging = get_or<std::string>(tree, "run.averaging", "positive_class");
  if (averaging == "macro") {
    cfg.averaging = Averaging::macro;
  } else if (averaging != "positive_class") {
    throw Error(ErrorKind::validation, "run.averaging must be positive_class or macro");
  }
  if (auto v = tree.get_optional<std::string>("run.labeled")) cfg.labeled = resolve(base, *v);
  if (auto v = tree.get_optional<std::string>("run.since")) cfg.since = *v;
  if (auto v = tree.get_optional<std::string>("run.until")) cfg.until = *v;

  cfg.edge_policy.use_mentions = get_or<bool>(tree, "edges.mentions", true);
  cfg.edge_policy.use_replies = get_or<bool>(tree, "edges.replies", true);

  if (auto v = tree.get_optional<std::string>("pipeline.stopwords")) {
    cfg.pipeline.stopwords = resolve(base, *v);
  }
  if (auto v = tree.get_optional<std::string>("pipeline.stem_rules")) {
    cfg.pipeline.stem_rules = resolve(base, *v);
  }
  cfg.pipeline.strip_mentions = get_or<bool>(tree, "pipeline.strip_mentions", true);
  cfg.pipeline.strip_urls = get_or<bool>(tree, "pipeline.strip_urls", true);
  cfg.pipeline.min_token_len = get_or<std::size_t>(tree, "pipeline.min_token_len", 2);

  if (auto brands = tree.get_child_optional("brands")) {
    for (const auto& [name, value] : *brands) {
      cfg.brands.push_back({name, resolve(base, value.data()), std::nullopt});
    }
  }
  if (auto labeled = tree.get_child_optional("labeled")) {
    for (const auto& [name, value] : *labeled) {
      bool found = false;
      for (auto& b : cfg.brands) {
        if (b.name == name) {
          b.labeled = resolve(base, value.data());
          found = true;
        }
      }
      if (!found) {
        throw Error(ErrorKind::validation, "[labeled] names unknown brand '" + name + "'");
      }
    }
  }
  if (cfg.brands.empty()) {
    throw Error(ErrorKind::validation, path.string() + ": [brands] lists no brand");
  }
  cfg.validate();
  return cfg;
}

}  // namespace convograph::app
