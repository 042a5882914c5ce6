#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace convograph {

/// Affix classes are applied in this order, at most one rule each per pass.
enum class AffixClass { inflectional_suffix, derivational_suffix, derivational_prefix };

std::string_view to_string(AffixClass cls) noexcept;

/// One stemmer rule. `pattern` is an ECMAScript regex anchored with '$'
/// (suffix classes) or '^' (prefix class); `replacement` is a regex format
/// string, so "$1" keeps a captured group.
class StemRule {
 public:
  /// Throws Error{validation} for a bad regex or a missing anchor.
  StemRule(AffixClass cls, std::string pattern, std::string replacement);

  AffixClass affix_class() const noexcept { return class_; }
  const std::string& pattern() const noexcept { return pattern_; }
  const std::string& replacement() const noexcept { return replacement_; }

  /// Rewritten token, or the input unchanged when the pattern misses.
  std::string apply(const std::string& token) const;

 private:
  AffixClass class_;
  std::string pattern_;
  std::string replacement_;
  std::shared_ptr<const std::regex> regex_;
};

struct TokenPipelineConfig {
  std::set<std::string> stopwords;
  bool strip_mentions = true;
  bool strip_urls = true;
  std::vector<StemRule> stemmer_rules;
  std::size_t min_token_len = 2;

  /// Shortest token a stemming step may leave behind.
  static constexpr std::size_t kMinStemLength = 3;

  /// Loads the stopword list (one word per line) and the rule table
  /// (`class<TAB>pattern<TAB>replacement` per line). '#' starts a comment.
  static TokenPipelineConfig load(const std::filesystem::path& stopwords_file,
                                  const std::filesystem::path& rules_file);
  /// Bundled Indonesian defaults; see default_data_dir().
  static TokenPipelineConfig load_default();

  /// Stable 64-bit FNV-1a digest (hex) over every setting; trained models
  /// record it so they are not reused under a different pipeline.
  std::string digest() const;
};

std::set<std::string> parse_stopwords(std::istream& in);
std::vector<StemRule> parse_stem_rules(std::istream& in);

/// First existing directory among $CONVOGRAPH_DATA_DIR, the install data
/// directory and the source tree's data directory.
std::filesystem::path default_data_dir();

/// Lowercases, drops mentions/URLs per cfg, splits on anything that is not
/// an ASCII letter or digit, and drops tokens shorter than min_token_len.
std::vector<std::string> tokenize(std::string_view text, const TokenPipelineConfig& cfg);

std::vector<std::string> filter_stopwords(std::vector<std::string> tokens,
                                          const TokenPipelineConfig& cfg);

/// Runs passes over the rule table until the token stops changing. A rule
/// only fires when its output is shorter than its input and at least
/// kMinStemLength characters long, so stem(stem(t)) == stem(t).
std::string stem(std::string_view token, const TokenPipelineConfig& cfg);

/// Intermediate stages of preprocess().
struct PipelineTrace {
  std::vector<std::string> tokens;
  std::vector<std::string> filtered;
  std::vector<std::string> stemmed;
};

PipelineTrace preprocess_traced(std::string_view text, const TokenPipelineConfig& cfg);

/// tokenize -> filter_stopwords -> stem.
std::vector<std::string> preprocess(std::string_view text, const TokenPipelineConfig& cfg);

}  // namespace convograph
