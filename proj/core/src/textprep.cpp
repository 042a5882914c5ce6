#include "convograph/textprep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "convograph/error.hpp"

#ifndef CONVOGRAPH_INSTALL_DATA_DIR
#define CONVOGRAPH_INSTALL_DATA_DIR ""
#endif
#ifndef CONVOGRAPH_SOURCE_DATA_DIR
#define CONVOGRAPH_SOURCE_DATA_DIR ""
#endif

namespace convograph {
namespace {

constexpr std::size_t kMaxHandleLength = 15;
constexpr std::array kClassNames = {"inflectional_suffix", "derivational_suffix",
                                    "derivational_prefix"};

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }
bool is_handle_char(unsigned char c) { return std::isalnum(c) != 0 || c == '_'; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool starts_with_at(std::string_view text, std::size_t pos, std::string_view prefix) {
  return text.substr(pos, prefix.size()) == prefix;
}

// Replaces URL and mention spans with spaces so they split like punctuation.
std::string blank_out_spans(std::string text, const TokenPipelineConfig& cfg) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool boundary = i == 0 || !is_word_char(static_cast<unsigned char>(text[i - 1]));
    if (cfg.strip_urls && boundary &&
        (starts_with_at(text, i, "http://") || starts_with_at(text, i, "https://") ||
         starts_with_at(text, i, "www."))) {
      std::size_t end = i;
      while (end < text.size() && std::isspace(static_cast<unsigned char>(text[end])) == 0) {
        text[end++] = ' ';
      }
      i = end;
      continue;
    }
    if (cfg.strip_mentions && text[i] == '@' &&
        (i == 0 || !is_handle_char(static_cast<unsigned char>(text[i - 1])))) {
      std::size_t end = i + 1;
      while (end < text.size() && is_handle_char(static_cast<unsigned char>(text[end]))) ++end;
      const std::size_t len = end - i - 1;
      if (len >= 1 && len <= kMaxHandleLength) {
        std::fill(text.begin() + static_cast<std::ptrdiff_t>(i),
                  text.begin() + static_cast<std::ptrdiff_t>(end), ' ');
      }
      i = end - 1;
    }
  }
  return text;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::filesystem::path require_file(const std::filesystem::path& p) {
  if (!std::filesystem::is_regular_file(p)) {
    throw Error(ErrorKind::io, "cannot open '" + p.string() + "'");
  }
  return p;
}

}  // namespace

std::string_view to_string(AffixClass cls) noexcept {
  return kClassNames[static_cast<std::size_t>(cls)];
}

StemRule::StemRule(AffixClass cls, std::string pattern, std::string replacement)
    : class_(cls), pattern_(std::move(pattern)), replacement_(std::move(replacement)) {
  const bool prefix = cls == AffixClass::derivational_prefix;
  if (pattern_.empty() || (prefix ? pattern_.front() != '^' : pattern_.back() != '$')) {
    throw Error(ErrorKind::validation,
                "stem rule '" + pattern_ + "' must be anchored with " + (prefix ? "'^'" : "'$'"));
  }
  try {
    regex_ = std::make_shared<const std::regex>(pattern_, std::regex::ECMAScript |
                                                              std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw Error(ErrorKind::validation, "stem rule '" + pattern_ + "': " + e.what());
  }
}

std::string StemRule::apply(const std::string& token) const {
  std::smatch match;
  if (!std::regex_search(token, match, *regex_)) return token;
  return match.prefix().str() + match.format(replacement_) + match.suffix().str();
}

std::set<std::string> parse_stopwords(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    words.insert(lowercase(word));
  }
  return words;
}

std::vector<StemRule> parse_stem_rules(std::istream& in) {
  std::vector<StemRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;

    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (!line.empty() && line.back() == '\t') fields.emplace_back();
    if (fields.size() == 2) fields.emplace_back();
    if (fields.size() != 3) {
      throw Error(ErrorKind::validation, "stem rules line " + std::to_string(line_no) +
                                             ": expected class<TAB>pattern<TAB>replacement");
    }
    auto it = std::find(kClassNames.begin(), kClassNames.end(), fields[0]);
    if (it == kClassNames.end()) {
      throw Error(ErrorKind::validation,
                  "stem rules line " + std::to_string(line_no) + ": unknown class '" +
                      fields[0] + "'");
    }
    try {
      rules.emplace_back(static_cast<AffixClass>(it - kClassNames.begin()), fields[1],
                         fields[2]);
    } catch (const Error& e) {
      throw Error(e.kind(), "stem rules line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rules;
}

TokenPipelineConfig TokenPipelineConfig::load(const std::filesystem::path& stopwords_file,
                                              const std::filesystem::path& rules_file) {
  TokenPipelineConfig cfg;
  std::ifstream sw(require_file(stopwords_file));
  cfg.stopwords = parse_stopwords(sw);
  std::ifstream rules(require_file(rules_file));
  cfg.stemmer_rules = parse_stem_rules(rules);
  return cfg;
}

TokenPipelineConfig TokenPipelineConfig::load_default() {
  const auto dir = default_data_dir();
  return load(dir / "stopwords_id.txt", dir / "stem_rules_id.tsv");
}

std::filesystem::path default_data_dir() {
  std::vector<std::filesystem::path> candidates;
  if (const char* env = std::getenv("CONVOGRAPH_DATA_DIR"); env != nullptr && *env != '\0') {
    candidates.emplace_back(env);
  }
  candidates.emplace_back(CONVOGRAPH_INSTALL_DATA_DIR);
  candidates.emplace_back(CONVOGRAPH_SOURCE_DATA_DIR);
  for (const auto& dir : candidates) {
    if (!dir.empty() && std::filesystem::is_regular_file(dir / "stopwords_id.txt")) return dir;
  }
  throw Error(ErrorKind::io, "no data directory with stopwords_id.txt found; set CONVOGRAPH_DATA_DIR");
}

std::string TokenPipelineConfig::digest() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::string_view s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
    hash ^= 0xff;  // field separator
    hash *= 0x100000001b3ULL;
  };
  mix(strip_mentions ? "mentions:1" : "mentions:0");
  mix(strip_urls ? "urls:1" : "urls:0");
  mix("min:" + std::to_string(min_token_len));
  for (const auto& w : stopwords) mix(w);
  mix("--rules--");
  for (const auto& r : stemmer_rules) {
    mix(to_string(r.affix_class()));
    mix(r.pattern());
    mix(r.replacement());
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

std::vector<std::string> tokenize(std::string_view text, const TokenPipelineConfig& cfg) {
  const std::string cleaned = blank_out_spans(lowercase(text), cfg);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && !is_word_char(static_cast<unsigned char>(cleaned[i]))) ++i;
    const std::size_t start = i;
    while (i < cleaned.size() && is_word_char(static_cast<unsigned char>(cleaned[i]))) ++i;
    const std::size_t len = i - start;
    if (len > 0 && len >= cfg.min_token_len) tokens.emplace_back(cleaned, start, len);
  }
  return tokens;
}

std::vector<std::string> filter_stopwords(std::vector<std::string> tokens,
                                          const TokenPipelineConfig& cfg) {
  std::erase_if(tokens, [&](const std::string& t) { return cfg.stopwords.contains(t); });
  return tokens;
}

std::string stem(std::string_view token, const TokenPipelineConfig& cfg) {
  std::string current(token);
  while (true) {
    const std::string before = current;
    for (AffixClass cls : {AffixClass::inflectional_suffix, AffixClass::derivational_suffix,
                           AffixClass::derivational_prefix}) {
      for (const auto& rule : cfg.stemmer_rules) {
        if (rule.affix_class() != cls) continue;
        std::string next = rule.apply(current);
        if (next.size() < current.size() && next.size() >= TokenPipelineConfig::kMinStemLength) {
          current = std::move(next);
          break;
        }
      }
    }
    if (current == before) return current;
  }
}

PipelineTrace preprocess_traced(std::string_view text, const TokenPipelineConfig& cfg) {
  PipelineTrace trace;
  trace.tokens = tokenize(text, cfg);
  trace.filtered = filter_stopwords(trace.tokens, cfg);
  trace.stemmed.reserve(trace.filtered.size());
  for (const auto& t : trace.filtered) trace.stemmed.push_back(stem(t, cfg));
  return trace;
}

std::vector<std::string> preprocess(std::string_view text, const TokenPipelineConfig& cfg) {
  return preprocess_traced(text, cfg).stemmed;
}

}  // namespace convograph
