#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace convograph {

/// One message from a conversation dump. Handles are stored normalized:
/// lowercase, leading '@' removed.
struct InteractionRecord {
  std::string id;
  std::string author;
  std::string text;
  std::optional<std::string> reply_to;
  std::string created_at;
  std::string keyword;
  /// extract_mentions(text), filled in by the parsers.
  std::vector<std::string> mentions;

  friend bool operator==(const InteractionRecord&, const InteractionRecord&) = default;
};

enum class Label { negative, positive };

std::string_view to_string(Label label) noexcept;
/// Case-insensitive; std::nullopt for anything outside the binary scheme.
std::optional<Label> parse_label(std::string_view text);

struct LabeledDocument {
  std::string text;
  Label label = Label::negative;

  friend bool operator==(const LabeledDocument&, const LabeledDocument&) = default;
};

enum class RecordFormat { jsonl, csv };

/// Infers the format from a file extension (.jsonl/.ndjson/.json or .csv).
std::optional<RecordFormat> infer_record_format(const std::filesystem::path& path);

struct SkippedLine {
  std::size_t line = 0;  // 1-based line where the bad record starts
  std::string reason;
};

struct ParseResult {
  std::vector<InteractionRecord> records;
  std::size_t skipped_count = 0;
  std::vector<SkippedLine> skipped;
};

/// Lowercases, trims whitespace and strips one leading '@'.
std::string normalize_handle(std::string_view raw);

/// Every '@' + [A-Za-z0-9_]{1,15} token not preceded by a handle character,
/// lowercased without the '@'. Order and duplicates are kept.
std::vector<std::string> extract_mentions(std::string_view text);

/// Malformed lines are skipped and counted. Throws Error{empty_input} when
/// nothing usable remains.
ParseResult parse_records(std::istream& in, RecordFormat format);
/// Throws Error{io} when the file cannot be opened, Error{validation} when
/// the format cannot be inferred and none is given.
ParseResult parse_records_file(const std::filesystem::path& path,
                               std::optional<RecordFormat> format = std::nullopt);

/// Canonical single-line JSON form; parse_records on it reproduces the record.
std::string to_jsonl(const InteractionRecord& record);

/// CSV with a `text,label` header. Unknown labels throw Error{validation}
/// naming the offending line.
std::vector<LabeledDocument> parse_labeled_corpus(std::istream& in);
std::vector<LabeledDocument> parse_labeled_corpus_file(const std::filesystem::path& path);

/// Keeps records whose created_at lies in [since, until). Timestamps compare
/// lexically, which is exact for ISO-8601 strings in one offset.
std::vector<InteractionRecord> filter_by_time(std::vector<InteractionRecord> records,
                                              std::optional<std::string> since,
                                              std::optional<std::string> until);

}  // namespace convograph
