#include "convograph/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "convograph/error.hpp"
#include "csv.hpp"

namespace convograph {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxHandleLength = 15;

bool is_handle_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](unsigned char c) { return std::isspace(c) == 0; };
  auto first = std::find_if(s.begin(), s.end(), not_space);
  auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return first < last ? std::string_view(first, last) : std::string_view{};
}

bool looks_like_iso8601(const std::string& ts) {
  static const std::regex pattern(
      R"(\d{4}-\d{2}-\d{2}([T ]\d{2}:\d{2}(:\d{2}(\.\d+)?)?(Z|[+-]\d{2}:?\d{2})?)?)");
  return std::regex_match(ts, pattern);
}

// Shared validation for both record formats; returns a reason on failure.
std::optional<std::string> finish_record(InteractionRecord& rec) {
  rec.author = normalize_handle(rec.author);
  if (rec.author.empty()) return "empty author";
  if (rec.id.empty()) return "empty id";
  if (!looks_like_iso8601(rec.created_at)) return "created_at is not ISO-8601";
  if (rec.reply_to) {
    *rec.reply_to = normalize_handle(*rec.reply_to);
    if (rec.reply_to->empty()) rec.reply_to.reset();
  }
  rec.mentions = extract_mentions(rec.text);
  return std::nullopt;
}

std::optional<std::string> string_field(const json& obj, const char* key, bool required,
                                        std::string& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) return std::string("missing ") + key;
    return std::nullopt;
  }
  if (it->is_string()) {
    out = it->get<std::string>();
  } else if (it->is_number_integer() || it->is_number_unsigned()) {
    out = it->dump();
  } else {
    return std::string(key) + " has the wrong type";
  }
  return std::nullopt;
}

std::optional<std::string> record_from_json(const std::string& line, InteractionRecord& rec) {
  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) return "invalid JSON";
  if (!obj.is_object()) return "not a JSON object";
  for (auto [key, required, target] :
       {std::tuple{"id", true, &rec.id}, std::tuple{"author", true, &rec.author},
        std::tuple{"text", true, &rec.text}, std::tuple{"created_at", true, &rec.created_at},
        std::tuple{"keyword", false, &rec.keyword}}) {
    if (auto err = string_field(obj, key, required, *target)) return err;
  }
  std::string reply;
  if (auto it = obj.find("reply_to"); it != obj.end() && !it->is_null()) {
    if (auto err = string_field(obj, "reply_to", false, reply)) return err;
    rec.reply_to = reply;
  }
  return finish_record(rec);
}

ParseResult parse_jsonl(std::istream& in) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    InteractionRecord rec;
    if (auto err = record_from_json(line, rec)) {
      ++result.skipped_count;
      result.skipped.push_back({line_no, std::move(*err)});
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  if (in.bad()) throw Error(ErrorKind::io, "read error while parsing records");
  return result;
}

struct ColumnMap {
  std::optional<std::size_t> id, author, text, created_at, reply_to, keyword;
};

ParseResult parse_csv_records(std::istream& in) {
  ParseResult result;
  detail::CsvReader reader(in);
  auto header = reader.next();
  if (!header) return result;

  ColumnMap cols;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    const std::string name = to_lower_ascii(trim(header->fields[i]));
    if (name == "id") cols.id = i;
    else if (name == "author") cols.author = i;
    else if (name == "text") cols.text = i;
    else if (name == "created_at") cols.created_at = i;
    else if (name == "reply_to") cols.reply_to = i;
    else if (name == "keyword") cols.keyword = i;
  }
  if (!cols.id || !cols.author || !cols.text || !cols.created_at) {
    throw Error(ErrorKind::validation,
                "CSV header must name id, author, text and created_at columns");
  }

  while (auto row = reader.next()) {
    auto skip = [&](std::string reason) {
      ++result.skipped_count;
      result.skipped.push_back({row->line, std::move(reason)});
    };
    if (!row->well_formed) {
      skip("malformed CSV quoting");
      continue;
    }
    if (row->fields.size() != header->fields.size()) {
      skip("expected " + std::to_string(header->fields.size()) + " fields, got " +
           std::to_string(row->fields.size()));
      continue;
    }
    InteractionRecord rec;
    rec.id = row->fields[*cols.id];
    rec.author = row->fields[*cols.author];
    rec.text = row->fields[*cols.text];
    rec.created_at = row->fields[*cols.created_at];
    if (cols.keyword) rec.keyword = row->fields[*cols.keyword];
    if (cols.reply_to && !row->fields[*cols.reply_to].empty()) {
      rec.reply_to = row->fields[*cols.reply_to];
    }
    if (auto err = finish_record(rec)) {
      skip(std::move(*err));
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  if (in.bad()) throw Error(ErrorKind::io, "read error while parsing records");
  return result;
}

}  // namespace

std::string_view to_string(Label label) noexcept {
  return label == Label::positive ? "positive" : "negative";
}

std::optional<Label> parse_label(std::string_view text) {
  const std::string lowered = to_lower_ascii(trim(text));
  if (lowered == "positive") return Label::positive;
  if (lowered == "negative") return Label::negative;
  return std::nullopt;
}

std::optional<RecordFormat> infer_record_format(const std::filesystem::path& path) {
  const std::string ext = to_lower_ascii(path.extension().string());
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return RecordFormat::jsonl;
  if (ext == ".csv") return RecordFormat::csv;
  return std::nullopt;
}

std::string normalize_handle(std::string_view raw) {
  std::string_view s = trim(raw);
  if (!s.empty() && s.front() == '@') s.remove_prefix(1);
  return to_lower_ascii(s);
}

std::vector<std::string> extract_mentions(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '@') continue;
    if (i > 0 && is_handle_char(text[i - 1])) continue;
    std::size_t end = i + 1;
    while (end < text.size() && is_handle_char(text[end])) ++end;
    const std::size_t len = end - i - 1;
    if (len >= 1 && len <= kMaxHandleLength) {
      out.push_back(to_lower_ascii(text.substr(i + 1, len)));
    }
    i = end - 1;
  }
  return out;
}

ParseResult parse_records(std::istream& in, RecordFormat format) {
  if (!in) throw Error(ErrorKind::io, "record stream is not readable");
  ParseResult result = format == RecordFormat::jsonl ? parse_jsonl(in) : parse_csv_records(in);
  if (result.records.empty()) {
    std::string msg = "no records";
    if (result.skipped_count > 0) {
      msg += " (" + std::to_string(result.skipped_count) + " malformed lines skipped)";
    }
    throw Error(ErrorKind::empty_input, msg);
  }
  return result;
}

ParseResult parse_records_file(const std::filesystem::path& path,
                               std::optional<RecordFormat> format) {
  if (!format) format = infer_record_format(path);
  if (!format) {
    throw Error(ErrorKind::validation,
                "cannot infer record format from '" + path.string() + "'; use .jsonl or .csv");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
  try {
    return parse_records(in, *format);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string to_jsonl(const InteractionRecord& record) {
  json obj = json::object();
  obj["id"] = record.id;
  obj["author"] = record.author;
  obj["text"] = record.text;
  obj["created_at"] = record.created_at;
  if (record.reply_to) obj["reply_to"] = *record.reply_to;
  if (!record.keyword.empty()) obj["keyword"] = record.keyword;
  return obj.dump();
}

std::vector<LabeledDocument> parse_labeled_corpus(std::istream& in) {
  if (!in) throw Error(ErrorKind::io, "labeled corpus stream is not readable");
  detail::CsvReader reader(in);
  auto header = reader.next();
  if (!header) throw Error(ErrorKind::empty_input, "labeled corpus is empty");

  std::optional<std::size_t> text_col, label_col;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    const std::string name = to_lower_ascii(trim(header->fields[i]));
    if (name == "text") text_col = i;
    if (name == "label") label_col = i;
  }
  if (!text_col || !label_col) {
    throw Error(ErrorKind::validation, "line 1: labeled corpus header must be 'text,label'");
  }

  std::vector<LabeledDocument> docs;
  while (auto row = reader.next()) {
    const std::string where = "line " + std::to_string(row->line) + ": ";
    if (!row->well_formed || row->fields.size() != header->fields.size()) {
      throw Error(ErrorKind::validation, where + "malformed CSV row");
    }
    auto label = parse_label(row->fields[*label_col]);
    if (!label) {
      throw Error(ErrorKind::validation,
                  where + "unknown label '" + row->fields[*label_col] +
                      "' (expected positive or negative)");
    }
    docs.push_back({row->fields[*text_col], *label});
  }
  if (in.bad()) throw Error(ErrorKind::io, "read error while parsing labeled corpus");
  if (docs.empty()) throw Error(ErrorKind::empty_input, "labeled corpus has no rows");
  return docs;
}

std::vector<LabeledDocument> parse_labeled_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
  try {
    return parse_labeled_corpus(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<InteractionRecord> filter_by_time(std::vector<InteractionRecord> records,
                                              std::optional<std::string> since,
                                              std::optional<std::string> until) {
  std::erase_if(records, [&](const InteractionRecord& r) {
    if (since && r.created_at < *since) return true;
    if (until && !(r.created_at < *until)) return true;
    return false;
  });
  return records;
}

}  // namespace convograph
