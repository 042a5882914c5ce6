#include "commands.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "convograph/error.hpp"
#include "convograph/number_format.hpp"
#include "table.hpp"

namespace convograph::app {
namespace {

std::filesystem::path records_path(const RunConfig& cfg, const RecordSelection& sel) {
  if (sel.records && sel.brand) {
    throw Error(ErrorKind::usage, "pass either --brand or --records, not both");
  }
  if (sel.records) return *sel.records;
  if (sel.brand) return cfg.brand(*sel.brand).records;
  if (cfg.brands.size() == 1) return cfg.brands.front().records;
  throw Error(ErrorKind::usage, "no input: pass --records PATH or --brand NAME");
}

PathOptions path_options(const RunConfig& cfg, unsigned threads) {
  PathOptions opts;
  opts.exact_node_limit = cfg.exact_metrics_node_limit;
  opts.seed = cfg.seed;
  opts.threads = threads;
  return opts;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string table_value(const std::string& property, const std::optional<double>& v) {
  if (!v) return "n/a";
  if (property == "size" || property == "edges" || property == "diameter" ||
      property == "connected_components") {
    return std::to_string(static_cast<long long>(*v));
  }
  if (property == "density" || property == "reachability") return format_fixed(*v, 6);
  if (property == "positive_pct" || property == "negative_pct") return format_fixed(*v, 2);
  return format_fixed(*v, 3);
}

template <typename T>
std::optional<double> as_real(const std::optional<T>& v) {
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

std::vector<std::pair<std::string, std::optional<double>>> metric_rows(const MetricsReport& r) {
  return {{"size", static_cast<double>(r.size)},
          {"edges", static_cast<double>(r.edges)},
          {"density", r.density},
          {"modularity", r.modularity},
          {"diameter", as_real(r.diameter)},
          {"avg_path_length", r.avg_path_length},
          {"avg_degree", r.avg_degree},
          {"reachability", r.reachability},
          {"connected_components", as_real(r.connected_components)}};
}

Direction direction_of(const std::string& property) {
  if (property == "diameter" || property == "avg_path_length" ||
      property == "connected_components" || property == "negative_pct") {
    return Direction::lower;
  }
  return Direction::higher;
}

}  // namespace

std::vector<InteractionRecord> load_records(const RunConfig& cfg, const RecordSelection& sel) {
  const auto path = records_path(cfg, sel);
  auto records = parse_records_file(path).records;
  if (cfg.since || cfg.until) {
    records = filter_by_time(std::move(records), cfg.since, cfg.until);
    if (records.empty()) {
      throw Error(ErrorKind::empty_input, path.string() + ": no records inside the time window");
    }
  }
  return records;
}

IngestSummary summarize_ingest(const std::filesystem::path& file) {
  const ParseResult parsed = parse_records_file(file);
  IngestSummary s;
  s.source = file.string();
  s.records = parsed.records.size();
  s.skipped = parsed.skipped_count;
  s.skipped_lines = parsed.skipped;
  std::set<std::string> authors;
  for (const auto& r : parsed.records) {
    authors.insert(r.author);
    s.mentions += r.mentions.size();
    if (r.reply_to) ++s.replies;
  }
  s.authors = authors.size();
  return s;
}

std::string cmd_ingest_validate(const RunConfig& cfg, const std::vector<std::filesystem::path>& files) {
  std::vector<std::filesystem::path> inputs = files;
  if (inputs.empty()) {
    for (const auto& b : cfg.brands) inputs.push_back(b.records);
  }
  if (inputs.empty()) throw Error(ErrorKind::usage, "no record files to validate");

  std::vector<IngestSummary> summaries;
  for (const auto& f : inputs) summaries.push_back(summarize_ingest(f));

  std::ostringstream out;
  switch (cfg.output_format) {
    case OutputFormat::json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& s : summaries) {
        nlohmann::ordered_json o;
        o["source"] = s.source;
        o["records"] = s.records;
        o["skipped"] = s.skipped;
        o["authors"] = s.authors;
        o["mentions"] = s.mentions;
        o["replies"] = s.replies;
        o["skipped_lines"] = nlohmann::ordered_json::array();
        for (const auto& sk : s.skipped_lines) {
          o["skipped_lines"].push_back({{"line", sk.line}, {"reason", sk.reason}});
        }
        arr.push_back(std::move(o));
      }
      out << arr.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "source,records,skipped,authors,mentions,replies\n";
      for (const auto& s : summaries) {
        out << csv_escape(s.source) << ',' << s.records << ',' << s.skipped << ',' << s.authors
            << ',' << s.mentions << ',' << s.replies << '\n';
      }
      break;
    case OutputFormat::table: {
      TextTable t({"source", "records", "skipped", "authors", "mentions", "replies"});
      for (const auto& s : summaries) {
        t.add_row({s.source, std::to_string(s.records), std::to_string(s.skipped),
                   std::to_string(s.authors), std::to_string(s.mentions),
                   std::to_string(s.replies)});
      }
      out << t.str();
      for (const auto& s : summaries) {
        for (const auto& sk : s.skipped_lines) {
          out << s.source << ':' << sk.line << ": skipped: " << sk.reason << '\n';
        }
      }
      break;
    }
  }
  return out.str();
}

MetricsReport graph_metrics(const RunConfig& cfg, const RecordSelection& sel, unsigned threads) {
  return graph_metrics(cfg, load_records(cfg, sel), threads);
}

MetricsReport graph_metrics(const RunConfig& cfg, const std::vector<InteractionRecord>& records,
                            unsigned threads) {
  const Graph g = build_graph(records, cfg.edge_policy);
  if (g.edge_count() == 0) return compute_all(g, nullptr, path_options(cfg, threads));
  const Partition communities = detect_communities(g, cfg.seed);
  return compute_all(g, &communities, path_options(cfg, threads));
}

std::string cmd_graph_metrics(const RunConfig& cfg, const RecordSelection& sel, unsigned threads) {
  return render(graph_metrics(cfg, sel, threads), cfg.output_format);
}

std::string cmd_graph_export(const RunConfig& cfg, const RecordSelection& sel,
                             EdgeListFormat format) {
  const auto records = load_records(cfg, sel);
  return export_edgelist(build_graph(records, cfg.edge_policy), format);
}

std::string cmd_community_detect(const RunConfig& cfg, const RecordSelection& sel) {
  const auto records = load_records(cfg, sel);
  const Graph g = build_graph(records, cfg.edge_policy);
  const Partition p = detect_communities(g, cfg.seed);
  const double q = modularity(g, p);

  std::ostringstream out;
  switch (cfg.output_format) {
    case OutputFormat::json: {
      nlohmann::ordered_json obj;
      obj["modularity"] = q;
      obj["communities"] = p.community_count();
      obj["seed"] = cfg.seed;
      nlohmann::ordered_json assignment = nlohmann::ordered_json::object();
      for (NodeId u = 0; u < g.node_count(); ++u) assignment[g.handle(u)] = p[u];
      obj["assignment"] = std::move(assignment);
      out << obj.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "handle,community_id\n";
      for (NodeId u = 0; u < g.node_count(); ++u) {
        out << csv_escape(g.handle(u)) << ',' << p[u] << '\n';
      }
      break;
    case OutputFormat::table:
      out << "# modularity " << format_fixed(q, 6) << ", " << p.community_count()
          << " communities, seed " << cfg.seed << '\n'
          << to_text(g, p);
      break;
  }
  return out.str();
}

SentimentRun sentiment_run(const RunConfig& cfg, const std::filesystem::path& labeled,
                           const std::vector<InteractionRecord>* records) {
  const auto corpus = parse_labeled_corpus_file(labeled);
  const TokenPipelineConfig pipeline = cfg.load_pipeline();
  const CorpusSplit parts = split(corpus, cfg.train_fraction, cfg.seed);
  const SentimentModel model = train(parts.train, pipeline, cfg.alpha);

  SentimentRun run;
  run.train_docs = parts.train.size();
  run.test_docs = parts.test.size();
  std::vector<Label> golds, preds;
  for (const auto& doc : parts.test) {
    golds.push_back(doc.label);
    preds.push_back(predict(model, doc.text, pipeline).label);
  }
  run.evaluation = evaluate(confusion(golds, preds), cfg.averaging);

  if (records != nullptr) {
    std::uint64_t pos = 0, neg = 0;
    for (const auto& p : label_corpus(model, *records, pipeline)) {
      (p.prediction.label == Label::positive ? pos : neg) += 1;
    }
    run.tally = sentiment_percentages(pos, neg);
  }
  return run;
}

std::string cmd_sentiment_eval(const RunConfig& cfg, const std::filesystem::path& labeled,
                               const RecordSelection& sel) {
  std::optional<std::vector<InteractionRecord>> records;
  if (sel.brand || sel.records) records = load_records(cfg, sel);
  return render(sentiment_run(cfg, labeled, records ? &*records : nullptr), cfg.output_format);
}

std::string cmd_sentiment_train(const RunConfig& cfg, const std::filesystem::path& labeled,
                                const std::filesystem::path& model_out) {
  const auto corpus = parse_labeled_corpus_file(labeled);
  const TokenPipelineConfig pipeline = cfg.load_pipeline();
  const SentimentModel model = train(corpus, pipeline, cfg.alpha);
  std::ofstream out(model_out, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + model_out.string() + "'");
  out << to_json(model) << '\n';
  if (!out) throw Error(ErrorKind::io, "failed writing '" + model_out.string() + "'");

  std::ostringstream msg;
  msg << "trained on " << corpus.size() << " documents (" << model.class_doc_counts[1]
      << " positive, " << model.class_doc_counts[0] << " negative), vocabulary "
      << model.vocabulary.size() << ", pipeline " << model.pipeline_digest << '\n'
      << "model written to " << model_out.string() << '\n';
  return msg.str();
}

std::string cmd_sentiment_label(const RunConfig& cfg, const std::filesystem::path& model_path,
                                const RecordSelection& sel) {
  std::ifstream in(model_path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + model_path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const TokenPipelineConfig pipeline = cfg.load_pipeline();
  const SentimentModel model = model_from_json(buf.str(), &pipeline);
  const auto records = load_records(cfg, sel);
  const auto labeled = label_corpus(model, records, pipeline);

  std::uint64_t pos = 0, neg = 0;
  for (const auto& p : labeled) (p.prediction.label == Label::positive ? pos : neg) += 1;
  const SentimentShare share = sentiment_percentages(pos, neg);

  std::ostringstream out;
  switch (cfg.output_format) {
    case OutputFormat::json: {
      nlohmann::ordered_json obj;
      obj["predictions"] = nlohmann::ordered_json::array();
      for (const auto& p : labeled) {
        auto pred = nlohmann::ordered_json::parse(to_json(p.prediction));
        pred["id"] = p.record_id;
        obj["predictions"].push_back(std::move(pred));
      }
      obj["positive"] = share.positive;
      obj["negative"] = share.negative;
      obj["positive_pct"] = share.positive_text;
      obj["negative_pct"] = share.negative_text;
      out << obj.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "id,label,confidence\n";
      for (const auto& p : labeled) {
        out << csv_escape(p.record_id) << ',' << to_string(p.prediction.label) << ','
            << format_shortest(p.prediction.confidence) << '\n';
      }
      break;
    case OutputFormat::table: {
      TextTable t({"id", "label", "confidence"});
      for (const auto& p : labeled) {
        t.add_row({p.record_id, std::string(to_string(p.prediction.label)),
                   format_fixed(p.prediction.confidence, 4)});
      }
      out << t.str() << "positive " << share.positive_text << "% (" << share.positive
          << "), negative " << share.negative_text << "% (" << share.negative << ")\n";
      break;
    }
  }
  return out.str();
}

std::optional<std::size_t> best_index(const std::vector<std::optional<double>>& values,
                                      Direction direction) {
  std::optional<std::size_t> best;
  std::size_t defined = 0;
  bool tied = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) continue;
    ++defined;
    if (!best) {
      best = i;
      continue;
    }
    const double v = *values[i], b = *values[*best];
    const bool better = direction == Direction::higher ? v > b : v < b;
    if (better) {
      best = i;
      tied = false;
    } else if (v == b) {
      tied = true;
    }
  }
  if (defined < 2 || tied) return std::nullopt;
  return best;
}

CompareReport build_compare(const std::vector<std::string>& brands,
                            const std::vector<MetricsReport>& metrics,
                            const std::vector<std::optional<SentimentShare>>& sentiment) {
  CompareReport report;
  report.brands = brands;
  report.wins.assign(brands.size(), 0);

  std::vector<std::vector<std::pair<std::string, std::optional<double>>>> per_brand;
  for (const auto& m : metrics) per_brand.push_back(metric_rows(m));

  for (std::size_t row = 0; row < per_brand.front().size(); ++row) {
    CompareRow r;
    r.property = per_brand.front()[row].first;
    r.direction = direction_of(r.property);
    for (const auto& b : per_brand) r.values.push_back(b[row].second);
    report.rows.push_back(std::move(r));
  }
  for (const char* property : {"positive_pct", "negative_pct"}) {
    CompareRow r;
    r.property = property;
    r.direction = direction_of(property);
    r.scored = r.property == "positive_pct";
    for (const auto& s : sentiment) {
      if (!s) {
        r.values.push_back(std::nullopt);
        continue;
      }
      // Compare the rendered two-decimal shares.
      const std::string& text = r.property == "positive_pct" ? s->positive_text : s->negative_text;
      r.values.push_back(std::stod(text));
    }
    report.rows.push_back(std::move(r));
  }
  for (auto& r : report.rows) {
    r.best = best_index(r.values, r.direction);
    if (r.best && r.scored) ++report.wins[*r.best];
  }
  return report;
}

CompareReport compare(const RunConfig& cfg) {
  if (cfg.brands.size() < 2) {
    throw Error(ErrorKind::usage, "compare needs at least two brands in the config");
  }
  std::vector<std::string> names;
  std::vector<MetricsReport> metrics;
  std::vector<std::optional<SentimentShare>> sentiment;
  for (const auto& b : cfg.brands) {
    names.push_back(b.name);
    const RecordSelection sel{b.name, std::nullopt};
    const auto records = load_records(cfg, sel);
    metrics.push_back(graph_metrics(cfg, records));
    const auto labeled = b.labeled ? b.labeled : cfg.labeled;
    if (labeled) {
      sentiment.push_back(sentiment_run(cfg, *labeled, &records).tally);
    } else {
      sentiment.emplace_back();
    }
  }
  return build_compare(names, metrics, sentiment);
}

std::string cmd_compare(const RunConfig& cfg) { return render(compare(cfg), cfg.output_format); }

std::string render(const MetricsReport& report, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::json:
      out << to_json(report) << '\n';
      break;
    case OutputFormat::csv:
      out << "property,value\n";
      for (const auto& [name, v] : metric_rows(report)) {
        out << name << ',' << (v ? format_shortest(*v) : "n/a") << '\n';
      }
      break;
    case OutputFormat::table: {
      TextTable t({"property", "value"});
      for (const auto& [name, v] : metric_rows(report)) t.add_row({name, table_value(name, v)});
      out << t.str();
      if (report.paths_estimated) {
        out << "(diameter and avg_path_length estimated from sampled sources)\n";
      }
      break;
    }
  }
  return out.str();
}

std::string render(const SentimentRun& run, OutputFormat format) {
  const EvalReport& e = run.evaluation;
  std::ostringstream out;
  switch (format) {
    case OutputFormat::json: {
      nlohmann::ordered_json obj;
      obj["train_docs"] = run.train_docs;
      obj["test_docs"] = run.test_docs;
      obj["evaluation"] = nlohmann::ordered_json::parse(to_json(e));
      if (run.tally) {
        obj["tally"] = {{"positive", run.tally->positive},
                        {"negative", run.tally->negative},
                        {"positive_pct", run.tally->positive_text},
                        {"negative_pct", run.tally->negative_text}};
      } else {
        obj["tally"] = nullptr;
      }
      out << obj.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "measure,value\n" << "train_docs," << run.train_docs << '\n'
          << "test_docs," << run.test_docs << '\n';
      for (auto [name, v] : {std::pair{"precision", e.precision}, {"recall", e.recall},
                             {"f_measure", e.f_measure}, {"accuracy", e.accuracy},
                             {"kappa", e.kappa}}) {
        out << name << ',' << (v ? format_shortest(*v) : "n/a") << '\n';
      }
      if (run.tally) {
        out << "positive_pct," << run.tally->positive_text << '\n'
            << "negative_pct," << run.tally->negative_text << '\n';
      }
      break;
    case OutputFormat::table: {
      auto pct = [](const std::optional<double>& v) {
        return v ? format_fixed(100.0 * *v, 2) + "%" : std::string("n/a");
      };
      TextTable t({"measure", "value"});
      t.add_row({"precision", pct(e.precision)});
      t.add_row({"recall", pct(e.recall)});
      t.add_row({"f_measure", pct(e.f_measure)});
      t.add_row({"accuracy", pct(e.accuracy)});
      t.add_row({"kappa", e.kappa ? format_fixed(*e.kappa, 3) : "n/a"});
      t.add_row({"kappa_band", e.band ? std::string(to_string(*e.band)) : "n/a"});
      out << "held-out evaluation (" << run.train_docs << " train / " << run.test_docs
          << " test)\n"
          << t.str();
      if (run.tally) {
        TextTable s({"sentiment", "share", "messages"});
        s.add_row({"positive", run.tally->positive_text + "%", std::to_string(run.tally->positive)});
        s.add_row({"negative", run.tally->negative_text + "%", std::to_string(run.tally->negative)});
        out << "\nautomatic labeling\n" << s.str();
      }
      break;
    }
  }
  return out.str();
}

std::string to_json(const CompareReport& report) {
  nlohmann::ordered_json obj;
  obj["brands"] = report.brands;
  obj["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["property"] = r.property;
    row["direction"] = r.direction == Direction::higher ? "higher" : "lower";
    row["values"] = nlohmann::ordered_json::array();
    for (const auto& v : r.values) {
      row["values"].push_back(v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr));
    }
    row["best"] = r.best ? nlohmann::ordered_json(report.brands[*r.best])
                         : nlohmann::ordered_json(nullptr);
    row["scored"] = r.scored;
    obj["rows"].push_back(std::move(row));
  }
  nlohmann::ordered_json wins = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < report.brands.size(); ++i) wins[report.brands[i]] = report.wins[i];
  obj["wins"] = std::move(wins);
  return obj.dump();
}

CompareReport compare_report_from_json(const std::string& text) {
  const auto obj = nlohmann::json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw Error(ErrorKind::validation, "compare report is not a JSON object");
  }
  try {
    CompareReport report;
    report.brands = obj.at("brands").get<std::vector<std::string>>();
    for (const auto& row : obj.at("rows")) {
      CompareRow r;
      r.property = row.at("property").get<std::string>();
      r.direction = row.at("direction").get<std::string>() == "lower" ? Direction::lower
                                                                     : Direction::higher;
      for (const auto& v : row.at("values")) {
        r.values.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
      }
      if (!row.at("best").is_null()) {
        const auto name = row.at("best").get<std::string>();
        for (std::size_t i = 0; i < report.brands.size(); ++i) {
          if (report.brands[i] == name) r.best = i;
        }
      }
      r.scored = row.at("scored").get<bool>();
      report.rows.push_back(std::move(r));
    }
    for (const auto& name : report.brands) {
      report.wins.push_back(obj.at("wins").at(name).get<std::size_t>());
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::validation, std::string("compare report: ") + e.what());
  }
}

std::string render(const CompareReport& report, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::json:
      out << to_json(report) << '\n';
      break;
    case OutputFormat::csv:
      out << "property";
      for (const auto& b : report.brands) out << ',' << csv_escape(b);
      out << ",best\n";
      for (const auto& r : report.rows) {
        out << r.property;
        for (const auto& v : r.values) out << ',' << (v ? format_shortest(*v) : "n/a");
        out << ',' << (r.best ? csv_escape(report.brands[*r.best]) : "") << '\n';
      }
      break;
    case OutputFormat::table: {
      std::vector<std::string> header{"property"};
      for (const auto& b : report.brands) header.push_back(b);
      header.emplace_back("better");
      TextTable t(header);
      std::vector<std::string> ties;
      for (const auto& r : report.rows) {
        std::vector<std::string> cells{r.property};
        for (std::size_t i = 0; i < r.values.size(); ++i) {
          std::string cell = table_value(r.property, r.values[i]);
          if (r.best == i) cell += " *";
          cells.push_back(std::move(cell));
        }
        cells.emplace_back(r.direction == Direction::higher ? "higher" : "lower");
        t.add_row(std::move(cells));
        if (r.scored && !r.best) ties.push_back(r.property);
      }
      out << t.str() << "rows won: ";
      for (std::size_t i = 0; i < report.brands.size(); ++i) {
        out << (i ? ", " : "") << report.brands[i] << ": " << report.wins[i];
      }
      out << '\n';
      if (!ties.empty()) {
        out << "ties or undecided: ";
        for (std::size_t i = 0; i < ties.size(); ++i) out << (i ? ", " : "") << ties[i];
        out << '\n';
      }
      break;
    }
  }
  return out.str();
}

}  // namespace convograph::app
