#include "convograph/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <json.hpp>

#include "convograph/error.hpp"
#include "convograph/seeded.hpp"

namespace convograph {
namespace {

constexpr int kModelFormatVersion = 1;
constexpr std::array kLabels = {Label::negative, Label::positive};

}  // namespace

std::uint64_t SentimentModel::count(Label label, const std::string& token) const {
  const auto& counts = token_counts[index_of(label)];
  auto it = counts.find(token);
  return it == counts.end() ? 0 : it->second;
}

CorpusSplit split(std::span<const LabeledDocument> corpus, double train_fraction,
                  std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorKind::validation, "train fraction must lie strictly between 0 and 1");
  }
  if (corpus.empty()) throw Error(ErrorKind::empty_input, "cannot split an empty corpus");

  std::mt19937_64 rng(seed);
  std::vector<bool> in_train(corpus.size(), false);
  for (Label label : kLabels) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].label == label) members.push_back(i);
    }
    if (members.size() < 2) {
      throw Error(ErrorKind::stratification,
                  "class '" + std::string(to_string(label)) + "' has " +
                      std::to_string(members.size()) + " document(s); need at least 2");
    }
    seeded_shuffle(std::span<std::size_t>(members), rng);
    const auto keep = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(members.size())));
    for (std::size_t k = 0; k < keep; ++k) in_train[members[k]] = true;
  }

  CorpusSplit out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (in_train[i] ? out.train : out.test).push_back(corpus[i]);
  }
  return out;
}

SentimentModel train(std::span<const LabeledDocument> train_docs, const TokenPipelineConfig& cfg,
                     double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::validation, "smoothing alpha must be finite and >= 0");
  }
  SentimentModel model;
  model.smoothing_alpha = alpha;
  model.pipeline_digest = cfg.digest();

  for (const auto& doc : train_docs) {
    const std::size_t c = index_of(doc.label);
    ++model.class_doc_counts[c];
    for (auto& token : preprocess(doc.text, cfg)) {
      ++model.class_token_totals[c];
      model.vocabulary.insert(token);
      ++model.token_counts[c][std::move(token)];
    }
  }
  if (model.class_doc_counts[0] == 0 || model.class_doc_counts[1] == 0) {
    throw Error(ErrorKind::training, "training needs documents of both classes");
  }
  if (model.vocabulary.empty()) {
    throw Error(ErrorKind::training, "no tokens left after preprocessing the training corpus");
  }
  const auto docs = static_cast<double>(model.class_doc_counts[0] + model.class_doc_counts[1]);
  for (std::size_t c = 0; c < 2; ++c) {
    model.class_priors[c] = static_cast<double>(model.class_doc_counts[c]) / docs;
  }
  return model;
}

Prediction predict_tokens(const SentimentModel& model, std::span<const std::string> tokens) {
  const double alpha = model.smoothing_alpha;
  const auto vocab = static_cast<double>(model.vocabulary.size());
  Prediction p;
  for (Label label : kLabels) {
    const std::size_t c = index_of(label);
    const double denom = static_cast<double>(model.class_token_totals[c]) + alpha * vocab;
    double score = std::log(model.class_priors[c]);
    for (const auto& token : tokens) {
      score += std::log((static_cast<double>(model.count(label, token)) + alpha) / denom);
    }
    p.log_scores[c] = score;
  }
  const double pos = p.log_scores[index_of(Label::positive)];
  const double neg = p.log_scores[index_of(Label::negative)];
  p.label = pos >= neg || (std::isnan(pos) && std::isnan(neg)) ? Label::positive : Label::negative;
  const double chosen = std::max(pos, neg);
  const double other = std::min(pos, neg);
  if (chosen == -std::numeric_limits<double>::infinity()) {
    p.confidence = 0.5;  // both classes ruled out (alpha = 0 with unseen tokens)
  } else {
    p.confidence = 1.0 / (1.0 + std::exp(other - chosen));
  }
  return p;
}

Prediction predict(const SentimentModel& model, std::string_view text,
                   const TokenPipelineConfig& cfg) {
  const auto tokens = preprocess(text, cfg);
  return predict_tokens(model, tokens);
}

std::vector<RecordPrediction> label_corpus(const SentimentModel& model,
                                           std::span<const InteractionRecord> records,
                                           const TokenPipelineConfig& cfg) {
  std::vector<RecordPrediction> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back({rec.id, predict(model, rec.text, cfg)});
  return out;
}

std::string to_json(const SentimentModel& model) {
  nlohmann::ordered_json obj;
  obj["format"] = "convograph-naive-bayes";
  obj["version"] = kModelFormatVersion;
  obj["alpha"] = model.smoothing_alpha;
  obj["pipeline_digest"] = model.pipeline_digest;
  for (Label label : kLabels) {
    const std::size_t c = index_of(label);
    const std::string name(to_string(label));
    obj["class_doc_counts"][name] = model.class_doc_counts[c];
    obj["class_priors"][name] = model.class_priors[c];
    obj["class_token_totals"][name] = model.class_token_totals[c];
    obj["token_counts"][name] = model.token_counts[c];
  }
  obj["vocabulary"] = model.vocabulary;
  return obj.dump(1);
}

SentimentModel model_from_json(std::string_view text, const TokenPipelineConfig* active) {
  const auto obj = nlohmann::json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw Error(ErrorKind::validation, "model file is not a JSON object");
  }
  SentimentModel model;
  try {
    if (obj.at("format").get<std::string>() != "convograph-naive-bayes") {
      throw Error(ErrorKind::validation, "not a convograph model file");
    }
    if (obj.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorKind::validation,
                  "unsupported model version " + obj.at("version").dump());
    }
    model.smoothing_alpha = obj.at("alpha").get<double>();
    model.pipeline_digest = obj.at("pipeline_digest").get<std::string>();
    for (Label label : kLabels) {
      const std::size_t c = index_of(label);
      const std::string name(to_string(label));
      model.class_doc_counts[c] = obj.at("class_doc_counts").at(name).get<std::uint64_t>();
      model.class_priors[c] = obj.at("class_priors").at(name).get<double>();
      model.class_token_totals[c] = obj.at("class_token_totals").at(name).get<std::uint64_t>();
      model.token_counts[c] =
          obj.at("token_counts").at(name).get<std::map<std::string, std::uint64_t>>();
    }
    model.vocabulary = obj.at("vocabulary").get<std::set<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::validation, std::string("model file: ") + e.what());
  }

  for (std::size_t c = 0; c < 2; ++c) {
    std::uint64_t sum = 0;
    for (const auto& [token, n] : model.token_counts[c]) {
      if (!model.vocabulary.contains(token)) {
        throw Error(ErrorKind::validation, "model file: token '" + token + "' not in vocabulary");
      }
      sum += n;
    }
    if (sum != model.class_token_totals[c]) {
      throw Error(ErrorKind::validation, "model file: token totals do not match counts");
    }
  }
  if (active != nullptr && active->digest() != model.pipeline_digest) {
    throw Error(ErrorKind::validation,
                "model was trained with pipeline " + model.pipeline_digest +
                    " but the active pipeline is " + active->digest());
  }
  return model;
}

std::string to_json(const Prediction& prediction) {
  auto score = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  nlohmann::ordered_json obj;
  obj["label"] = to_string(prediction.label);
  obj["log_score_positive"] = score(prediction.log_scores[index_of(Label::positive)]);
  obj["log_score_negative"] = score(prediction.log_scores[index_of(Label::negative)]);
  obj["confidence"] = prediction.confidence;
  return obj.dump();
}

}  // namespace convograph
