#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convograph/ingest.hpp"
#include "convograph/textprep.hpp"

namespace convograph {

constexpr std::size_t index_of(Label label) noexcept {
  return label == Label::positive ? 1 : 0;
}

/// Multinomial Naive Bayes parameters. Per-class arrays are indexed with
/// index_of(Label).
struct SentimentModel {
  double smoothing_alpha = 1.0;
  std::array<std::uint64_t, 2> class_doc_counts{};
  std::array<double, 2> class_priors{};
  std::array<std::map<std::string, std::uint64_t>, 2> token_counts;
  std::array<std::uint64_t, 2> class_token_totals{};
  std::set<std::string> vocabulary;
  std::string pipeline_digest;

  double prior(Label label) const { return class_priors[index_of(label)]; }
  std::uint64_t count(Label label, const std::string& token) const;

  friend bool operator==(const SentimentModel&, const SentimentModel&) = default;
};

struct Prediction {
  Label label = Label::positive;
  /// Unnormalized log posterior per class (index_of(Label)).
  std::array<double, 2> log_scores{};
  /// Normalized posterior of the chosen label.
  double confidence = 1.0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct CorpusSplit {
  std::vector<LabeledDocument> train;
  std::vector<LabeledDocument> test;
};

/// Stratified split: each class keeps floor(train_fraction * n_class)
/// documents for training, chosen by a seeded shuffle. Both halves keep
/// corpus order. Throws Error{stratification} when a class has < 2 docs.
CorpusSplit split(std::span<const LabeledDocument> corpus, double train_fraction,
                  std::uint64_t seed);

/// Counts term frequencies of preprocessed tokens per class. Throws
/// Error{training} for a single-class corpus or one with no tokens left.
SentimentModel train(std::span<const LabeledDocument> train_docs, const TokenPipelineConfig& cfg,
                     double alpha = 1.0);

/// Log-space scoring with additive smoothing. Ties go to positive; an empty
/// document falls back to the priors.
Prediction predict(const SentimentModel& model, std::string_view text,
                   const TokenPipelineConfig& cfg);
Prediction predict_tokens(const SentimentModel& model, std::span<const std::string> tokens);

struct RecordPrediction {
  std::string record_id;
  Prediction prediction;
};

std::vector<RecordPrediction> label_corpus(const SentimentModel& model,
                                           std::span<const InteractionRecord> records,
                                           const TokenPipelineConfig& cfg);

/// Versioned JSON document.
std::string to_json(const SentimentModel& model);
/// Throws Error{validation} on malformed input or when `active` is given and
/// its digest differs from the one the model was trained with.
SentimentModel model_from_json(std::string_view text, const TokenPipelineConfig* active = nullptr);

std::string to_json(const Prediction& prediction);

}  // namespace convograph
