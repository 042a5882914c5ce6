#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "convograph/ingest.hpp"

namespace convograph {

/// Two-class confusion counts with "positive" as the positive class.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  /// The same outcomes with the class designations exchanged.
  ConfusionMatrix swapped() const noexcept { return {tn, fn, fp, tp}; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws Error{validation} when the sequences differ in length or are empty.
ConfusionMatrix confusion(std::span<const Label> golds, std::span<const Label> preds);

/// Landis-Koch bands with "slight" folded into poor.
enum class KappaBand { poor, fair, moderate, substantial, almost_perfect };

std::string_view to_string(KappaBand band) noexcept;
KappaBand kappa_band(double kappa) noexcept;

enum class Averaging {
  positive_class,  // precision/recall of the positive class
  macro,           // unweighted mean over both classes
};

struct EvalReport {
  ConfusionMatrix matrix;
  Averaging averaging = Averaging::positive_class;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f_measure;
  std::optional<double> accuracy;
  std::optional<double> kappa;
  std::optional<KappaBand> band;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Zero denominators leave the affected measure empty. Throws
/// Error{validation} for an all-zero matrix.
EvalReport evaluate(const ConfusionMatrix& m, Averaging averaging = Averaging::positive_class);

std::string to_key_value(const EvalReport& report);
std::string to_json(const EvalReport& report);
EvalReport eval_report_from_json(std::string_view text);

/// Positive/negative shares rounded half-up to two decimals; the negative
/// text is the complement, so the pair always sums to 100.00.
struct SentimentShare {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  double positive_pct = 0.0;
  double negative_pct = 0.0;
  std::string positive_text;  // e.g. "36.00"
  std::string negative_text;
};

/// Throws Error{validation} when both counts are zero.
SentimentShare sentiment_percentages(std::uint64_t positive, std::uint64_t negative);

}  // namespace convograph
