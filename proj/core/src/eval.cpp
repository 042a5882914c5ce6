#include "convograph/eval.hpp"

#include <sstream>

#include <json.hpp>

#include "convograph/error.hpp"
#include "convograph/number_format.hpp"

namespace convograph {
namespace {

std::optional<double> ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

std::optional<double> mean(std::optional<double> a, std::optional<double> b) {
  if (!a || !b) return std::nullopt;
  return (*a + *b) / 2.0;
}

std::string render_basis_points(std::uint64_t bp) {
  std::string frac = std::to_string(bp % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(bp / 100) + "." + frac;
}

std::string kv(const std::optional<double>& v) { return v ? format_shortest(*v) : "n/a"; }

nlohmann::json jv(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> golds, std::span<const Label> preds) {
  if (golds.size() != preds.size()) {
    throw Error(ErrorKind::validation, "gold and predicted label counts differ (" +
                                           std::to_string(golds.size()) + " vs " +
                                           std::to_string(preds.size()) + ")");
  }
  if (golds.empty()) throw Error(ErrorKind::validation, "no labels to compare");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    const bool gold_pos = golds[i] == Label::positive;
    const bool pred_pos = preds[i] == Label::positive;
    if (gold_pos && pred_pos) ++m.tp;
    else if (!gold_pos && pred_pos) ++m.fp;
    else if (gold_pos) ++m.fn;
    else ++m.tn;
  }
  return m;
}

std::string_view to_string(KappaBand band) noexcept {
  switch (band) {
    case KappaBand::poor: return "poor";
    case KappaBand::fair: return "fair";
    case KappaBand::moderate: return "moderate";
    case KappaBand::substantial: return "substantial";
    case KappaBand::almost_perfect: return "almost-perfect";
  }
  return "poor";
}

KappaBand kappa_band(double kappa) noexcept {
  if (kappa > 0.80) return KappaBand::almost_perfect;
  if (kappa > 0.60) return KappaBand::substantial;
  if (kappa > 0.40) return KappaBand::moderate;
  if (kappa > 0.20) return KappaBand::fair;
  return KappaBand::poor;
}

EvalReport evaluate(const ConfusionMatrix& m, Averaging averaging) {
  if (m.total() == 0) throw Error(ErrorKind::validation, "confusion matrix is empty");
  const auto tp = static_cast<double>(m.tp);
  const auto fp = static_cast<double>(m.fp);
  const auto fn = static_cast<double>(m.fn);
  const auto tn = static_cast<double>(m.tn);
  const auto total = static_cast<double>(m.total());

  EvalReport r;
  r.matrix = m;
  r.averaging = averaging;
  if (averaging == Averaging::positive_class) {
    r.precision = ratio(tp, tp + fp);
    r.recall = ratio(tp, tp + fn);
  } else {
    r.precision = mean(ratio(tp, tp + fp), ratio(tn, tn + fn));
    r.recall = mean(ratio(tp, tp + fn), ratio(tn, tn + fp));
  }
  if (r.precision && r.recall) {
    r.f_measure = ratio(2.0 * *r.precision * *r.recall, *r.precision + *r.recall);
  }
  r.accuracy = (tp + tn) / total;

  // kappa = (p_o - p_e) / (1 - p_e), multiplied through by total^2.
  const double chance = (tp + fn) * (tp + fp) + (fp + tn) * (fn + tn);
  r.kappa = ratio(total * (tp + tn) - chance, total * total - chance);
  if (r.kappa) r.band = kappa_band(*r.kappa);
  return r;
}

std::string to_key_value(const EvalReport& r) {
  std::ostringstream out;
  out << "precision\t" << kv(r.precision) << '\n'
      << "recall\t" << kv(r.recall) << '\n'
      << "f_measure\t" << kv(r.f_measure) << '\n'
      << "accuracy\t" << kv(r.accuracy) << '\n'
      << "kappa\t" << kv(r.kappa) << '\n'
      << "kappa_band\t" << (r.band ? std::string(to_string(*r.band)) : "n/a") << '\n';
  return out.str();
}

std::string to_json(const EvalReport& r) {
  nlohmann::ordered_json obj;
  obj["averaging"] = r.averaging == Averaging::macro ? "macro" : "positive_class";
  obj["tp"] = r.matrix.tp;
  obj["fp"] = r.matrix.fp;
  obj["fn"] = r.matrix.fn;
  obj["tn"] = r.matrix.tn;
  obj["precision"] = jv(r.precision);
  obj["recall"] = jv(r.recall);
  obj["f_measure"] = jv(r.f_measure);
  obj["accuracy"] = jv(r.accuracy);
  obj["kappa"] = jv(r.kappa);
  obj["kappa_band"] = r.band ? nlohmann::json(to_string(*r.band)) : nlohmann::json(nullptr);
  return obj.dump();
}

EvalReport eval_report_from_json(std::string_view text) {
  const auto obj = nlohmann::json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw Error(ErrorKind::validation, "evaluation report is not a JSON object");
  }
  auto opt = [&](const char* key) -> std::optional<double> {
    const auto& v = obj.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  try {
    EvalReport r;
    r.averaging = obj.at("averaging").get<std::string>() == "macro" ? Averaging::macro
                                                                   : Averaging::positive_class;
    r.matrix = {obj.at("tp").get<std::uint64_t>(), obj.at("fp").get<std::uint64_t>(),
                obj.at("fn").get<std::uint64_t>(), obj.at("tn").get<std::uint64_t>()};
    r.precision = opt("precision");
    r.recall = opt("recall");
    r.f_measure = opt("f_measure");
    r.accuracy = opt("accuracy");
    r.kappa = opt("kappa");
    if (r.kappa) r.band = kappa_band(*r.kappa);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::validation, std::string("evaluation report: ") + e.what());
  }
}

SentimentShare sentiment_percentages(std::uint64_t positive, std::uint64_t negative) {
  const std::uint64_t total = positive + negative;
  if (total == 0) {
    throw Error(ErrorKind::validation, "sentiment tally needs at least one labeled message");
  }
  SentimentShare s;
  s.positive = positive;
  s.negative = negative;
  s.positive_pct = 100.0 * static_cast<double>(positive) / static_cast<double>(total);
  s.negative_pct = 100.0 - s.positive_pct;
  // Round half-up in integer basis points: floor(10000 * pos / total + 1/2).
  const std::uint64_t bp = (20000 * positive + total) / (2 * total);
  s.positive_text = render_basis_points(bp);
  s.negative_text = render_basis_points(10000 - bp);
  return s;
}

}  // namespace convograph
