#include <benchmark/benchmark.h>

#include <random>

#include "convograph/classify.hpp"
#include "convograph/textprep.hpp"

using namespace convograph;

namespace {

const std::vector<std::string> kWords{
    "bayar", "pembayaran", "bertransaksi", "mudah", "gagal", "saldo", "promo", "cashback",
    "aplikasi", "error", "lambat", "cepat", "dan", "yang", "di", "@ovo_id", "https://t.co/x",
    "kemudahan", "dikembalikan", "bagus"};

std::string random_text(std::mt19937_64& rng, std::size_t words) {
  std::string text;
  for (std::size_t i = 0; i < words; ++i) text += kWords[rng() % kWords.size()] + " ";
  return text;
}

std::vector<LabeledDocument> corpus(std::size_t docs) {
  std::mt19937_64 rng(3);
  std::vector<LabeledDocument> out;
  for (std::size_t i = 0; i < docs; ++i)
    out.push_back({random_text(rng, 15), i % 2 ? Label::positive : Label::negative});
  return out;
}

void BM_Preprocess(benchmark::State& state) {
  const auto cfg = TokenPipelineConfig::load_default();
  std::mt19937_64 rng(1);
  const std::string text = random_text(rng, 30);
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(text, cfg));
}
BENCHMARK(BM_Preprocess);

void BM_Train(benchmark::State& state) {
  const auto cfg = TokenPipelineConfig::load_default();
  const auto docs = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(train(docs, cfg));
}
BENCHMARK(BM_Train)->Arg(1'000)->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
  const auto cfg = TokenPipelineConfig::load_default();
  const auto model = train(corpus(1'000), cfg);
  std::mt19937_64 rng(2);
  const std::string text = random_text(rng, 30);
  for (auto _ : state) benchmark::DoNotOptimize(predict(model, text, cfg));
}
BENCHMARK(BM_Predict);

}  // namespace
