#include "fsd/detector.hpp"

#include <algorithm>
#include <stdexcept>

#include "fsd/errors.hpp"
#include "fsd/parallel.hpp"

namespace fsd {

namespace {

std::pair<double, std::optional<std::uint32_t>> pick_nearest(
    std::span<const double> dist, std::span<const std::uint32_t> ordinals) {
  double best = 1.0;
  std::optional<std::uint32_t> nearest;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    // strict < keeps the earliest-inserted ordinal on ties
    if (!nearest || dist[i] < best) {
      best = dist[i];
      nearest = ordinals[i];
    }
  }
  return {nearest ? best : 1.0, nearest};
}

}  // namespace

std::pair<double, std::optional<std::uint32_t>> score_candidates(
    const TermVector& q, std::span<const std::uint32_t> ordinals,
    const LshIndex& index) {
  if (ordinals.empty()) return {1.0, std::nullopt};
  std::vector<double> dist(ordinals.size());
  const auto n = static_cast<std::int64_t>(ordinals.size());
#pragma omp parallel for schedule(static) if (n >= 256)
  for (std::int64_t i = 0; i < n; ++i)
    dist[static_cast<std::size_t>(i)] =
        1.0 - cosine(q, index.doc(ordinals[static_cast<std::size_t>(i)]).vec);
  return pick_nearest(dist, ordinals);
}

std::pair<double, std::optional<std::uint32_t>> score_candidates_serial(
    const TermVector& q, std::span<const std::uint32_t> ordinals,
    const LshIndex& index) {
  if (ordinals.empty()) return {1.0, std::nullopt};
  std::vector<double> dist(ordinals.size());
  for (std::size_t i = 0; i < ordinals.size(); ++i)
    dist[i] = 1.0 - cosine(q, index.doc(ordinals[i]).vec);
  return pick_nearest(dist, ordinals);
}

Detector::Detector(DetectorConfig config, const StopwordList& stoplist)
    : config_(config), stoplist_(stoplist), index_(config.lsh) {
  if (config_.threshold < 0.0 || config_.threshold > 1.0)
    throw std::invalid_argument("threshold must be in [0, 1]");
  if (config_.batch_size < 1)
    throw std::invalid_argument("batch_size must be >= 1");
  if (config_.mode == WeightingMode::kStatic && config_.train_prefix == 0)
    training_done_ = true;
}

std::vector<Verdict> Detector::process(const Document& doc) {
  if (doc.id.empty()) throw std::invalid_argument("document id is empty");
  if (!seen_ids_.insert(doc.id).second)
    throw DuplicateDoc("document already processed: " + doc.id);
  docs_seen_++;

  TokenBag bag = preprocess(doc.text, stoplist_);

  if (config_.mode == WeightingMode::kStatic && training_done_) {
    // Frozen model: unseen terms carry zero weight and are dropped.
    TermVector vec = state_.weigh(state_.known_terms(bag), doc.id);
    return {judge_and_insert(doc.id, bag, std::move(vec))};
  }

  pending_.push_back(Pending{doc.id, std::move(bag)});
  const std::size_t boundary = config_.mode == WeightingMode::kStatic
                                   ? config_.train_prefix
                                   : static_cast<std::size_t>(config_.batch_size);
  if (pending_.size() >= boundary) return flush();
  return {};
}

std::vector<Verdict> Detector::finish() {
  if (pending_.empty()) return {};
  return flush();
}

// Absorbs the pending batch, then weighs and judges its documents in
// order. Absorption precedes weighting, so every term of every batch
// document has df >= 1 at its weighting time.
std::vector<Verdict> Detector::flush() {
  std::vector<TokenBag> bags;
  bags.reserve(pending_.size());
  for (const auto& p : pending_) bags.push_back(p.bag);
  state_.absorb(bags);
  if (config_.mode == WeightingMode::kStatic) training_done_ = true;

  std::vector<TermVector> vecs(pending_.size());
  const auto n = static_cast<std::int64_t>(pending_.size());
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& p = pending_[static_cast<std::size_t>(i)];
    vecs[static_cast<std::size_t>(i)] = state_.weigh(p.bag, p.doc_id);
  }

  std::vector<Verdict> verdicts;
  verdicts.reserve(pending_.size());
  for (std::size_t i = 0; i < pending_.size(); ++i)
    verdicts.push_back(judge_and_insert(std::move(pending_[i].doc_id),
                                        pending_[i].bag, std::move(vecs[i])));
  pending_.clear();
  return verdicts;
}

Verdict Detector::judge_and_insert(std::string doc_id, const TokenBag& bag,
                                   TermVector vec) {
  Verdict verdict;
  verdict.doc_id = doc_id;
  if (bag.empty()) {
    verdict.empty_doc = true;
    verdict.is_novel = true;
    verdict.novelty_score = 1.0;
    return verdict;
  }

  const auto cands =
      config_.exhaustive ? index_.all_docs() : index_.candidates(vec);
  auto [dist, nearest] = score_candidates(vec, cands, index_);
  verdict.novelty_score = dist;
  verdict.is_novel = dist >= config_.threshold;
  if (nearest) verdict.nearest_id = index_.doc(*nearest).doc_id;

  // Indexed after the verdict: a document never matches itself.
  // Zero vectors are unmatchable (cosine 0 to everything) and skipped.
  if (!vec.zero()) index_.insert(std::move(doc_id), std::move(vec));
  return verdict;
}

std::vector<Verdict> run_stream(std::span<const Document> docs,
                                const DetectorConfig& config,
                                const StopwordList& stoplist) {
  Detector detector(config, stoplist);
  std::vector<Verdict> verdicts;
  verdicts.reserve(docs.size());
  for (const Document& doc : docs) {
    auto batch = detector.process(doc);
    std::move(batch.begin(), batch.end(), std::back_inserter(verdicts));
  }
  auto tail = detector.finish();
  std::move(tail.begin(), tail.end(), std::back_inserter(verdicts));
  return verdicts;
}

}  // namespace fsd
