#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fsd/document.hpp"
#include "fsd/lshindex.hpp"
#include "fsd/textprep.hpp"
#include "fsd/vecspace.hpp"

namespace fsd {

enum class WeightingMode {
  kStatic,       ///< model frozen after the training prefix
  kIncremental,  ///< model absorbs every batch as it arrives
};

struct DetectorConfig {
  double threshold = 0.5;  ///< cosine-distance threshold t in [0, 1]
  LshParams lsh;
  WeightingMode mode = WeightingMode::kIncremental;
  int batch_size = 1;             ///< incremental model-update granularity
  std::size_t train_prefix = 500;  ///< static mode: docs building the model
  bool exhaustive = false;  ///< score against every stored doc (1-NN oracle)
};

struct Verdict {
  std::string doc_id;
  bool is_novel = true;
  std::optional<std::string> nearest_id;
  double novelty_score = 1.0;  ///< min cosine distance; 1.0 with no candidate
  bool empty_doc = false;      ///< TokenBag was empty after preprocessing
};

/// Minimum cosine distance over the given candidates and the
/// minimizing ordinal; ties broken by earliest insertion. (1.0, none)
/// on an empty candidate set.
std::pair<double, std::optional<std::uint32_t>> score_candidates(
    const TermVector& q, std::span<const std::uint32_t> ordinals,
    const LshIndex& index);
/// Serial reference for score_candidates.
std::pair<double, std::optional<std::uint32_t>> score_candidates_serial(
    const TermVector& q, std::span<const std::uint32_t> ordinals,
    const LshIndex& index);

/// Streaming first-story detector: absorb, weigh, hash, retrieve,
/// score, decide. Documents of a batch are absorbed together before
/// any of them is weighted; each verdict is emitted before its
/// document enters the index, so no document can match itself.
class Detector {
public:
  Detector(DetectorConfig config, const StopwordList& stoplist);

  /// Feeds one document. Returns the verdicts completed by this call:
  /// empty while a batch is filling, the whole batch at a boundary.
  /// With batch_size 1 (default), exactly one verdict per call.
  /// Throws DuplicateDoc for a repeated id.
  std::vector<Verdict> process(const Document& doc);

  /// Flushes a partially filled final batch.
  std::vector<Verdict> finish();

  const VectorSpaceState& state() const { return state_; }
  const LshIndex& index() const { return index_; }
  const DetectorConfig& config() const { return config_; }

private:
  struct Pending {
    std::string doc_id;
    TokenBag bag;
  };

  std::vector<Verdict> flush();
  Verdict judge_and_insert(std::string doc_id, const TokenBag& bag,
                           TermVector vec);

  DetectorConfig config_;
  const StopwordList& stoplist_;
  VectorSpaceState state_;
  LshIndex index_;
  std::vector<Pending> pending_;
  std::unordered_set<std::string, StringHash, std::equal_to<>> seen_ids_;
  std::size_t docs_seen_ = 0;
  bool training_done_ = false;
};

/// Runs the whole stream through a fresh detector; one verdict per
/// document, in input order.
std::vector<Verdict> run_stream(std::span<const Document> docs,
                                const DetectorConfig& config,
                                const StopwordList& stoplist);

}  // namespace fsd
