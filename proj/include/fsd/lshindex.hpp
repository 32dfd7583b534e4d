#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fsd/vecspace.hpp"

namespace fsd {

struct LshParams {
  int bits_per_signature = 13;  ///< k, in [1, 64]
  int num_tables = 11;          ///< L, >= 1
  std::uint64_t seed = 0;
};

/// Number of hash tables needed so the probability of missing a
/// neighbor with per-hyperplane collision probability p_coll stays
/// below phi: L = ceil(ln(phi) / ln(1 - p_coll^k)), at least 1.
/// Throws DegenerateParams when p_coll^k rounds to 0 or 1.
int plan_tables(double phi, double p_coll, int bits_per_signature);

struct Signature {
  std::uint64_t bits;  ///< only the low k bits may be nonzero
  int table_index;
};

/// k-bit random-hyperplane signature of v in one table. Hyperplane
/// components are a deterministic {-1,+1} hash of (seed, table, bit,
/// term id); bit b is 1 iff the projection onto hyperplane b is > 0.
Signature signature(const TermVector& v, int table_index,
                    const LshParams& params);

/// Signatures for all L tables.
std::vector<std::uint64_t> signature_block(const TermVector& v,
                                           const LshParams& params);
/// Serial reference for signature_block.
std::vector<std::uint64_t> signature_block_serial(const TermVector& v,
                                                  const LshParams& params);

/// Multi-table signature index. Documents are stored once, in
/// insertion order; buckets hold ordinals into that store.
class LshIndex {
public:
  struct Stored {
    std::string doc_id;
    TermVector vec;
  };

  explicit LshIndex(LshParams params);

  const LshParams& params() const { return params_; }
  std::size_t size() const { return store_.size(); }
  bool contains(std::string_view doc_id) const {
    return by_id_.find(doc_id) != by_id_.end();
  }
  const Stored& doc(std::uint32_t ordinal) const { return store_[ordinal]; }

  /// Appends (doc_id, v) to the matching bucket of every table.
  /// Throws DuplicateDoc when doc_id was inserted before.
  void insert(std::string doc_id, TermVector v);

  /// Union of the buckets matching q across all tables: deduplicated
  /// ordinals in ascending insertion order.
  std::vector<std::uint32_t> candidates(const TermVector& q) const;

  /// Every stored ordinal (exhaustive-scan support).
  std::vector<std::uint32_t> all_docs() const;

  /// Bucket map of one table (test introspection).
  const std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>& table(
      int t) const {
    return tables_.at(static_cast<std::size_t>(t));
  }

private:
  LshParams params_;
  std::vector<Stored> store_;
  std::vector<std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>>
      tables_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>
      by_id_;
};

}  // namespace fsd
