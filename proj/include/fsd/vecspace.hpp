#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fsd/textprep.hpp"

namespace fsd {

using TermId = std::uint32_t;

/// Term -> dense id bijection; ids assigned in first-seen order and
/// never change.
class Vocabulary {
public:
  std::optional<TermId> find(std::string_view term) const {
    auto it = ids_.find(term);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  /// Returns the existing id or assigns the next free one.
  TermId intern(std::string_view term) {
    auto it = ids_.find(term);
    if (it != ids_.end()) return it->second;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.emplace_back(term);
    ids_.emplace(terms_.back(), id);
    return id;
  }

  const std::string& term(TermId id) const { return terms_.at(id); }
  std::size_t size() const { return terms_.size(); }

private:
  std::unordered_map<std::string, TermId, StringHash, std::equal_to<>> ids_;
  std::vector<std::string> terms_;
};

/// Sparse L2-normalized term-weight vector; entries ascending by term id.
struct TermVector {
  std::string doc_id;
  std::vector<std::pair<TermId, double>> entries;

  bool zero() const { return entries.empty(); }
};

/// Document-frequency statistics of the stream absorbed so far.
class VectorSpaceState {
public:
  std::uint64_t total_docs() const { return total_docs_; }
  std::uint32_t doc_freq(TermId id) const {
    return id < doc_freq_.size() ? doc_freq_[id] : 0;
  }
  const Vocabulary& vocab() const { return vocab_; }

  /// Adds |batch| to the document count and one df count per batch
  /// document containing a term. New terms get fresh ids.
  void absorb(std::span<const TokenBag> batch);
  void absorb_one(const TokenBag& bag) { absorb({&bag, 1}); }

  /// log10(total_docs / df). Throws UnknownTerm when df == 0.
  double idf(TermId id) const;

  /// Weight per term: (log10(tf) + 1) * idf, L2-normalized.
  /// Zero-weight terms are dropped; an all-zero document yields an
  /// empty (zero) vector. Throws UnknownTerm for unabsorbed terms.
  TermVector weigh(const TokenBag& bag, std::string_view doc_id) const;

  /// Drops terms with df == 0 (static-mode queries against a frozen model).
  TokenBag known_terms(const TokenBag& bag) const;

private:
  Vocabulary vocab_;
  std::vector<std::uint32_t> doc_freq_;
  std::uint64_t total_docs_ = 0;
};

/// Divides by the L2 norm; all-zero input is returned unchanged.
std::vector<std::pair<TermId, double>> l2_normalized(
    std::vector<std::pair<TermId, double>> entries);

/// Cosine similarity in [0, 1]; 0 when either vector is zero.
double cosine(const TermVector& a, const TermVector& b);

}  // namespace fsd
