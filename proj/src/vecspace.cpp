#include "fsd/vecspace.hpp"

#include <algorithm>
#include <cmath>

#include "fsd/errors.hpp"

namespace fsd {

void VectorSpaceState::absorb(std::span<const TokenBag> batch) {
  for (const TokenBag& bag : batch) {
    total_docs_++;
    for (const auto& [term, count] : bag) {
      TermId id = vocab_.intern(term);
      if (id >= doc_freq_.size()) doc_freq_.resize(id + 1, 0);
      doc_freq_[id]++;
    }
  }
}

double VectorSpaceState::idf(TermId id) const {
  const std::uint32_t df = doc_freq(id);
  if (df == 0)
    throw UnknownTerm("idf of term " + std::to_string(id) +
                      " queried before absorption");
  return std::log10(static_cast<double>(total_docs_) /
                    static_cast<double>(df));
}

TermVector VectorSpaceState::weigh(const TokenBag& bag,
                                   std::string_view doc_id) const {
  std::vector<std::pair<TermId, double>> raw;
  raw.reserve(bag.size());
  for (const auto& [term, count] : bag) {
    auto id = vocab_.find(term);
    if (!id) throw UnknownTerm("term \"" + term + "\" weighted before absorption");
    double w = (std::log10(static_cast<double>(count)) + 1.0) * idf(*id);
    if (w != 0.0) raw.emplace_back(*id, w);
  }
  std::sort(raw.begin(), raw.end());
  TermVector v;
  v.doc_id = std::string(doc_id);
  v.entries = l2_normalized(std::move(raw));
  return v;
}

TokenBag VectorSpaceState::known_terms(const TokenBag& bag) const {
  TokenBag known;
  for (const auto& [term, count] : bag) {
    auto id = vocab_.find(term);
    if (id && doc_freq(*id) > 0) known.emplace(term, count);
  }
  return known;
}

std::vector<std::pair<TermId, double>> l2_normalized(
    std::vector<std::pair<TermId, double>> entries) {
  double normsq = 0.0;
  for (const auto& [id, w] : entries) normsq += w * w;
  if (normsq == 0.0) return entries;
  const double norm = std::sqrt(normsq);
  for (auto& [id, w] : entries) w /= norm;
  return entries;
}

double cosine(const TermVector& a, const TermVector& b) {
  double normsq_a = 0.0, normsq_b = 0.0;
  for (const auto& [id, w] : a.entries) normsq_a += w * w;
  for (const auto& [id, w] : b.entries) normsq_b += w * w;
  if (normsq_a == 0.0 || normsq_b == 0.0) return 0.0;

  double dot = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::clamp(dot / std::sqrt(normsq_a * normsq_b), 0.0, 1.0);
}

}  // namespace fsd
