#include "fsd/lshindex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fsd/errors.hpp"
#include "fsd/parallel.hpp"

namespace fsd {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// 64 hyperplane components for (seed, table, term) at once: bit b of
// the result is the {-1,+1} sign of hyperplane b on this term's axis.
inline std::uint64_t hyperplane_signs(std::uint64_t table_base, TermId term) {
  return mix64(table_base + term);
}

inline std::uint64_t table_base(std::uint64_t seed, int table_index) {
  return mix64(mix64(seed) ^ static_cast<std::uint64_t>(table_index + 1));
}

void check_params(const LshParams& p) {
  if (p.bits_per_signature < 1 || p.bits_per_signature > 64)
    throw std::invalid_argument("bits_per_signature must be in [1, 64]");
  if (p.num_tables < 1)
    throw std::invalid_argument("num_tables must be >= 1");
}

std::uint64_t signature_bits(const TermVector& v, std::uint64_t base, int k) {
  std::array<double, 64> proj{};
  for (const auto& [term, w] : v.entries) {
    const std::uint64_t signs = hyperplane_signs(base, term);
    for (int b = 0; b < k; ++b)
      proj[static_cast<std::size_t>(b)] += ((signs >> b) & 1u) ? w : -w;
  }
  std::uint64_t bits = 0;
  for (int b = 0; b < k; ++b)
    if (proj[static_cast<std::size_t>(b)] > 0.0)  // projection 0 -> bit 0
      bits |= (1ull << b);
  return bits;
}

}  // namespace

int plan_tables(double phi, double p_coll, int bits_per_signature) {
  if (!(phi > 0.0 && phi < 1.0))
    throw std::invalid_argument("phi must be in (0, 1)");
  if (!(p_coll > 0.0 && p_coll < 1.0))
    throw std::invalid_argument("p_coll must be in (0, 1)");
  if (bits_per_signature < 1 || bits_per_signature > 64)
    throw std::invalid_argument("bits_per_signature must be in [1, 64]");

  const double pk = std::pow(p_coll, bits_per_signature);
  if (!(pk > 0.0) || !(pk < 1.0))
    throw DegenerateParams("p_coll^k rounds to 0 or 1");
  const double tables = std::ceil(std::log(phi) / std::log1p(-pk));
  if (tables > static_cast<double>(std::numeric_limits<int>::max()))
    throw DegenerateParams("required table count exceeds integer range");
  return std::max(1, static_cast<int>(tables));
}

Signature signature(const TermVector& v, int table_index,
                    const LshParams& params) {
  check_params(params);
  if (table_index < 0 || table_index >= params.num_tables)
    throw std::out_of_range("table_index outside [0, L)");
  return Signature{
      signature_bits(v, table_base(params.seed, table_index),
                     params.bits_per_signature),
      table_index};
}

std::vector<std::uint64_t> signature_block(const TermVector& v,
                                           const LshParams& params) {
  check_params(params);
  const int tables = params.num_tables;
  std::vector<std::uint64_t> out(static_cast<std::size_t>(tables));
  const bool big = v.entries.size() * static_cast<std::size_t>(tables) >= 4096;
#pragma omp parallel for schedule(static) if (big)
  for (int t = 0; t < tables; ++t)
    out[static_cast<std::size_t>(t)] = signature_bits(
        v, table_base(params.seed, t), params.bits_per_signature);
  return out;
}

std::vector<std::uint64_t> signature_block_serial(const TermVector& v,
                                                  const LshParams& params) {
  check_params(params);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(params.num_tables));
  for (int t = 0; t < params.num_tables; ++t)
    out[static_cast<std::size_t>(t)] = signature_bits(
        v, table_base(params.seed, t), params.bits_per_signature);
  return out;
}

LshIndex::LshIndex(LshParams params) : params_(params) {
  check_params(params_);
  tables_.resize(static_cast<std::size_t>(params_.num_tables));
}

void LshIndex::insert(std::string doc_id, TermVector v) {
  if (contains(doc_id))
    throw DuplicateDoc("document already indexed: " + doc_id);
  const auto sigs = signature_block(v, params_);
  const auto ordinal = static_cast<std::uint32_t>(store_.size());
  by_id_.emplace(doc_id, ordinal);
  store_.push_back(Stored{std::move(doc_id), std::move(v)});
  for (std::size_t t = 0; t < tables_.size(); ++t)
    tables_[t][sigs[t]].push_back(ordinal);
}

std::vector<std::uint32_t> LshIndex::candidates(const TermVector& q) const {
  const auto sigs = signature_block(q, params_);
  std::vector<std::uint32_t> out;
  for (std::size_t t = 0; t < tables_.size(); ++t) {
    auto it = tables_[t].find(sigs[t]);
    if (it != tables_[t].end())
      out.insert(out.end(), it->second.begin(), it->second.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint32_t> LshIndex::all_docs() const {
  std::vector<std::uint32_t> out(store_.size());
  std::iota(out.begin(), out.end(), 0u);
  return out;
}

}  // namespace fsd
