#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fsd/errors.hpp"
#include "fsd/lshindex.hpp"

using namespace fsd;

namespace {

TermVector dense_vector(const std::vector<double>& components) {
  TermVector v;
  for (TermId i = 0; i < components.size(); ++i)
    v.entries.emplace_back(i, components[i]);
  return v;
}

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> u(dim);
  double norm = 0.0;
  for (auto& x : u) {
    x = gauss(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (auto& x : u) x /= norm;
  return u;
}

// Unit vector at exactly `theta` radians from u.
std::vector<double> rotated_towards(std::mt19937_64& rng,
                                    const std::vector<double>& u,
                                    double theta) {
  const std::size_t dim = u.size();
  std::vector<double> w = random_unit(rng, dim);
  double dot = 0.0;
  for (std::size_t i = 0; i < dim; ++i) dot += w[i] * u[i];
  double norm = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    w[i] -= dot * u[i];
    norm += w[i] * w[i];
  }
  norm = std::sqrt(norm);
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < dim; ++i)
    v[i] = std::cos(theta) * u[i] + std::sin(theta) * (w[i] / norm);
  return v;
}

}  // namespace

TEST_CASE("plan_tables matches the hand-evaluated bound") {
  CHECK(plan_tables(0.05, 0.9, 13) == 11);
  CHECK(plan_tables(0.05, 0.9, 1) == 2);
  CHECK(plan_tables(0.999999999, 0.9, 1) == 1);  // phi -> 1 clamps to one table
}

TEST_CASE("plan_tables rejects degenerate combinations") {
  CHECK_THROWS_AS(plan_tables(0.05, 1e-300, 64), DegenerateParams);
  CHECK_THROWS_AS(plan_tables(0.05, 0.5, 64), DegenerateParams);  // L overflows
  CHECK_THROWS(plan_tables(0.0, 0.9, 13));
  CHECK_THROWS(plan_tables(0.05, 1.0, 13));
}

TEST_CASE("signature of the zero vector has all bits zero") {
  LshParams params{.bits_per_signature = 13, .num_tables = 4, .seed = 3};
  TermVector zero;
  for (int t = 0; t < params.num_tables; ++t)
    CHECK(signature(zero, t, params).bits == 0);
}

TEST_CASE("signature is deterministic and respects the k-bit bound") {
  std::mt19937_64 rng(5);
  LshParams params{.bits_per_signature = 13, .num_tables = 8, .seed = 99};
  const auto v = dense_vector(random_unit(rng, 64));
  for (int t = 0; t < params.num_tables; ++t) {
    const auto a = signature(v, t, params);
    const auto b = signature(v, t, params);
    CHECK(a.bits == b.bits);
    CHECK(a.table_index == t);
    CHECK((a.bits >> params.bits_per_signature) == 0);
  }
  CHECK_THROWS_AS((void)signature(v, 8, params), std::out_of_range);
}

TEST_CASE("different tables use different hyperplanes") {
  std::mt19937_64 rng(6);
  LshParams params{.bits_per_signature = 32, .num_tables = 6, .seed = 1};
  const auto v = dense_vector(random_unit(rng, 128));
  const auto sigs = signature_block(v, params);
  for (std::size_t a = 0; a < sigs.size(); ++a)
    for (std::size_t b = a + 1; b < sigs.size(); ++b)
      CHECK(sigs[a] != sigs[b]);
}

TEST_CASE("single-bit disagreement follows the theta/pi collision law") {
  // 10,000 pairs at a fixed angle; 64 hyperplanes per pair.
  for (const double frac : {0.1, 0.25, 0.5}) {
    const double theta = frac * std::numbers::pi;
    std::mt19937_64 rng(101 + static_cast<std::uint64_t>(frac * 100));
    LshParams params{.bits_per_signature = 64, .num_tables = 1, .seed = 0};
    std::uint64_t differing = 0;
    const int pairs = 10000;
    for (int i = 0; i < pairs; ++i) {
      params.seed = static_cast<std::uint64_t>(i) * 7919 + 13;
      const auto u = random_unit(rng, 256);
      const auto v = rotated_towards(rng, u, theta);
      const auto su = signature(dense_vector(u), 0, params).bits;
      const auto sv = signature(dense_vector(v), 0, params).bits;
      differing += static_cast<std::uint64_t>(std::popcount(su ^ sv));
    }
    const double observed =
        static_cast<double>(differing) / (64.0 * pairs);
    CHECK(observed == doctest::Approx(frac).epsilon(0).scale(0));
    CHECK(std::abs(observed - frac) <= 0.02);
  }
}

TEST_CASE("insert places each document in one bucket per table") {
  LshParams params{.bits_per_signature = 13, .num_tables = 5, .seed = 17};
  LshIndex index(params);
  std::mt19937_64 rng(9);
  index.insert("first", dense_vector(random_unit(rng, 32)));
  for (int t = 0; t < params.num_tables; ++t) {
    const auto& table = index.table(t);
    REQUIRE(table.size() == 1);
    CHECK(table.begin()->second.size() == 1);
  }
}

TEST_CASE("identical vectors share every bucket") {
  LshParams params{.bits_per_signature = 13, .num_tables = 5, .seed = 17};
  LshIndex index(params);
  std::mt19937_64 rng(10);
  const auto v = dense_vector(random_unit(rng, 32));
  index.insert("one", v);
  index.insert("two", v);
  for (int t = 0; t < params.num_tables; ++t)
    for (const auto& [bits, bucket] : index.table(t))
      CHECK(bucket.size() == 2);
}

TEST_CASE("bucket sizes sum to the document count in every table") {
  LshParams params{.bits_per_signature = 8, .num_tables = 6, .seed = 23};
  LshIndex index(params);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i)
    index.insert("d" + std::to_string(i), dense_vector(random_unit(rng, 48)));
  for (int t = 0; t < params.num_tables; ++t) {
    std::size_t total = 0;
    for (const auto& [bits, bucket] : index.table(t)) total += bucket.size();
    CHECK(total == 100);
  }
}

TEST_CASE("bucket members carry their bucket's signature") {
  LshParams params{.bits_per_signature = 10, .num_tables = 4, .seed = 29};
  LshIndex index(params);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i)
    index.insert("d" + std::to_string(i), dense_vector(random_unit(rng, 48)));
  for (int t = 0; t < params.num_tables; ++t)
    for (const auto& [bits, bucket] : index.table(t))
      for (const auto ordinal : bucket)
        CHECK(signature(index.doc(ordinal).vec, t, params).bits == bits);
}

TEST_CASE("duplicate insertion is rejected") {
  LshIndex index(LshParams{});
  std::mt19937_64 rng(13);
  index.insert("dup", dense_vector(random_unit(rng, 16)));
  CHECK_THROWS_AS(index.insert("dup", dense_vector(random_unit(rng, 16))),
                  DuplicateDoc);
}

TEST_CASE("candidates of an empty index is empty") {
  LshIndex index(LshParams{});
  std::mt19937_64 rng(14);
  CHECK(index.candidates(dense_vector(random_unit(rng, 16))).empty());
}

TEST_CASE("an inserted vector is always a candidate for itself") {
  LshIndex index(LshParams{});
  std::mt19937_64 rng(15);
  for (int i = 0; i < 20; ++i) {
    const auto v = dense_vector(random_unit(rng, 64));
    index.insert("d" + std::to_string(i), v);
    const auto cands = index.candidates(v);
    bool found = false;
    for (const auto ordinal : cands)
      found |= index.doc(ordinal).doc_id == "d" + std::to_string(i);
    CHECK(found);
  }
}

TEST_CASE("candidates equal the exact union of matching buckets") {
  LshParams params{.bits_per_signature = 6, .num_tables = 4, .seed = 31};
  LshIndex index(params);
  std::mt19937_64 rng(16);
  std::vector<TermVector> vecs;
  for (int i = 0; i < 120; ++i) {
    vecs.push_back(dense_vector(random_unit(rng, 24)));
    index.insert("d" + std::to_string(i), vecs.back());
  }
  const auto q = dense_vector(random_unit(rng, 24));
  const auto got = index.candidates(q);

  std::vector<std::uint32_t> expected;
  for (std::uint32_t ordinal = 0; ordinal < 120; ++ordinal) {
    bool shares = false;
    for (int t = 0; t < params.num_tables && !shares; ++t)
      shares = signature(vecs[ordinal], t, params).bits ==
               signature(q, t, params).bits;
    if (shares) expected.push_back(ordinal);
  }
  CHECK(got == expected);
}

TEST_CASE("index layout is a pure function of params and insertions") {
  std::mt19937_64 rng(17);
  std::vector<TermVector> vecs;
  for (int i = 0; i < 50; ++i)
    vecs.push_back(dense_vector(random_unit(rng, 32)));

  LshParams params{.bits_per_signature = 12, .num_tables = 7, .seed = 41};
  LshIndex a(params), b(params);
  for (int i = 0; i < 50; ++i) {
    a.insert("d" + std::to_string(i), vecs[static_cast<std::size_t>(i)]);
    b.insert("d" + std::to_string(i), vecs[static_cast<std::size_t>(i)]);
  }
  const auto q = dense_vector(random_unit(rng, 32));
  CHECK(a.candidates(q) == b.candidates(q));
  for (int t = 0; t < params.num_tables; ++t)
    CHECK(a.table(t).size() == b.table(t).size());
}

TEST_CASE("planted neighbor at collision probability 0.9 is retrieved") {
  // k = 13, L = plan_tables(0.05, 0.9, 13) = 11: per-table collision
  // 0.9^13, miss rate bound phi = 0.05.
  const int k = 13;
  const int tables = plan_tables(0.05, 0.9, k);
  REQUIRE(tables == 11);
  const double theta = 0.1 * std::numbers::pi;  // p_coll = 1 - theta/pi = 0.9

  int misses = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(trial));
    LshParams params{.bits_per_signature = k,
                     .num_tables = tables,
                     .seed = static_cast<std::uint64_t>(trial)};
    LshIndex index(params);
    const auto q = random_unit(rng, 256);
    index.insert("planted", dense_vector(rotated_towards(rng, q, theta)));
    for (int i = 0; i < 500; ++i)
      index.insert("noise" + std::to_string(i),
                   dense_vector(random_unit(rng, 256)));

    bool found = false;
    for (const auto ordinal : index.candidates(dense_vector(q)))
      found |= index.doc(ordinal).doc_id == "planted";
    misses += !found;
  }
  // phi = 0.05 plus Monte-Carlo margin
  CHECK(static_cast<double>(misses) / trials <= 0.10);
}

TEST_CASE("measured miss rate stays within phi + 0.05 across seeds") {
  const double phi = 0.2;
  const double p_coll = 0.85;
  const int k = 10;
  const int tables = plan_tables(phi, p_coll, k);
  const double theta = (1.0 - p_coll) * std::numbers::pi;

  int misses = 0;
  const int trials = 200;  // >= 20 seeds
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(7000 + static_cast<std::uint64_t>(trial));
    LshParams params{.bits_per_signature = k,
                     .num_tables = tables,
                     .seed = static_cast<std::uint64_t>(trial) + 31};
    LshIndex index(params);
    const auto q = random_unit(rng, 256);
    index.insert("planted", dense_vector(rotated_towards(rng, q, theta)));
    bool found = false;
    for (const auto ordinal : index.candidates(dense_vector(q)))
      found |= index.doc(ordinal).doc_id == "planted";
    misses += !found;
  }
  CHECK(static_cast<double>(misses) / trials <= phi + 0.05);
}
