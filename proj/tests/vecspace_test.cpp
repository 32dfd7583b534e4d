#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fsd/errors.hpp"
#include "fsd/vecspace.hpp"

using namespace fsd;

namespace {

TokenBag bag(std::initializer_list<std::pair<const char*, std::uint32_t>> kv) {
  TokenBag b;
  for (const auto& [k, v] : kv) b[k] = v;
  return b;
}

TokenBag random_bag(std::mt19937_64& rng, int vocab, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> term(0, vocab - 1);
  std::uniform_int_distribution<std::uint32_t> count(1, 9);
  TokenBag b;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    b["t" + std::to_string(term(rng))] = count(rng);
  return b;
}

double l2_norm(const TermVector& v) {
  double s = 0.0;
  for (const auto& [id, w] : v.entries) s += w * w;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("absorb counts documents and document frequencies") {
  VectorSpaceState state;
  std::vector<TokenBag> batch{bag({{"a", 1}}), bag({{"a", 2}, {"b", 1}})};
  state.absorb(batch);
  CHECK(state.total_docs() == 2);
  CHECK(state.doc_freq(*state.vocab().find("a")) == 2);
  CHECK(state.doc_freq(*state.vocab().find("b")) == 1);
}

TEST_CASE("absorbing an empty batch changes nothing") {
  VectorSpaceState state;
  state.absorb_one(bag({{"x", 1}}));
  state.absorb({});
  CHECK(state.total_docs() == 1);
  CHECK(state.vocab().size() == 1);
}

TEST_CASE("sequential absorption equals one batch") {
  TokenBag d1 = bag({{"a", 1}, {"b", 2}});
  TokenBag d2 = bag({{"b", 1}, {"c", 3}});
  VectorSpaceState split, joint;
  split.absorb_one(d1);
  split.absorb_one(d2);
  std::vector<TokenBag> both{d1, d2};
  joint.absorb(both);
  CHECK(split.total_docs() == joint.total_docs());
  CHECK(split.vocab().size() == joint.vocab().size());
  for (TermId id = 0; id < split.vocab().size(); ++id)
    CHECK(split.doc_freq(id) == joint.doc_freq(id));
}

TEST_CASE("incremental absorption matches single-batch for random partitions") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> ndocs(1, 60);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<TokenBag> corpus;
    const int n = ndocs(rng);
    for (int i = 0; i < n; ++i) corpus.push_back(random_bag(rng, 30, 8));

    VectorSpaceState whole;
    whole.absorb(corpus);

    VectorSpaceState parts;
    std::size_t at = 0;
    while (at < corpus.size()) {
      std::uniform_int_distribution<std::size_t> step(
          1, corpus.size() - at);
      const std::size_t take = step(rng);
      parts.absorb(std::span(corpus).subspan(at, take));
      at += take;
    }

    REQUIRE(parts.total_docs() == whole.total_docs());
    REQUIRE(parts.vocab().size() == whole.vocab().size());
    for (TermId id = 0; id < whole.vocab().size(); ++id) {
      REQUIRE(parts.vocab().term(id) == whole.vocab().term(id));
      REQUIRE(parts.doc_freq(id) == whole.doc_freq(id));
    }
  }
}

TEST_CASE("idf matches hand-computed values") {
  VectorSpaceState state;
  std::vector<TokenBag> docs{bag({{"x", 1}}), bag({{"y", 1}})};
  state.absorb(docs);
  // d=2, df=1
  CHECK(state.idf(*state.vocab().find("x")) ==
        doctest::Approx(0.301030).epsilon(1e-6));

  VectorSpaceState uniform;
  std::vector<TokenBag> ten(10, bag({{"z", 1}}));
  uniform.absorb(ten);
  CHECK(uniform.idf(*uniform.vocab().find("z")) == 0.0);

  VectorSpaceState thousand;
  std::vector<TokenBag> docs2;
  docs2.push_back(bag({{"rare", 1}}));
  for (int i = 0; i < 999; ++i) docs2.push_back(bag({{"common", 1}}));
  thousand.absorb(docs2);
  CHECK(thousand.idf(*thousand.vocab().find("rare")) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("idf of an unabsorbed term is a protocol violation") {
  VectorSpaceState state;
  state.absorb_one(bag({{"a", 1}}));
  CHECK_THROWS_AS((void)state.idf(99), UnknownTerm);
  CHECK_THROWS_AS((void)state.weigh(bag({{"unseen", 1}}), "q"), UnknownTerm);
}

TEST_CASE("idf is anti-monotone in df") {
  VectorSpaceState state;
  std::vector<TokenBag> docs;
  for (int i = 0; i < 10; ++i) {
    TokenBag b = bag({{"everywhere", 1}});
    if (i < 3) b["sparse"] = 1;
    if (i < 7) b["mid"] = 1;
    docs.push_back(b);
  }
  state.absorb(docs);
  const double sparse = state.idf(*state.vocab().find("sparse"));
  const double mid = state.idf(*state.vocab().find("mid"));
  const double everywhere = state.idf(*state.vocab().find("everywhere"));
  CHECK(sparse > mid);
  CHECK(mid > everywhere);
  CHECK(everywhere == 0.0);
}

TEST_CASE("weigh matches the hand-computed spec examples") {
  // Single-term document: any nonzero component normalizes to 1.
  {
    VectorSpaceState state;
    std::vector<TokenBag> docs{bag({{"x", 5}}), bag({{"other", 1}})};
    state.absorb(docs);
    const auto v = state.weigh(bag({{"x", 5}}), "q");
    REQUIRE(v.entries.size() == 1);
    CHECK(v.entries[0].second == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Symmetric raw weights split as 1/sqrt(2).
  {
    VectorSpaceState state;
    std::vector<TokenBag> docs{bag({{"a", 1}, {"b", 1}}), bag({{"c", 1}})};
    state.absorb(docs);
    const auto v = state.weigh(bag({{"a", 1}, {"b", 1}}), "q");
    REQUIRE(v.entries.size() == 2);
    CHECK(v.entries[0].second ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(v.entries[1].second ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }
  // d=3, doc={a:1,b:10}, df(a)=1, df(b)=3: b weighs zero and is dropped.
  {
    VectorSpaceState state;
    std::vector<TokenBag> docs{bag({{"a", 1}, {"b", 10}}), bag({{"b", 1}}),
                               bag({{"b", 2}})};
    state.absorb(docs);
    const auto v = state.weigh(bag({{"a", 1}, {"b", 10}}), "q");
    REQUIRE(v.entries.size() == 1);
    CHECK(v.entries[0].first == *state.vocab().find("a"));
    CHECK(v.entries[0].second == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("weigh agrees with a direct recomputation of the formula") {
  std::mt19937_64 rng(23);
  VectorSpaceState state;
  std::vector<TokenBag> corpus;
  for (int i = 0; i < 200; ++i) corpus.push_back(random_bag(rng, 50, 12));
  state.absorb(corpus);

  for (int trial = 0; trial < 50; ++trial) {
    const auto& probe = corpus[static_cast<std::size_t>(trial * 4 % 200)];
    const auto v = state.weigh(probe, "q");

    // independent route: raw weights straight from the definition
    std::vector<std::pair<TermId, double>> raw;
    for (const auto& [term, count] : probe) {
      const TermId id = *state.vocab().find(term);
      const double idf =
          std::log10(static_cast<double>(state.total_docs()) /
                     static_cast<double>(state.doc_freq(id)));
      const double w = (std::log10(static_cast<double>(count)) + 1.0) * idf;
      if (w != 0.0) raw.emplace_back(id, w);
    }
    std::sort(raw.begin(), raw.end());
    double norm = 0.0;
    for (const auto& [id, w] : raw) norm += w * w;
    norm = std::sqrt(norm);

    REQUIRE(v.entries.size() == raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      CHECK(v.entries[i].first == raw[i].first);
      CHECK(v.entries[i].second ==
            doctest::Approx(raw[i].second / norm).epsilon(1e-12));
    }
  }
}

TEST_CASE("every nonzero weighted vector has unit norm") {
  std::mt19937_64 rng(31);
  VectorSpaceState state;
  std::vector<TokenBag> corpus;
  for (int i = 0; i < 300; ++i) corpus.push_back(random_bag(rng, 80, 20));
  state.absorb(corpus);
  for (const auto& b : corpus) {
    const auto v = state.weigh(b, "q");
    if (!v.zero()) CHECK(std::abs(l2_norm(v) - 1.0) <= 1e-9);
  }
}

TEST_CASE("normalization is invariant under uniform scaling") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> weight(0.01, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<TermId, double>> raw;
    for (TermId id = 0; id < 10; ++id) raw.emplace_back(id, weight(rng));
    auto doubled = raw;
    for (auto& [id, w] : doubled) w *= 2.0;
    const auto a = l2_normalized(raw);
    const auto b = l2_normalized(doubled);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a[i].second == b[i].second);  // exact: scaling by 2 is lossless
  }
}

TEST_CASE("cosine matches the spec examples") {
  TermVector v{"v", {{0, 0.6}, {1, 0.8}}};
  TermVector d{"d", {{0, 1.0}}};
  CHECK(cosine(v, d) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(cosine(v, v) == doctest::Approx(1.0).epsilon(1e-12));
  TermVector disjoint{"x", {{7, 1.0}}};
  CHECK(cosine(v, disjoint) == 0.0);
  CHECK(cosine(v, TermVector{}) == 0.0);
}

TEST_CASE("cosine is symmetric and bounded on random vectors") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  std::uniform_int_distribution<TermId> id(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    TermVector a, b;
    for (TermId i = 0; i <= 30; ++i) {
      if (weight(rng) < 0.4) a.entries.emplace_back(i, weight(rng));
      if (weight(rng) < 0.4) b.entries.emplace_back(i, weight(rng));
    }
    const double ab = cosine(a, b);
    CHECK(ab == cosine(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("known_terms drops unabsorbed terms only") {
  VectorSpaceState state;
  state.absorb_one(bag({{"seen", 1}}));
  const auto known = state.known_terms(bag({{"seen", 2}, {"unseen", 3}}));
  CHECK(known == bag({{"seen", 2}}));
}
