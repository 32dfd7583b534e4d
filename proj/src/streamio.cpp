#include "fsd/streamio.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "fsd/errors.hpp"
#include "json.hpp"

namespace fsd {

namespace {

using nlohmann::json;

json parse_line(const std::string& line, std::size_t lineno) {
  json record = json::parse(line, nullptr, false);
  if (record.is_discarded())
    throw ParseError(lineno, "malformed JSON record");
  if (!record.is_object()) throw ParseError(lineno, "record is not an object");
  return record;
}

std::string require_string(const json& record, const char* key,
                           std::size_t lineno) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string())
    throw ParseError(lineno, std::string("missing or non-string \"") + key +
                                 "\" field");
  return it->get<std::string>();
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line, lineno);
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

std::vector<Document> read_stream(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  for_each_line(in, [&](const std::string& line, std::size_t lineno) {
    const json record = parse_line(line, lineno);
    Document doc;
    doc.id = require_string(record, "id", lineno);
    if (doc.id.empty()) throw ParseError(lineno, "empty document id");
    if (!seen.insert(doc.id).second)
      throw ParseError(lineno, "duplicate document id \"" + doc.id + "\"");

    auto ts = record.find("ts");
    if (ts == record.end() || !ts->is_number_integer())
      throw ParseError(lineno, "missing or non-integer \"ts\" field");
    doc.ts = ts->get<std::int64_t>();

    doc.text = require_string(record, "text", lineno);

    auto label = record.find("label");
    if (label != record.end() && !label->is_null()) {
      if (!label->is_string())
        throw ParseError(lineno, "non-string \"label\" field");
      doc.label = label->get<std::string>();
    }

    if (!docs.empty() && doc.ts < docs.back().ts) throw OrderError(lineno);
    docs.push_back(std::move(doc));
  });
  return docs;
}

std::vector<Document> read_stream(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_stream(in);
}

void write_stream(std::ostream& out, std::span<const Document> docs) {
  for (const Document& doc : docs) {
    json record{{"id", doc.id}, {"ts", doc.ts}, {"text", doc.text}};
    if (doc.label) record["label"] = *doc.label;
    out << record.dump() << '\n';
  }
}

void write_stream(const std::filesystem::path& path,
                  std::span<const Document> docs) {
  auto out = open_out(path);
  write_stream(out, docs);
  if (!out) throw IoError("write failed: " + path.string());
}

void write_verdicts(std::ostream& out, std::span<const Verdict> verdicts) {
  for (const Verdict& v : verdicts) {
    json record{
        {"id", v.doc_id},
        {"prediction", v.is_novel ? "0" : *v.nearest_id},
        {"is_novel", v.is_novel},
        {"novelty_score", v.novelty_score},
        {"nearest_id", v.nearest_id ? json(*v.nearest_id) : json(nullptr)},
        {"empty_doc", v.empty_doc},
    };
    out << record.dump() << '\n';
  }
}

void write_verdicts(const std::filesystem::path& path,
                    std::span<const Verdict> verdicts) {
  auto out = open_out(path);
  write_verdicts(out, verdicts);
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<Verdict> read_verdicts(std::istream& in) {
  std::vector<Verdict> verdicts;
  for_each_line(in, [&](const std::string& line, std::size_t lineno) {
    const json record = parse_line(line, lineno);
    Verdict v;
    v.doc_id = require_string(record, "id", lineno);

    auto novel = record.find("is_novel");
    if (novel == record.end() || !novel->is_boolean())
      throw ParseError(lineno, "missing or non-boolean \"is_novel\" field");
    v.is_novel = novel->get<bool>();

    auto score = record.find("novelty_score");
    if (score == record.end() || !score->is_number())
      throw ParseError(lineno, "missing or non-numeric \"novelty_score\"");
    v.novelty_score = score->get<double>();

    auto nearest = record.find("nearest_id");
    if (nearest != record.end() && !nearest->is_null()) {
      if (!nearest->is_string())
        throw ParseError(lineno, "non-string \"nearest_id\" field");
      v.nearest_id = nearest->get<std::string>();
    }

    auto empty = record.find("empty_doc");
    v.empty_doc = empty != record.end() && empty->is_boolean() &&
                  empty->get<bool>();
    verdicts.push_back(std::move(v));
  });
  return verdicts;
}

std::vector<Verdict> read_verdicts(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_verdicts(in);
}

namespace {

// Background vocabulary: pronounceable pseudo-words that the stemmer
// leaves untouched (syllables plus a tail consonant that no suffix
// rule matches).
std::string vocab_word(std::size_t i) {
  static constexpr char kOnsets[] = "bdfgjklmnprstvz";
  static constexpr char kVowels[] = "aeiou";
  static constexpr char kTails[] = "bfkpwxz";
  std::string word;
  std::size_t rest = i / 7;
  do {
    word.push_back(kOnsets[rest % 15]);
    word.push_back(kVowels[(rest / 15) % 5]);
    rest /= 75;
  } while (rest > 0);
  // 'q' appears only as padding, so short and long codes cannot collide
  if (word.size() < 4) word.insert(0, "qa");
  word.push_back(kTails[i % 7]);
  return word;
}

// Zipf-like sampler over [0, n): heavy reuse of low ranks, so the
// background portions of unrelated documents overlap realistically.
class ZipfSampler {
public:
  ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      sum += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
      cdf_[r] = sum;
    }
    for (auto& c : cdf_) c /= sum;
  }

  std::size_t operator()(std::mt19937_64& rng) const {
    const double u =
        std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return static_cast<std::size_t>(
        std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  }

private:
  std::vector<double> cdf_;
};

}  // namespace

std::vector<Document> generate_synthetic(const SynthConfig& cfg) {
  if (cfg.n_events > cfg.n_docs)
    throw std::invalid_argument("n_events must be <= n_docs");
  if (cfg.n_docs > 0 && cfg.n_events == 0)
    throw std::invalid_argument("n_events must be >= 1 for a non-empty stream");
  if (cfg.drift_rate < 0.0 || cfg.drift_rate > 1.0 ||
      cfg.duplicate_noise < 0.0 || cfg.duplicate_noise > 1.0)
    throw std::invalid_argument("rates must be in [0, 1]");
  if (cfg.n_docs == 0) return {};

  constexpr std::size_t kEventTerms = 12;   // fresh terms per event
  constexpr std::size_t kDocTokens = 40;    // tokens per first story
  constexpr double kBackgroundMix = 0.4;    // background share of a story

  std::mt19937_64 rng(cfg.seed);
  const std::size_t vocab_size = std::max<std::size_t>(cfg.vocab_size, 20);
  const ZipfSampler background(vocab_size, 1.1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // First-story positions: 0 always, the rest spread uniformly.
  std::vector<std::uint8_t> is_first(cfg.n_docs, 0);
  is_first[0] = 1;
  {
    std::vector<std::size_t> rest(cfg.n_docs - 1);
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = i + 1;
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t e = 0; e + 1 < cfg.n_events; ++e) is_first[rest[e]] = 1;
  }

  const std::size_t id_width = std::to_string(cfg.n_docs).size();
  auto doc_id = [&](std::size_t i) {
    std::string digits = std::to_string(i);
    const std::size_t pad =
        digits.size() >= id_width ? 0 : id_width - digits.size();
    return "d" + std::string(pad, '0') + digits;
  };

  std::vector<Document> docs;
  docs.reserve(cfg.n_docs);
  std::size_t next_event = 0;
  std::size_t next_drift = 0;

  for (std::size_t i = 0; i < cfg.n_docs; ++i) {
    std::vector<std::string> tokens;
    Document doc;
    doc.id = doc_id(i);
    doc.ts = 1'000'000 + static_cast<std::int64_t>(i) * 1000;

    if (is_first[i]) {
      const std::size_t event = next_event++;
      tokens.reserve(kDocTokens);
      for (std::size_t t = 0; t < kDocTokens; ++t) {
        if (unit(rng) < kBackgroundMix) {
          tokens.push_back(vocab_word(background(rng)));
        } else {
          const std::size_t j = static_cast<std::size_t>(
              std::uniform_int_distribution<std::size_t>(
                  0, kEventTerms - 1)(rng));
          tokens.push_back("e" + std::to_string(event) + "v" +
                           std::to_string(j));
        }
      }
      doc.label = doc.id;
    } else {
      const std::size_t source = std::uniform_int_distribution<std::size_t>(
          0, i - 1)(rng);
      std::istringstream words(docs[source].text);
      for (std::string tok; words >> tok;) {
        if (unit(rng) < cfg.duplicate_noise)
          tok = vocab_word(background(rng));
        tokens.push_back(std::move(tok));
      }
      const std::size_t base = tokens.size();
      for (std::size_t t = 0; t < base; ++t)
        if (unit(rng) < cfg.drift_rate)
          tokens.push_back("f" + std::to_string(next_drift++) + "x");
      doc.label = docs[source].id;
    }

    std::string text;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t > 0) text.push_back(' ');
      text += tokens[t];
    }
    doc.text = std::move(text);
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace fsd
