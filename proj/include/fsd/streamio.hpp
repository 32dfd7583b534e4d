#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "fsd/detector.hpp"
#include "fsd/document.hpp"

namespace fsd {

/// Line-delimited JSON documents: {"id","ts","text",["label"]}.
/// Unknown fields are ignored; blank lines are skipped.
/// Throws ParseError (with line number) and OrderError.
std::vector<Document> read_stream(std::istream& in);
std::vector<Document> read_stream(const std::filesystem::path& path);

void write_stream(std::ostream& out, std::span<const Document> docs);
void write_stream(const std::filesystem::path& path,
                  std::span<const Document> docs);

/// Line-delimited JSON verdicts. Novel documents carry prediction "0";
/// redundant ones carry the nearest prior document's id.
void write_verdicts(std::ostream& out, std::span<const Verdict> verdicts);
void write_verdicts(const std::filesystem::path& path,
                    std::span<const Verdict> verdicts);

std::vector<Verdict> read_verdicts(std::istream& in);
std::vector<Verdict> read_verdicts(const std::filesystem::path& path);

/// Synthetic stream: n_events first stories with fresh vocabularies;
/// every other document is a noisy copy of an earlier one. Labels are
/// embedded (own id for first stories, source id for copies).
struct SynthConfig {
  std::size_t n_docs = 1000;
  std::size_t n_events = 100;
  std::size_t vocab_size = 500;   ///< shared background vocabulary
  double drift_rate = 0.05;       ///< fresh terms per copied token
  double duplicate_noise = 0.1;   ///< per-token replacement probability
  std::uint64_t seed = 1;
};

std::vector<Document> generate_synthetic(const SynthConfig& cfg);

}  // namespace fsd
