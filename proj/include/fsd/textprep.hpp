#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace fsd {

/// Multiset of preprocessed tokens for one document.
using TokenBag = std::map<std::string, std::uint32_t>;

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view sv) const {
    return std::hash<std::string_view>{}(sv);
  }
};

/// Lowercase words removed from token streams before stemming.
class StopwordList {
public:
  StopwordList() = default;
  explicit StopwordList(std::vector<std::string> words);

  /// Pinned English list of ~170 function words.
  static const StopwordList& default_english();

  /// One lowercase word per line; lines starting with '#' ignored.
  static StopwordList from_file(const std::filesystem::path& path);

  bool contains(std::string_view word) const {
    return words_.find(word) != words_.end();
  }
  std::size_t size() const { return words_.size(); }

private:
  std::unordered_set<std::string, StringHash, std::equal_to<>> words_;
};

/// Maximal runs of [A-Za-z0-9] or non-ASCII bytes, lowercased.
/// Runs shorter than 2 bytes and purely numeric runs are dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Deletes stoplist members, order preserved.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordList& stoplist);

/// tokenize -> remove_stopwords -> stem -> count.
TokenBag preprocess(std::string_view text, const StopwordList& stoplist);

}  // namespace fsd
