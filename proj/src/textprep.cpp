#include "fsd/textprep.hpp"

#include <fstream>
#include <utility>

#include "fsd/errors.hpp"
#include "fsd/porter.hpp"

namespace fsd {

StopwordList::StopwordList(std::vector<std::string> words) {
  for (auto& w : words) words_.insert(std::move(w));
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    words.push_back(line.substr(start));
  }
  return StopwordList(std::move(words));
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string run;
  bool has_alpha = false;
  auto flush = [&] {
    if (run.size() >= 2 && has_alpha) tokens.push_back(run);
    run.clear();
    has_alpha = false;
  };
  for (unsigned char c : text) {
    const bool digit = c >= '0' && c <= '9';
    const bool upper = c >= 'A' && c <= 'Z';
    const bool lower = c >= 'a' && c <= 'z';
    if (digit || upper || lower || c >= 0x80) {
      run.push_back(upper ? static_cast<char>(c + 32) : static_cast<char>(c));
      if (!digit) has_alpha = true;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordList& stoplist) {
  std::erase_if(tokens,
                [&](const std::string& t) { return stoplist.contains(t); });
  return tokens;
}

TokenBag preprocess(std::string_view text, const StopwordList& stoplist) {
  TokenBag bag;
  for (auto& token : remove_stopwords(tokenize(text), stoplist))
    bag[porter_stem(token)]++;
  return bag;
}

}  // namespace fsd
