#include "fsd/textprep.hpp"

namespace fsd {

namespace {

// Pinned default list: 171 common English function words, lowercase.
constexpr const char* kDefaultEnglish[] = {
    "a",        "about",    "above",   "after",    "again",      "against",
    "all",      "also",     "although", "am",      "among",      "an",
    "and",      "another",  "any",     "are",      "as",         "at",
    "be",       "because",  "been",    "before",   "being",      "below",
    "between",  "both",     "but",     "by",       "can",        "cannot",
    "could",    "did",      "do",      "does",     "doing",      "down",
    "during",   "each",     "either",  "else",     "ever",       "every",
    "few",      "for",      "from",    "further",  "had",        "has",
    "have",     "having",   "he",      "her",      "here",       "hers",
    "herself",  "him",      "himself", "his",      "how",        "however",
    "i",        "if",       "in",      "into",     "is",         "it",
    "its",      "itself",   "just",    "may",      "me",         "might",
    "more",     "most",     "much",    "must",     "my",         "myself",
    "neither",  "never",    "no",      "nor",      "not",        "now",
    "of",       "off",      "on",      "once",     "only",       "onto",
    "or",       "other",    "our",     "ours",     "ourselves",  "out",
    "over",     "own",      "rather",  "same",     "she",        "should",
    "since",    "so",       "some",    "still",    "such",       "than",
    "that",     "the",      "their",   "theirs",   "them",       "themselves",
    "then",     "there",    "these",   "they",     "this",       "those",
    "though",   "through",  "thus",    "to",       "too",        "toward",
    "under",    "until",    "up",      "upon",     "us",         "very",
    "was",      "we",       "were",    "what",     "when",       "where",
    "whether",  "which",    "while",   "who",      "whom",       "whose",
    "why",      "will",     "with",    "within",   "without",    "would",
    "yet",      "you",      "your",    "yours",    "yourself",   "yourselves",
    "done",     "enough",   "even",    "indeed",   "instead",    "least",
    "less",     "many",     "often",   "perhaps",  "several",    "sometimes",
    "together", "whatever", "whenever",
};

static_assert(std::size(kDefaultEnglish) == 171);

}  // namespace

const StopwordList& StopwordList::default_english() {
  static const StopwordList list(std::vector<std::string>(
      std::begin(kDefaultEnglish), std::end(kDefaultEnglish)));
  return list;
}

}  // namespace fsd
