#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fsd {

/// One raw stream item. The label carries ground truth when present:
/// a label equal to the document's own id (or the "0" first-story
/// marker) means truly new; any other value names the prior document
/// this one repeats.
struct Document {
  std::string id;
  std::int64_t ts = 0;  ///< milliseconds since epoch, non-decreasing
  std::string text;
  std::optional<std::string> label;
};

inline bool label_marks_new(const Document& doc) {
  return doc.label && (*doc.label == doc.id || *doc.label == "0");
}

}  // namespace fsd
