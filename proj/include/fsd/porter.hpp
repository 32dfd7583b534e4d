#pragma once

#include <string>
#include <string_view>

namespace fsd {

/// Porter suffix-stripping stemmer for lowercase English words.
/// Words of length 1 or 2, and tokens containing anything outside
/// [a-z], are returned unchanged.
std::string porter_stem(std::string_view token);

}  // namespace fsd
