#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ofs {

using Token = std::string;

// A token sequence: a word, a syllable, or a level-0 string.
using Word = std::vector<Token>;

inline constexpr std::string_view kSeparator = "-";
inline constexpr std::string_view kStressMarker = "'";

inline bool is_reserved(std::string_view token) {
  return token == kSeparator || token == kStressMarker;
}

// True for non-empty text without whitespace.
bool is_valid_token(std::string_view text);

// Tokens concatenated, "ε" for the empty sequence. Display only.
std::string join_compact(const Word& word);

// Tokens joined by single spaces.
std::string join_spaced(const Word& word);

}  // namespace ofs
