#include "ofs/token.hpp"

#include <algorithm>
#include <cctype>

namespace ofs {

bool is_valid_token(std::string_view text) {
  if (text.empty()) return false;
  return std::none_of(text.begin(), text.end(),
                      [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::string join_compact(const Word& word) {
  if (word.empty()) return "ε";
  std::string out;
  for (const auto& t : word) out += t;
  return out;
}

std::string join_spaced(const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += word[i];
  }
  return out;
}

}  // namespace ofs
