#include "common.hpp"

#include <sstream>

namespace ofs::testing {

Word words(const std::string& text) {
  std::istringstream in(text);
  Word out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace ofs::testing
