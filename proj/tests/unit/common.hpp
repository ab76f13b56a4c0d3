#pragma once

#include <filesystem>
#include <string>

#include "ofs/model.hpp"
#include "ofs/model_io.hpp"

namespace ofs::testing {

inline const std::filesystem::path kSource = OFS_SOURCE_DIR;

inline Model fig4() { return load_model(kSource / "data/golden/fig4.ofs"); }
inline Model fig5() { return load_model(kSource / "data/golden/fig5.ofs"); }

// Space-separated tokens.
Word words(const std::string& text);

}  // namespace ofs::testing
