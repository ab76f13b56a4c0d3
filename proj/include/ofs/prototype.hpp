#pragma once

#include <vector>

#include "ofs/model.hpp"
#include "ofs/pattern.hpp"

namespace ofs {

// A model whose level-0 right-hand sides are set formers awaiting data.
// `skeleton` carries every rule; its level-0 sets are empty placeholders and
// formers[i] belongs to skeleton.levels()[0][i].
struct PrototypeModel {
  Model skeleton;
  std::vector<SetFormer> formers;

  bool operator==(const PrototypeModel&) const = default;
};

// Model invariants except level-0 contents, plus former well-formedness.
ValidationReport validate_prototype(const PrototypeModel& proto);

}  // namespace ofs
