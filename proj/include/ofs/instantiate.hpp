#pragma once

#include <vector>

#include "ofs/model.hpp"
#include "ofs/pattern.hpp"
#include "ofs/prototype.hpp"

namespace ofs {

// Fills every level-0 rule with the union of its former's captures over the
// corpus, then prunes. Captures containing a marker are dropped. `corpus`
// holds marked token sequences (stress markers and separators included).
// Terminals are the corpus tokens minus markers.
// Throws EmptyCorpus, UnknownToken (token outside the table), UnknownClass,
// InvalidModel (prototype fails validate_prototype).
Model instantiate(const PrototypeModel& proto, const std::vector<Word>& corpus,
                  const TokenClassTable& table);

// Removes level-0 rules with empty sets, alternation branches that reference
// removed objects, and higher rules left with nothing; repeats to a
// fixpoint. A dead Star becomes epsilon, a dead Plus kills its branch.
// Returns Model::empty_model when the start rule dies.
Model prune(const Model& model);

}  // namespace ofs
