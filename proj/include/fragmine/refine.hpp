#pragma once

#include <vector>

#include "fragmine/pattern.hpp"

namespace fragmine {

struct OccurringPattern {
  Pattern pattern;
  std::string code;
  std::vector<int> occurrences;  // molecule indices, ascending
};

// All single-edge patterns of the language occurring in the dataset, with
// their occurrence lists, sorted by canonical code.
std::vector<OccurringPattern> seed_patterns(PatternLanguage language,
                                            const LabeledDataset& dataset);

// One-edge extensions of `parent` occurring in the dataset, restricted to the
// children whose designated canonical parent is `parent`. The transitive
// closure over seed_patterns enumerates every occurring pattern of the
// language exactly once.
std::vector<OccurringPattern> refine(const OccurringPattern& parent, PatternLanguage language,
                                     const LabeledDataset& dataset);

// Canonical code of the designated parent of a pattern with >= 2 edges.
std::string designated_parent_code(const Pattern& pattern);

}  // namespace fragmine
