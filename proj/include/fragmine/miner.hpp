#pragma once

#include <string>
#include <vector>

#include "fragmine/chi2.hpp"
#include "fragmine/pattern.hpp"

namespace fragmine {

struct ScoredPattern {
  Pattern pattern;
  std::string code;
  ContingencyTable table;
  double score;  // chi2(table)
};

enum class MiningMode { TopK, Threshold };

struct MiningTask {
  PatternLanguage language;
  MiningMode mode;
  int k = 1000;            // TopK
  double threshold = 0.0;  // Threshold
};

// The k best-scoring patterns of the language, sorted by (chi2 desc,
// canonical code asc); ties at the k-th score break by code. Branches are
// pruned when their convex upper bound falls below the running k-th score.
std::vector<ScoredPattern> mine_topk(const LabeledDataset& dataset, PatternLanguage language,
                                     int k);

// All occurring patterns with chi2 >= threshold, same ordering.
std::vector<ScoredPattern> mine_threshold(const LabeledDataset& dataset,
                                          PatternLanguage language, double threshold);

std::vector<ScoredPattern> run_mining(const LabeledDataset& dataset, const MiningTask& task);

// Length-restricted frequency baseline: every distinct walk label string of
// 1..max_length bonds (no immediate edge backtracking) present in at least
// min_freq molecules. Scores are reported but never filter.
std::vector<ScoredPattern> enumerate_restricted_paths(const LabeledDataset& dataset,
                                                      int max_length, int min_freq);

ContingencyTable make_table(const LabeledDataset& dataset, const std::vector<int>& occurrences);

// TSV serialization: rank<TAB>canonical_code<TAB>chi2<TAB>p<TAB>n<TAB>P<TAB>N.
std::string fragments_tsv(const std::vector<ScoredPattern>& patterns);
std::vector<ScoredPattern> parse_fragments_tsv(const std::string& text);

}  // namespace fragmine
