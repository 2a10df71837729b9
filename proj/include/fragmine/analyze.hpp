#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fragmine/encode.hpp"
#include "fragmine/miner.hpp"

namespace fragmine {

struct CorrespondenceReport {
  std::int64_t pair_count = 0;       // cross-class pairs with identical fingerprints
  int involved_molecules = 0;        // molecules in any mixed-class group
  int zero_vector_count = 0;         // molecules matched by no fragment
};

CorrespondenceReport correspondences(const std::vector<Fingerprint>& fingerprints,
                                     const std::vector<Activity>& labels);

// Pairwise phi coefficient (Pearson on binary presence indicators) of the
// top-m vocabulary fragments over the dataset. Constant indicators give 0 by
// convention, including on the diagonal.
Eigen::MatrixXd intercorrelation(const FragmentVocabulary& vocab, std::size_t m,
                                 const LabeledDataset& dataset);

double features_per_molecule(const std::vector<Fingerprint>& fingerprints);

struct ScoreStats {
  double min;
  double max;
  std::vector<double> sorted_desc;
};

ScoreStats score_stats(const std::vector<ScoredPattern>& patterns);

// Fraction of patterns whose underlying graph contains a cycle. Reported as
// a diagnostic only, never used to filter results.
double cyclic_fraction(const std::vector<ScoredPattern>& patterns);

// Retains patterns with chi2 >= floor, order preserved.
std::vector<ScoredPattern> crop_by_score(const std::vector<ScoredPattern>& patterns,
                                         double floor);

struct WilcoxonResult {
  double statistic;  // min(W+, W-)
  double p_value;    // two-sided
  bool significant;
  int direction;  // sign of the median difference a - b
};

// Exact distribution (with midranks) for n <= 30 nonzero differences, normal
// approximation with tie correction above. significant iff p <= 1 - alpha.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                                    double alpha);

// Long-form serialization: i<TAB>j<TAB>phi.
std::string intercorrelation_tsv(const Eigen::MatrixXd& m);

}  // namespace fragmine
