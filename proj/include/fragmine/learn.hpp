#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "fragmine/encode.hpp"
#include "fragmine/miner.hpp"

namespace fragmine {

// |x & y| / |x | y|; 1.0 when both vectors are all-zero.
double tanimoto(const Fingerprint& x, const Fingerprint& y);

Eigen::MatrixXd tanimoto_kernel_matrix(const std::vector<Fingerprint>& fps);
// rows = test molecules, cols = training molecules.
Eigen::MatrixXd tanimoto_cross_kernel(const std::vector<Fingerprint>& test,
                                      const std::vector<Fingerprint>& train);

struct SvmModel {
  Eigen::VectorXd alpha;  // dual coefficients, 0 <= alpha_i <= C
  std::vector<int> y;     // training labels in {-1, +1}
  double bias = 0.0;
  double C = 1.0;
};

// SMO-style dual decomposition with maximal-violating-pair selection on a
// precomputed kernel matrix. Deterministic for fixed inputs.
SvmModel train_svm(const Eigen::MatrixXd& K, const std::vector<int>& labels, double C,
                   double tol);

// f(x) = sum_i alpha_i y_i K(x, x_i) + bias, one row of K_test_train per x.
Eigen::VectorXd decision_values(const SvmModel& model, const Eigen::MatrixXd& K_test_train);

// Dual objective e'a - a'Qa/2 with Q_ij = y_i y_j K_ij.
double dual_objective(const Eigen::MatrixXd& K, const std::vector<int>& labels,
                      const Eigen::VectorXd& alpha);

// Mann-Whitney AUC, ties counted one half.
double auc(const std::vector<double>& scores, const std::vector<Activity>& labels);

struct FoldAssignment {
  std::vector<int> fold;  // per molecule, 0..folds-1
  std::uint64_t seed;
};

// Stratified assignment: per-fold class counts within 1 of proportionality.
FoldAssignment stratified_folds(const std::vector<Activity>& labels, int folds,
                                std::uint64_t seed);

struct FoldMetrics {
  int fold;
  int n_fragments;
  double auc;
  std::int64_t correspondence_pairs;
  double avg_features_per_molecule;
  double min_score;
};

using VocabularyBuilder = std::function<std::vector<ScoredPattern>(const LabeledDataset&)>;

// Stratified cross-validation: per fold, the vocabulary is built from the
// training molecules only, train and test are encoded as gfps, a Tanimoto
// SVM is trained and test AUC recorded. Correspondences and feature counts
// are computed over the full dataset under that fold's vocabulary.
std::vector<FoldMetrics> run_cv(const LabeledDataset& dataset, const VocabularyBuilder& builder,
                                double C, double tol, int folds, std::uint64_t seed,
                                int threads = 1);

}  // namespace fragmine
