#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fragmine/generator.hpp"
#include "fragmine/learn.hpp"
#include "fragmine/miner.hpp"

namespace fragmine {

struct ExperimentConfig {
  std::vector<std::string> dataset_paths;
  std::string experiment = "E1";  // E1, E2, E3, E4, custom
  std::vector<PatternLanguage> languages = {PatternLanguage::Sequence, PatternLanguage::Tree,
                                            PatternLanguage::Graph};
  std::string mode = "topk";  // mine subcommand: topk or threshold
  int k = 1000;
  std::vector<double> confidences = {0.95, 0.99, 0.999};
  int max_path_length = 10;
  int min_freq = 1;
  double svm_c = 1.0;
  double svm_tol = 1e-3;
  int folds = 10;
  std::uint64_t seed = 1;
  std::string outdir = "out";
  int threads = 1;
  int intercorr_top = 100;
};

struct ReportRow {
  std::string dataset;
  int fold;
  std::string condition;  // language or threshold label
  std::string mode;
  std::string param;
  int n_fragments;
  double auc;
  std::int64_t correspondences;
  double avg_features_per_molecule;
  double min_score;
};

std::string report_csv(const std::vector<ReportRow>& rows);
std::string summary_csv(const std::vector<ReportRow>& rows);

// Exit status semantics shared by all commands: 0 full success, 1 config
// error, 2 partial per-dataset failures.
int cmd_mine(const ExperimentConfig& config);
int cmd_evaluate(const ExperimentConfig& config);
int cmd_generate(const GeneratorSpec& spec, std::uint64_t seed, const std::string& out_path);
int cmd_analyze(const std::string& fragments_tsv_path, const std::string& dataset_path,
                const std::string& outdir);

// Per-dataset evaluation used by cmd_evaluate and the acceptance suite.
std::vector<ReportRow> evaluate_dataset(const LabeledDataset& dataset,
                                        const ExperimentConfig& config);

// Pairwise Wilcoxon comparisons of per-fold AUCs between conditions.
std::string wilcoxon_csv(const std::vector<ReportRow>& rows, double alpha);

}  // namespace fragmine
