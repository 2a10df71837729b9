#include "fragmine/learn.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fragmine/analyze.hpp"

namespace fragmine {

double tanimoto(const Fingerprint& x, const Fingerprint& y) {
  int u = union_count(x, y);
  if (u == 0) return 1.0;  // two all-zero fingerprints are identical objects
  return static_cast<double>(intersection_count(x, y)) / u;
}

Eigen::MatrixXd tanimoto_kernel_matrix(const std::vector<Fingerprint>& fps) {
  const Eigen::Index n = static_cast<Eigen::Index>(fps.size());
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) K(i, j) = K(j, i) = tanimoto(fps[i], fps[j]);
  }
  return K;
}

Eigen::MatrixXd tanimoto_cross_kernel(const std::vector<Fingerprint>& test,
                                      const std::vector<Fingerprint>& train) {
  Eigen::MatrixXd K(test.size(), train.size());
  for (Eigen::Index i = 0; i < K.rows(); ++i)
    for (Eigen::Index j = 0; j < K.cols(); ++j) K(i, j) = tanimoto(test[i], train[j]);
  return K;
}

SvmModel train_svm(const Eigen::MatrixXd& K, const std::vector<int>& labels, double C,
                   double tol) {
  const int n = static_cast<int>(labels.size());
  if (K.rows() != n || K.cols() != n) throw std::invalid_argument("kernel/label size mismatch");
  if (C <= 0) throw std::invalid_argument("C must be > 0");
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw std::invalid_argument("labels must be -1 or +1");
  }
  if (!has_pos || !has_neg) throw std::invalid_argument("single-class labels");

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);  // G_i = (Q alpha)_i - 1

  const long max_iter = 1000L * std::max(n, 1000);
  double m_up = 0.0, m_low = 0.0;
  for (long iter = 0; iter < max_iter; ++iter) {
    int i = -1, j = -1;
    m_up = -std::numeric_limits<double>::infinity();
    m_low = std::numeric_limits<double>::infinity();
    for (int t = 0; t < n; ++t) {
      double v = -labels[t] * grad(t);
      bool in_up = (labels[t] == 1 && alpha(t) < C) || (labels[t] == -1 && alpha(t) > 0);
      bool in_low = (labels[t] == -1 && alpha(t) < C) || (labels[t] == 1 && alpha(t) > 0);
      if (in_up && v > m_up) {
        m_up = v;
        i = t;
      }
      if (in_low && v < m_low) {
        m_low = v;
        j = t;
      }
    }
    if (i < 0 || j < 0 || m_up - m_low < tol) break;

    double a = K(i, i) + K(j, j) - 2.0 * K(i, j);
    if (a < 1e-12) a = 1e-12;
    double t_star = (m_up - m_low) / a;
    // Box limits along alpha + t * (y_i e_i - y_j e_j).
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    if (labels[i] == 1) {
      lo = std::max(lo, -alpha(i));
      hi = std::min(hi, C - alpha(i));
    } else {
      lo = std::max(lo, alpha(i) - C);
      hi = std::min(hi, alpha(i));
    }
    if (labels[j] == 1) {
      lo = std::max(lo, alpha(j) - C);
      hi = std::min(hi, alpha(j));
    } else {
      lo = std::max(lo, -alpha(j));
      hi = std::min(hi, C - alpha(j));
    }
    double t_clipped = std::clamp(t_star, lo, hi);
    if (t_clipped == 0.0) break;

    alpha(i) += labels[i] * t_clipped;
    alpha(j) -= labels[j] * t_clipped;
    for (int t = 0; t < n; ++t) grad(t) += labels[t] * t_clipped * (K(t, i) - K(t, j));
  }

  SvmModel model;
  model.alpha = alpha;
  model.y = labels;
  model.C = C;
  // Bias from free support vectors, midpoint of the violation bounds otherwise.
  double sum = 0.0;
  int free_svs = 0;
  for (int t = 0; t < n; ++t) {
    if (alpha(t) > 1e-12 && alpha(t) < C - 1e-12) {
      // At a free SV y_t f(x_t) = 1 and grad(t) = y_t f_no_bias(x_t) - 1,
      // so the bias is -y_t grad(t).
      sum += -labels[t] * grad(t);
      ++free_svs;
    }
  }
  model.bias = free_svs > 0 ? sum / free_svs : (m_up + m_low) / 2.0;
  return model;
}

Eigen::VectorXd decision_values(const SvmModel& model, const Eigen::MatrixXd& K_test_train) {
  if (K_test_train.cols() != model.alpha.size())
    throw std::invalid_argument("kernel column count must equal training size");
  Eigen::VectorXd coef(model.alpha.size());
  for (Eigen::Index i = 0; i < coef.size(); ++i) coef(i) = model.alpha(i) * model.y[i];
  return (K_test_train * coef).array() + model.bias;
}

double dual_objective(const Eigen::MatrixXd& K, const std::vector<int>& labels,
                      const Eigen::VectorXd& alpha) {
  Eigen::VectorXd ya(alpha.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) ya(i) = alpha(i) * labels[i];
  return alpha.sum() - 0.5 * ya.dot(K * ya);
}

double auc(const std::vector<double>& scores, const std::vector<Activity>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores/labels mismatch");
  const int n = static_cast<int>(scores.size());
  int pos = 0, neg = 0;
  for (Activity a : labels) (a == Activity::Active ? pos : neg)++;
  if (pos == 0 || neg == 0) throw std::invalid_argument("single-class input");

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] < scores[b]; });
  double rank_sum_pos = 0.0;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
    double midrank = (i + 1 + j) / 2.0;
    for (int k = i; k < j; ++k)
      if (labels[idx[k]] == Activity::Active) rank_sum_pos += midrank;
    i = j;
  }
  double u = rank_sum_pos - pos * (pos + 1.0) / 2.0;
  return u / (static_cast<double>(pos) * neg);
}

namespace {

// Deterministic bounded draw (avoids platform-dependent distributions).
std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return rng() % bound; }

}  // namespace

FoldAssignment stratified_folds(const std::vector<Activity>& labels, int folds,
                                std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("folds must be >= 2");
  std::vector<int> actives, inactives;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    (labels[i] == Activity::Active ? actives : inactives).push_back(i);
  if (static_cast<int>(actives.size()) < folds || static_cast<int>(inactives.size()) < folds)
    throw std::invalid_argument("class smaller than fold count");

  FoldAssignment fa;
  fa.seed = seed;
  fa.fold.assign(labels.size(), 0);
  std::mt19937_64 rng(seed);
  for (std::vector<int>* cls : {&actives, &inactives}) {
    for (std::size_t i = cls->size(); i > 1; --i)
      std::swap((*cls)[i - 1], (*cls)[draw(rng, i)]);
    for (std::size_t i = 0; i < cls->size(); ++i)
      fa.fold[(*cls)[i]] = static_cast<int>(i) % folds;
  }
  return fa;
}

namespace {

FoldMetrics evaluate_fold(const LabeledDataset& dataset, const FoldAssignment& fa, int fold,
                          const VocabularyBuilder& builder, double C, double tol) {
  LabeledDataset train;
  train.name = dataset.name;
  std::vector<int> test_idx;
  for (int i = 0; i < static_cast<int>(dataset.size()); ++i) {
    if (fa.fold[i] == fold) {
      test_idx.push_back(i);
    } else {
      train.molecules.push_back(dataset.molecules[i]);
      train.labels.push_back(dataset.labels[i]);
    }
  }

  std::vector<ScoredPattern> mined = builder(train);
  FragmentVocabulary vocab = FragmentVocabulary::from_patterns(mined);

  std::vector<Fingerprint> train_fps = encode_dataset(train, vocab);
  std::vector<Fingerprint> test_fps;
  std::vector<Activity> test_labels;
  for (int i : test_idx) {
    test_fps.push_back(encode_gfp(dataset.molecules[i], vocab));
    test_labels.push_back(dataset.labels[i]);
  }

  std::vector<int> y;
  for (Activity a : train.labels) y.push_back(a == Activity::Active ? 1 : -1);
  SvmModel model = train_svm(tanimoto_kernel_matrix(train_fps), y, C, tol);
  Eigen::VectorXd f = decision_values(model, tanimoto_cross_kernel(test_fps, train_fps));
  std::vector<double> scores(f.data(), f.data() + f.size());

  std::vector<Fingerprint> all_fps = encode_dataset(dataset, vocab);
  CorrespondenceReport corr = correspondences(all_fps, dataset.labels);

  FoldMetrics m;
  m.fold = fold;
  m.n_fragments = static_cast<int>(vocab.size());
  m.auc = auc(scores, test_labels);
  m.correspondence_pairs = corr.pair_count;
  m.avg_features_per_molecule = features_per_molecule(all_fps);
  m.min_score = mined.empty() ? 0.0 : score_stats(mined).min;
  return m;
}

}  // namespace

std::vector<FoldMetrics> run_cv(const LabeledDataset& dataset, const VocabularyBuilder& builder,
                                double C, double tol, int folds, std::uint64_t seed,
                                int threads) {
  if (!dataset.both_classes_present())
    throw std::invalid_argument("cross validation needs both classes");
  FoldAssignment fa = stratified_folds(dataset.labels, folds, seed);
  std::vector<FoldMetrics> out(folds);
  if (threads <= 1) {
    for (int f = 0; f < folds; ++f) out[f] = evaluate_fold(dataset, fa, f, builder, C, tol);
    return out;
  }
  std::vector<std::future<FoldMetrics>> futures;
  for (int f = 0; f < folds; ++f)
    futures.push_back(std::async(std::launch::async, [&, f] {
      return evaluate_fold(dataset, fa, f, builder, C, tol);
    }));
  for (int f = 0; f < folds; ++f) out[f] = futures[f].get();
  return out;
}

}  // namespace fragmine
