#include "fragmine/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fragmine {

CorrespondenceReport correspondences(const std::vector<Fingerprint>& fingerprints,
                                     const std::vector<Activity>& labels) {
  if (fingerprints.size() != labels.size())
    throw std::invalid_argument("fingerprints and labels must be aligned");
  std::map<Fingerprint, std::pair<int, int>> groups;  // fp -> (actives, inactives)
  CorrespondenceReport report;
  for (std::size_t i = 0; i < fingerprints.size(); ++i) {
    auto& [act, inact] = groups[fingerprints[i]];
    (labels[i] == Activity::Active ? act : inact)++;
    if (fingerprints[i].popcount() == 0) ++report.zero_vector_count;
  }
  for (const auto& [fp, counts] : groups) {
    auto [act, inact] = counts;
    report.pair_count += static_cast<std::int64_t>(act) * inact;
    if (act > 0 && inact > 0) report.involved_molecules += act + inact;
  }
  return report;
}

Eigen::MatrixXd intercorrelation(const FragmentVocabulary& vocab, std::size_t m,
                                 const LabeledDataset& dataset) {
  if (m > vocab.size()) throw std::invalid_argument("m exceeds vocabulary size");
  const std::size_t n = dataset.size();
  Eigen::MatrixXd presence(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      presence(i, j) = occurs(vocab.entries[j].pattern, dataset.molecules[i]) ? 1.0 : 0.0;

  Eigen::VectorXd mean = presence.colwise().mean();
  Eigen::MatrixXd centered = presence.rowwise() - mean.transpose();
  Eigen::VectorXd norm = centered.colwise().norm();

  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (norm(i) == 0.0) continue;  // constant indicator
    for (std::size_t j = 0; j < m; ++j) {
      if (norm(j) == 0.0) continue;
      phi(i, j) = centered.col(i).dot(centered.col(j)) / (norm(i) * norm(j));
    }
  }
  return phi;
}

double features_per_molecule(const std::vector<Fingerprint>& fingerprints) {
  if (fingerprints.empty()) return 0.0;
  double total = 0.0;
  for (const Fingerprint& fp : fingerprints) total += fp.popcount();
  return total / static_cast<double>(fingerprints.size());
}

ScoreStats score_stats(const std::vector<ScoredPattern>& patterns) {
  if (patterns.empty()) throw std::invalid_argument("score_stats needs a non-empty list");
  ScoreStats s;
  s.sorted_desc.reserve(patterns.size());
  for (const ScoredPattern& p : patterns) s.sorted_desc.push_back(p.score);
  std::sort(s.sorted_desc.begin(), s.sorted_desc.end(), std::greater<>());
  s.max = s.sorted_desc.front();
  s.min = s.sorted_desc.back();
  return s;
}

double cyclic_fraction(const std::vector<ScoredPattern>& patterns) {
  if (patterns.empty()) return 0.0;
  int cyclic = 0;
  for (const ScoredPattern& p : patterns) {
    if (std::holds_alternative<WalkFragment>(p.pattern)) continue;  // walks are label strings
    const MolecularGraph g = pattern_graph(p.pattern);
    // A connected graph is cyclic iff it has at least as many edges as vertices.
    if (g.num_edges() >= g.num_vertices()) ++cyclic;
  }
  return static_cast<double>(cyclic) / static_cast<double>(patterns.size());
}

std::vector<ScoredPattern> crop_by_score(const std::vector<ScoredPattern>& patterns,
                                         double floor) {
  if (floor < 0) throw std::invalid_argument("floor must be >= 0");
  std::vector<ScoredPattern> out;
  for (const ScoredPattern& p : patterns)
    if (p.score >= floor) out.push_back(p);
  return out;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                                    double alpha) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples must have equal length");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) diffs.push_back(a[i] - b[i]);
  const int n = static_cast<int>(diffs.size());
  if (n < 5) throw std::invalid_argument("fewer than 5 nonzero differences");

  // Midranks of |d|.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int x, int y) { return std::abs(diffs[x]) < std::abs(diffs[y]); });
  std::vector<double> rank(n);
  std::vector<int> tie_sizes;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && std::abs(diffs[idx[j]]) == std::abs(diffs[idx[i]])) ++j;
    double mid = (i + 1 + j) / 2.0;
    for (int k = i; k < j; ++k) rank[idx[k]] = mid;
    tie_sizes.push_back(j - i);
    i = j;
  }

  double w_plus = 0.0, w_minus = 0.0;
  for (int i = 0; i < n; ++i) (diffs[i] > 0 ? w_plus : w_minus) += rank[i];
  double w = std::min(w_plus, w_minus);

  double p;
  if (n <= 30) {
    // Exact null distribution over sign assignments of the observed ranks.
    // Doubled ranks keep everything integral under midranks.
    int total2 = 0;
    std::vector<int> r2(n);
    for (int i = 0; i < n; ++i) {
      r2[i] = static_cast<int>(std::lround(2.0 * rank[i]));
      total2 += r2[i];
    }
    std::vector<double> count(total2 + 1, 0.0);
    count[0] = 1.0;
    for (int i = 0; i < n; ++i)
      for (int s = total2; s >= r2[i]; --s) count[s] += count[s - r2[i]];
    double below = 0.0, all = std::ldexp(1.0, n);
    int w2 = static_cast<int>(std::lround(2.0 * w));
    for (int s = 0; s <= std::min(w2, total2); ++s) below += count[s];
    p = std::min(1.0, 2.0 * below / all);
  } else {
    double mean = n * (n + 1) / 4.0;
    double var = n * (n + 1) * (2.0 * n + 1) / 24.0;
    for (int t : tie_sizes) var -= (static_cast<double>(t) * t * t - t) / 48.0;
    double z = (w - mean) / std::sqrt(var);
    p = std::erfc(std::abs(z) / std::sqrt(2.0));
  }

  std::vector<double> sorted = diffs;
  std::sort(sorted.begin(), sorted.end());
  double median = (n % 2) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return {w, p, p <= 1.0 - alpha, median > 0 ? 1 : (median < 0 ? -1 : 0)};
}

std::string intercorrelation_tsv(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out << "i\tj\tphi\n";
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.10g", m(i, j));
      out << i << '\t' << j << '\t' << buf << '\n';
    }
  return out.str();
}

}  // namespace fragmine
