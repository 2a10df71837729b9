#include "fragmine/miner.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "fragmine/refine.hpp"

namespace fragmine {

namespace {

void sort_results(std::vector<ScoredPattern>& out) {
  std::sort(out.begin(), out.end(), [](const ScoredPattern& a, const ScoredPattern& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.code < b.code;
  });
}

// DFS over the canonical refinement tree. `record` sees every visited node;
// `prune_below` gives the current pruning threshold for upper bounds.
template <typename Record, typename PruneBelow>
void search(const LabeledDataset& dataset, PatternLanguage language, Record&& record,
            PruneBelow&& prune_below) {
  std::vector<OccurringPattern> stack = seed_patterns(language, dataset);
  std::reverse(stack.begin(), stack.end());
  while (!stack.empty()) {
    OccurringPattern node = std::move(stack.back());
    stack.pop_back();
    ContingencyTable table = make_table(dataset, node.occurrences);
    record(node, table);
    if (chi2_upper_bound(table) < prune_below()) continue;
    std::vector<OccurringPattern> children = refine(node, language, dataset);
    for (auto it = children.rbegin(); it != children.rend(); ++it)
      stack.push_back(std::move(*it));
  }
}

}  // namespace

ContingencyTable make_table(const LabeledDataset& dataset, const std::vector<int>& occurrences) {
  ContingencyTable t{0, 0, dataset.count(Activity::Active), dataset.count(Activity::Inactive)};
  for (int mi : occurrences)
    (dataset.labels[mi] == Activity::Active ? t.p : t.n)++;
  return t;
}

std::vector<ScoredPattern> mine_topk(const LabeledDataset& dataset, PatternLanguage language,
                                     int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!dataset.both_classes_present()) throw std::invalid_argument("undefined correlation");
  std::vector<ScoredPattern> visited;
  std::multiset<double> best;  // k largest scores seen so far
  search(
      dataset, language,
      [&](const OccurringPattern& node, const ContingencyTable& table) {
        double score = chi2(table);
        visited.push_back({node.pattern, node.code, table, score});
        best.insert(score);
        if (static_cast<int>(best.size()) > k) best.erase(best.begin());
      },
      [&]() { return static_cast<int>(best.size()) < k ? 0.0 : *best.begin(); });
  sort_results(visited);
  if (static_cast<int>(visited.size()) > k)
    visited.erase(visited.begin() + k, visited.end());
  return visited;
}

std::vector<ScoredPattern> mine_threshold(const LabeledDataset& dataset,
                                          PatternLanguage language, double threshold) {
  if (threshold <= 0) throw std::invalid_argument("threshold must be > 0");
  if (!dataset.both_classes_present()) throw std::invalid_argument("undefined correlation");
  std::vector<ScoredPattern> out;
  search(
      dataset, language,
      [&](const OccurringPattern& node, const ContingencyTable& table) {
        double score = chi2(table);
        if (score >= threshold) out.push_back({node.pattern, node.code, table, score});
      },
      [&]() { return threshold; });
  sort_results(out);
  return out;
}

std::vector<ScoredPattern> run_mining(const LabeledDataset& dataset, const MiningTask& task) {
  if (task.mode == MiningMode::TopK) return mine_topk(dataset, task.language, task.k);
  return mine_threshold(dataset, task.language, task.threshold);
}

namespace {

void enumerate_walks(const MolecularGraph& m, int max_length, std::vector<std::string>& atoms,
                     std::vector<BondLabel>& bonds, int cur, int prev,
                     std::map<std::string, WalkFragment>& found) {
  if (static_cast<int>(bonds.size()) >= max_length) return;
  for (const auto& [n, b] : m.neighbors(cur)) {
    if (n == prev) continue;  // no immediate edge backtracking
    atoms.push_back(m.label(n));
    bonds.push_back(b);
    WalkFragment w(atoms, bonds);
    found.emplace(w.code(), w);
    enumerate_walks(m, max_length, atoms, bonds, n, cur, found);
    atoms.pop_back();
    bonds.pop_back();
  }
}

}  // namespace

std::vector<ScoredPattern> enumerate_restricted_paths(const LabeledDataset& dataset,
                                                      int max_length, int min_freq) {
  if (max_length < 1 || min_freq < 1)
    throw std::invalid_argument("max_length and min_freq must be >= 1");
  std::map<std::string, WalkFragment> fragments;
  std::map<std::string, std::vector<int>> occurrences;
  for (int mi = 0; mi < static_cast<int>(dataset.size()); ++mi) {
    const MolecularGraph& m = dataset.molecules[mi];
    std::map<std::string, WalkFragment> here;
    for (int v = 0; v < m.num_vertices(); ++v) {
      std::vector<std::string> atoms{m.label(v)};
      std::vector<BondLabel> bonds;
      enumerate_walks(m, max_length, atoms, bonds, v, -1, here);
    }
    for (auto& [code, w] : here) {
      occurrences[code].push_back(mi);
      fragments.emplace(code, std::move(w));
    }
  }
  std::vector<ScoredPattern> out;
  for (auto& [code, occ] : occurrences) {
    if (static_cast<int>(occ.size()) < min_freq) continue;
    ContingencyTable table = make_table(dataset, occ);
    out.push_back({fragments.at(code), code, table, chi2(table)});
  }
  sort_results(out);
  return out;
}

std::string fragments_tsv(const std::vector<ScoredPattern>& patterns) {
  std::ostringstream out;
  out << "rank\tcanonical_code\tchi2\tp\tn\tP\tN\n";
  char buf[64];
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const ScoredPattern& sp = patterns[i];
    std::snprintf(buf, sizeof buf, "%.10g", sp.score);
    out << (i + 1) << '\t' << sp.code << '\t' << buf << '\t' << sp.table.p << '\t' << sp.table.n
        << '\t' << sp.table.P << '\t' << sp.table.N << '\n';
  }
  return out.str();
}

std::vector<ScoredPattern> parse_fragments_tsv(const std::string& text) {
  std::vector<ScoredPattern> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string rank, code, score, p, n, P, N;
    if (!std::getline(ls, rank, '\t') || !std::getline(ls, code, '\t') ||
        !std::getline(ls, score, '\t') || !std::getline(ls, p, '\t') ||
        !std::getline(ls, n, '\t') || !std::getline(ls, P, '\t') || !std::getline(ls, N, '\t'))
      throw std::invalid_argument("malformed fragments TSV line: " + line);
    ContingencyTable table{std::stoi(p), std::stoi(n), std::stoi(P), std::stoi(N)};
    out.push_back({parse_pattern_code(code), code, table, std::stod(score)});
  }
  return out;
}

}  // namespace fragmine
