#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fragmine/molgraph.hpp"

namespace fragmine {

enum class PatternLanguage { Sequence, Tree, Graph };

const char* language_name(PatternLanguage lang);
PatternLanguage language_from_name(const std::string& name);

// Simple path fragment: m >= 2 atoms, m-1 bonds. Constructors store the
// canonical orientation (rendered string <= its reversal).
class SequencePattern {
 public:
  SequencePattern(std::vector<std::string> atoms, std::vector<BondLabel> bonds);

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<BondLabel>& bonds() const { return bonds_; }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }

  std::string code() const;  // "S:" prefix
  MolecularGraph to_graph() const;

 private:
  std::vector<std::string> atoms_;
  std::vector<BondLabel> bonds_;
};

// Free (unrooted) labeled tree fragment. Canonical code roots the tree at its
// center; with an edge center the smaller of the two rooted codes wins.
class TreePattern {
 public:
  explicit TreePattern(MolecularGraph tree);

  const MolecularGraph& graph() const { return tree_; }
  std::string code() const;  // "T:" prefix

 private:
  MolecularGraph tree_;
};

// Connected labeled graph fragment. Canonical code is the minimum DFS code
// (gSpan), cached after first computation.
class GraphPattern {
 public:
  explicit GraphPattern(MolecularGraph graph);

  const MolecularGraph& graph() const { return graph_; }
  std::string code() const;  // "G:" prefix

 private:
  MolecularGraph graph_;
  mutable std::string code_cache_;
};

// Label string of a walk without immediate edge backtracking; the baseline
// fragment type. Canonical orientation like SequencePattern, "W:" code.
class WalkFragment {
 public:
  WalkFragment(std::vector<std::string> atoms, std::vector<BondLabel> bonds);

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<BondLabel>& bonds() const { return bonds_; }

  std::string code() const;

 private:
  std::vector<std::string> atoms_;
  std::vector<BondLabel> bonds_;
};

using Pattern = std::variant<SequencePattern, TreePattern, GraphPattern, WalkFragment>;

std::string canonical_code(const Pattern& pattern);
PatternLanguage pattern_language(const Pattern& pattern);
// Underlying labeled graph of a sequence/tree/graph pattern; throws for walks.
const MolecularGraph pattern_graph(const Pattern& pattern);
int pattern_num_edges(const Pattern& pattern);

// Rebuilds a pattern from its canonical code (inverse of canonical_code).
Pattern parse_pattern_code(const std::string& code);

// Wraps a labeled graph in the pattern type of the given language. Throws if
// the graph is outside the language (cyclic for Tree, branching for Sequence).
Pattern make_pattern(const MolecularGraph& g, PatternLanguage lang);

// Minimum DFS code of a connected labeled graph, serialized without prefix.
std::string min_dfs_code(const MolecularGraph& g);
// Canonical rooted code of a free tree, serialized without prefix.
std::string tree_canonical_code(const MolecularGraph& tree);

bool is_path_graph(const MolecularGraph& g);
bool is_tree_graph(const MolecularGraph& g);

// True iff an injective, label-preserving homomorphism from pattern to
// molecule exists (non-induced subgraph semantics).
bool subgraph_occurs(const MolecularGraph& pattern, const MolecularGraph& molecule);
bool occurs(const Pattern& pattern, const MolecularGraph& molecule);
bool walk_occurs(const WalkFragment& walk, const MolecularGraph& molecule);

}  // namespace fragmine
