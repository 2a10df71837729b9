#include <algorithm>
#include <vector>

#include "fragmine/pattern.hpp"

namespace fragmine {

namespace {

// Backtracking search for an injective label-preserving homomorphism.
// Pattern vertices are visited in a connectivity order so every vertex after
// the first has at least one already-mapped neighbor to anchor on.
class Matcher {
 public:
  Matcher(const MolecularGraph& pattern, const MolecularGraph& mol)
      : p_(pattern), m_(mol) {
    order_.reserve(p_.num_vertices());
    std::vector<char> seen(p_.num_vertices(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order_.push_back(v);
      for (const auto& [n, _] : p_.neighbors(v))
        if (!seen[n]) {
          seen[n] = 1;
          stack.push_back(n);
        }
    }
  }

  bool find() {
    if (p_.num_vertices() > m_.num_vertices()) return false;
    map_.assign(p_.num_vertices(), -1);
    used_.assign(m_.num_vertices(), 0);
    return extend(0);
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    int pv = order_[depth];
    // Candidates: neighbors of an already-mapped pattern neighbor, or any
    // molecule vertex for the root.
    int anchor = -1;
    BondLabel anchor_bond = BondLabel::Single;
    for (const auto& [n, b] : p_.neighbors(pv))
      if (map_[n] != -1) {
        anchor = n;
        anchor_bond = b;
        break;
      }
    if (anchor == -1) {
      for (int mv = 0; mv < m_.num_vertices(); ++mv)
        if (try_vertex(pv, mv, depth)) return true;
      return false;
    }
    for (const auto& [mv, b] : m_.neighbors(map_[anchor])) {
      if (b != anchor_bond) continue;
      if (try_vertex(pv, mv, depth)) return true;
    }
    return false;
  }

  bool try_vertex(int pv, int mv, std::size_t depth) {
    if (used_[mv] || m_.label(mv) != p_.label(pv)) return false;
    // Every edge to an already-mapped pattern vertex must exist with the
    // same bond label.
    for (const auto& [n, b] : p_.neighbors(pv)) {
      if (map_[n] == -1) continue;
      if (!m_.has_edge(mv, map_[n]) || m_.edge_bond(mv, map_[n]) != b) return false;
    }
    map_[pv] = mv;
    used_[mv] = 1;
    if (extend(depth + 1)) return true;
    map_[pv] = -1;
    used_[mv] = 0;
    return false;
  }

  const MolecularGraph& p_;
  const MolecularGraph& m_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<char> used_;
};

bool walk_extend(const MolecularGraph& m, const WalkFragment& w, std::size_t step, int cur,
                 int prev_edge_src) {
  if (step == w.bonds().size()) return true;
  for (const auto& [n, b] : m.neighbors(cur)) {
    if (b != w.bonds()[step] || m.label(n) != w.atoms()[step + 1]) continue;
    if (n == prev_edge_src) continue;  // no immediate edge backtracking
    if (walk_extend(m, w, step + 1, n, cur)) return true;
  }
  return false;
}

}  // namespace

bool subgraph_occurs(const MolecularGraph& pattern, const MolecularGraph& molecule) {
  if (pattern.num_vertices() == 0) return true;
  return Matcher(pattern, molecule).find();
}

bool walk_occurs(const WalkFragment& walk, const MolecularGraph& molecule) {
  for (int v = 0; v < molecule.num_vertices(); ++v) {
    if (molecule.label(v) != walk.atoms()[0]) continue;
    if (walk_extend(molecule, walk, 0, v, -1)) return true;
  }
  return false;
}

bool occurs(const Pattern& pattern, const MolecularGraph& molecule) {
  if (const auto* w = std::get_if<WalkFragment>(&pattern)) return walk_occurs(*w, molecule);
  return subgraph_occurs(pattern_graph(pattern), molecule);
}

}  // namespace fragmine
