#include "fragmine/molgraph.hpp"

#include <algorithm>
#include <vector>

namespace fragmine {

BondLabel bond_from_char(char c) {
  switch (c) {
    case '-': return BondLabel::Single;
    case '=': return BondLabel::Double;
    case '#': return BondLabel::Triple;
    case ':': return BondLabel::Aromatic;
  }
  throw std::invalid_argument(std::string("unknown bond symbol '") + c + "'");
}

BondLabel bond_from_int(int v) {
  if (v < 1 || v > 4) throw std::invalid_argument("bond label out of range: " + std::to_string(v));
  return static_cast<BondLabel>(v);
}

int MolecularGraph::add_vertex(std::string label) {
  labels_.push_back(std::move(label));
  adj_.emplace_back();
  return num_vertices() - 1;
}

void MolecularGraph::add_edge(int src, int dst, BondLabel bond) {
  if (src < 0 || src >= num_vertices() || dst < 0 || dst >= num_vertices())
    throw std::out_of_range("edge references unknown vertex");
  if (src == dst) throw std::invalid_argument("self-loop rejected");
  if (has_edge(src, dst)) throw std::invalid_argument("parallel edge rejected");
  edges_.push_back({src, dst, bond});
  adj_[src].emplace_back(dst, bond);
  adj_[dst].emplace_back(src, bond);
}

bool MolecularGraph::has_edge(int a, int b) const {
  if (a < 0 || a >= num_vertices()) return false;
  for (const auto& [n, _] : adj_[a])
    if (n == b) return true;
  return false;
}

BondLabel MolecularGraph::edge_bond(int a, int b) const {
  for (const auto& [n, bond] : adj_.at(a))
    if (n == b) return bond;
  throw std::out_of_range("no such edge");
}

bool MolecularGraph::connected() const {
  if (num_vertices() <= 1) return true;
  std::vector<char> seen(num_vertices(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [n, _] : adj_[v]) {
      if (!seen[n]) {
        seen[n] = 1;
        ++visited;
        stack.push_back(n);
      }
    }
  }
  return visited == num_vertices();
}

int LabeledDataset::count(Activity a) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), a));
}

bool LabeledDataset::both_classes_present() const {
  return count(Activity::Active) > 0 && count(Activity::Inactive) > 0;
}

}  // namespace fragmine
