#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fragmine {

// Bond order used by every canonical code: Single < Double < Triple < Aromatic.
enum class BondLabel : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

inline char bond_char(BondLabel b) {
  switch (b) {
    case BondLabel::Single: return '-';
    case BondLabel::Double: return '=';
    case BondLabel::Triple: return '#';
    case BondLabel::Aromatic: return ':';
  }
  throw std::logic_error("invalid bond label");
}

BondLabel bond_from_char(char c);
BondLabel bond_from_int(int v);

enum class Activity : std::uint8_t { Inactive = 0, Active = 1 };

struct Edge {
  int src;
  int dst;
  BondLabel bond;
};

// Labeled undirected simple graph. Vertices carry element symbols; "H" never
// appears (hydrogens are dropped at parse time).
class MolecularGraph {
 public:
  MolecularGraph() = default;

  int add_vertex(std::string label);
  // Rejects self-loops and parallel edges, validates indices.
  void add_edge(int src, int dst, BondLabel bond);

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::string& label(int v) const { return labels_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<int, BondLabel>>& neighbors(int v) const { return adj_.at(v); }

  bool has_edge(int a, int b) const;
  // Bond label of edge (a,b); throws if absent.
  BondLabel edge_bond(int a, int b) const;

  bool connected() const;

  std::string id;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, BondLabel>>> adj_;
};

struct LabeledDataset {
  std::vector<MolecularGraph> molecules;
  std::vector<Activity> labels;
  std::string name;

  std::size_t size() const { return molecules.size(); }
  int count(Activity a) const;
  bool both_classes_present() const;
};

}  // namespace fragmine
