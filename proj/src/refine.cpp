#include "fragmine/refine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fragmine {

namespace {

std::vector<OccurringPattern> sorted_by_code(std::map<std::string, OccurringPattern>&& by_code) {
  std::vector<OccurringPattern> out;
  out.reserve(by_code.size());
  for (auto& [_, p] : by_code) out.push_back(std::move(p));
  return out;
}

MolecularGraph with_leaf(const MolecularGraph& g, int at, BondLabel bond,
                         const std::string& label) {
  MolecularGraph out = g;
  int v = out.add_vertex(label);
  out.add_edge(at, v, bond);
  return out;
}

MolecularGraph with_edge(const MolecularGraph& g, int u, int v, BondLabel bond) {
  MolecularGraph out = g;
  out.add_edge(u, v, bond);
  return out;
}

// (label, bond, label) triples present in the given molecules, both
// orientations, used to restrict extension candidates.
struct LabelGuide {
  std::set<std::tuple<std::string, BondLabel, std::string>> triples;
  std::set<BondLabel> bonds;

  void collect(const LabeledDataset& ds, const std::vector<int>& mols) {
    for (int mi : mols) {
      const MolecularGraph& m = ds.molecules[mi];
      for (const Edge& e : m.edges()) {
        triples.insert({m.label(e.src), e.bond, m.label(e.dst)});
        triples.insert({m.label(e.dst), e.bond, m.label(e.src)});
        bonds.insert(e.bond);
      }
    }
  }

  std::vector<std::pair<BondLabel, std::string>> extensions(const std::string& from) const {
    std::vector<std::pair<BondLabel, std::string>> out;
    for (const auto& [a, b, c] : triples)
      if (a == from) out.emplace_back(b, c);
    return out;
  }
};

}  // namespace

std::string designated_parent_code(const Pattern& pattern) {
  if (pattern_num_edges(pattern) < 2)
    throw std::invalid_argument("single-edge patterns have no parent");
  if (const auto* s = std::get_if<SequencePattern>(&pattern)) {
    std::vector<std::string> atoms(s->atoms().begin(), s->atoms().end() - 1);
    std::vector<BondLabel> bonds(s->bonds().begin(), s->bonds().end() - 1);
    return SequencePattern(std::move(atoms), std::move(bonds)).code();
  }
  if (const auto* t = std::get_if<TreePattern>(&pattern)) {
    // Parent class: minimum tree code over all leaf removals.
    const MolecularGraph& g = t->graph();
    std::string best;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.neighbors(v).size() != 1) continue;
      MolecularGraph sub;
      std::vector<int> remap(g.num_vertices(), -1);
      for (int u = 0; u < g.num_vertices(); ++u)
        if (u != v) remap[u] = sub.add_vertex(g.label(u));
      for (const Edge& e : g.edges())
        if (e.src != v && e.dst != v) sub.add_edge(remap[e.src], remap[e.dst], e.bond);
      std::string code = TreePattern(std::move(sub)).code();
      if (best.empty() || code < best) best = std::move(code);
    }
    return best;
  }
  if (const auto* gp = std::get_if<GraphPattern>(&pattern)) {
    // gSpan parent: the minimum DFS code minus its last entry.
    std::string code = min_dfs_code(gp->graph());
    std::string prefix = code.substr(0, code.rfind(';'));
    return canonical_code(parse_pattern_code("G:" + prefix));
  }
  throw std::invalid_argument("walk fragments are not refined");
}

std::vector<OccurringPattern> seed_patterns(PatternLanguage language,
                                            const LabeledDataset& dataset) {
  std::map<std::string, OccurringPattern> by_code;
  for (int mi = 0; mi < static_cast<int>(dataset.size()); ++mi) {
    std::set<std::string> seen_here;
    for (const Edge& e : dataset.molecules[mi].edges()) {
      MolecularGraph g;
      g.add_vertex(dataset.molecules[mi].label(e.src));
      g.add_vertex(dataset.molecules[mi].label(e.dst));
      g.add_edge(0, 1, e.bond);
      Pattern p = make_pattern(g, language);
      std::string code = canonical_code(p);
      if (!seen_here.insert(code).second) continue;
      auto it = by_code.find(code);
      if (it == by_code.end())
        by_code.emplace(code, OccurringPattern{std::move(p), code, {mi}});
      else
        it->second.occurrences.push_back(mi);
    }
  }
  return sorted_by_code(std::move(by_code));
}

std::vector<OccurringPattern> refine(const OccurringPattern& parent, PatternLanguage language,
                                     const LabeledDataset& dataset) {
  if (parent.occurrences.empty())
    throw std::invalid_argument("refine requires a pattern occurring in the dataset");

  LabelGuide guide;
  guide.collect(dataset, parent.occurrences);

  std::vector<MolecularGraph> candidates;
  if (const auto* s = std::get_if<SequencePattern>(&parent.pattern)) {
    for (bool front : {true, false}) {
      const std::string& endpoint = front ? s->atoms().front() : s->atoms().back();
      for (const auto& [bond, label] : guide.extensions(endpoint)) {
        std::vector<std::string> atoms = s->atoms();
        std::vector<BondLabel> bonds = s->bonds();
        if (front) {
          atoms.insert(atoms.begin(), label);
          bonds.insert(bonds.begin(), bond);
        } else {
          atoms.push_back(label);
          bonds.push_back(bond);
        }
        // Chain graph in path order; re-wrapped below.
        MolecularGraph g;
        for (const auto& a : atoms) g.add_vertex(a);
        for (std::size_t i = 0; i < bonds.size(); ++i)
          g.add_edge(static_cast<int>(i), static_cast<int>(i) + 1, bonds[i]);
        candidates.push_back(std::move(g));
      }
    }
  } else {
    const MolecularGraph g = pattern_graph(parent.pattern);
    for (int v = 0; v < g.num_vertices(); ++v)
      for (const auto& [bond, label] : guide.extensions(g.label(v)))
        candidates.push_back(with_leaf(g, v, bond, label));
    if (language == PatternLanguage::Graph) {
      for (int u = 0; u < g.num_vertices(); ++u)
        for (int v = u + 1; v < g.num_vertices(); ++v) {
          if (g.has_edge(u, v)) continue;
          for (BondLabel b : guide.bonds)
            if (guide.triples.count({g.label(u), b, g.label(v)}))
              candidates.push_back(with_edge(g, u, v, b));
        }
    }
  }

  std::map<std::string, OccurringPattern> children;
  for (MolecularGraph& cg : candidates) {
    Pattern child = make_pattern(cg, language);
    std::string code = canonical_code(child);
    if (children.count(code)) continue;
    if (designated_parent_code(child) != parent.code) continue;
    std::vector<int> occ;
    for (int mi : parent.occurrences)
      if (occurs(child, dataset.molecules[mi])) occ.push_back(mi);
    if (occ.empty()) continue;
    children.emplace(code, OccurringPattern{std::move(child), code, std::move(occ)});
  }
  return sorted_by_code(std::move(children));
}

}  // namespace fragmine
