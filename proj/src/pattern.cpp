#include "fragmine/pattern.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fragmine {

const char* language_name(PatternLanguage lang) {
  switch (lang) {
    case PatternLanguage::Sequence: return "sequence";
    case PatternLanguage::Tree: return "tree";
    case PatternLanguage::Graph: return "graph";
  }
  throw std::logic_error("invalid language");
}

PatternLanguage language_from_name(const std::string& name) {
  if (name == "sequence" || name == "seq") return PatternLanguage::Sequence;
  if (name == "tree") return PatternLanguage::Tree;
  if (name == "graph") return PatternLanguage::Graph;
  throw std::invalid_argument("unknown pattern language: " + name);
}

namespace {

std::string render_chain(const std::vector<std::string>& atoms,
                         const std::vector<BondLabel>& bonds) {
  std::string out = atoms[0];
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    out += bond_char(bonds[i]);
    out += atoms[i + 1];
  }
  return out;
}

// Stores the orientation whose rendered string is the smaller one.
void canonicalize_chain(std::vector<std::string>& atoms, std::vector<BondLabel>& bonds) {
  std::vector<std::string> ratoms(atoms.rbegin(), atoms.rend());
  std::vector<BondLabel> rbonds(bonds.rbegin(), bonds.rend());
  if (render_chain(ratoms, rbonds) < render_chain(atoms, bonds)) {
    atoms = std::move(ratoms);
    bonds = std::move(rbonds);
  }
}

void parse_chain(const std::string& body, std::vector<std::string>& atoms,
                 std::vector<BondLabel>& bonds) {
  std::size_t i = 0;
  auto read_atom = [&] {
    std::size_t start = i;
    while (i < body.size() && body[i] != '-' && body[i] != '=' && body[i] != '#' &&
           body[i] != ':')
      ++i;
    if (i == start) throw std::invalid_argument("malformed chain code: " + body);
    atoms.push_back(body.substr(start, i - start));
  };
  read_atom();
  while (i < body.size()) {
    bonds.push_back(bond_from_char(body[i]));
    ++i;
    read_atom();
  }
}

MolecularGraph chain_to_graph(const std::vector<std::string>& atoms,
                              const std::vector<BondLabel>& bonds) {
  MolecularGraph g;
  for (const auto& a : atoms) g.add_vertex(a);
  for (std::size_t i = 0; i < bonds.size(); ++i)
    g.add_edge(static_cast<int>(i), static_cast<int>(i) + 1, bonds[i]);
  return g;
}

}  // namespace

SequencePattern::SequencePattern(std::vector<std::string> atoms, std::vector<BondLabel> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  if (atoms_.size() < 2 || bonds_.size() + 1 != atoms_.size())
    throw std::invalid_argument("sequence needs m >= 2 atoms and m-1 bonds");
  canonicalize_chain(atoms_, bonds_);
}

std::string SequencePattern::code() const { return "S:" + render_chain(atoms_, bonds_); }

MolecularGraph SequencePattern::to_graph() const { return chain_to_graph(atoms_, bonds_); }

WalkFragment::WalkFragment(std::vector<std::string> atoms, std::vector<BondLabel> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  if (atoms_.size() < 2 || bonds_.size() + 1 != atoms_.size())
    throw std::invalid_argument("walk needs m >= 2 atoms and m-1 bonds");
  canonicalize_chain(atoms_, bonds_);
}

std::string WalkFragment::code() const { return "W:" + render_chain(atoms_, bonds_); }

// ---------------------------------------------------------------------------
// Free-tree canonical code

namespace {

std::string rooted_tree_code(const MolecularGraph& t, int v, int parent) {
  std::vector<std::string> entries;
  for (const auto& [n, b] : t.neighbors(v))
    if (n != parent) entries.push_back(bond_char(b) + rooted_tree_code(t, n, v));
  std::sort(entries.begin(), entries.end());
  std::string out = "(" + t.label(v);
  for (const auto& e : entries) out += e;
  out += ")";
  return out;
}

std::vector<int> tree_centers(const MolecularGraph& t) {
  int n = t.num_vertices();
  if (n == 1) return {0};
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(t.neighbors(v).size());
  std::vector<int> layer;
  std::vector<char> removed(n, 0);
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) layer.push_back(v);
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = 1;
      --remaining;
      for (const auto& [u, _] : t.neighbors(v))
        if (!removed[u] && --degree[u] == 1) next.push_back(u);
    }
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) centers.push_back(v);
  return centers;
}

}  // namespace

std::string tree_canonical_code(const MolecularGraph& tree) {
  if (tree.num_vertices() == 0) throw std::invalid_argument("empty tree");
  std::string best;
  for (int c : tree_centers(tree)) {
    std::string code = rooted_tree_code(tree, c, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

bool is_tree_graph(const MolecularGraph& g) {
  return g.num_vertices() >= 1 && g.num_edges() == g.num_vertices() - 1 && g.connected();
}

bool is_path_graph(const MolecularGraph& g) {
  if (!is_tree_graph(g)) return false;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.neighbors(v).size() > 2) return false;
  return true;
}

TreePattern::TreePattern(MolecularGraph tree) : tree_(std::move(tree)) {
  if (!is_tree_graph(tree_)) throw std::invalid_argument("tree pattern must be a connected acyclic graph");
}

std::string TreePattern::code() const { return "T:" + tree_canonical_code(tree_); }

// ---------------------------------------------------------------------------
// Minimum DFS code (gSpan)

namespace {

struct DfsTuple {
  int i, j;
  std::string li, lj;
  BondLabel bond;

  std::string render() const {
    std::ostringstream s;
    s << i << ',' << j << ',' << li << ',' << bond_char(bond) << ',' << lj;
    return s.str();
  }
};

struct DfsState {
  std::vector<int> map;     // dfs index -> graph vertex
  std::vector<int> rindex;  // graph vertex -> dfs index or -1
  std::vector<int> rmpath;  // dfs indices along the rightmost path
  std::uint64_t used = 0;   // bitmask over edge ids
};

// Candidate extension ordering key. Backward edges precede forward edges;
// backward: smaller target first; forward: deeper source first, then labels.
struct CandKey {
  int backward;  // 0 = backward, 1 = forward
  int a;         // backward: target dfs index; forward: depth from rightmost
  int bond;
  std::string lj;

  auto tie() const { return std::make_tuple(backward, a, bond, lj); }
  bool operator<(const CandKey& o) const { return tie() < o.tie(); }
  bool operator==(const CandKey& o) const { return tie() == o.tie(); }
};

struct Candidate {
  CandKey key;
  DfsTuple tuple;
  int state_idx;
  int graph_vertex;  // forward: new vertex; backward: unused
  int edge_id;
  int src_dfs;  // forward: source dfs index
};

int edge_id_between(const MolecularGraph& g, int a, int b) {
  const auto& es = g.edges();
  for (std::size_t k = 0; k < es.size(); ++k)
    if ((es[k].src == a && es[k].dst == b) || (es[k].src == b && es[k].dst == a))
      return static_cast<int>(k);
  return -1;
}

}  // namespace

std::string min_dfs_code(const MolecularGraph& g) {
  int ne = g.num_edges();
  if (ne == 0) throw std::invalid_argument("graph pattern needs at least one edge");
  if (ne > 63) throw std::invalid_argument("graph pattern too large");
  if (!g.connected()) throw std::invalid_argument("graph pattern must be connected");

  // Seed with the minimal first tuple over all oriented edges.
  std::vector<DfsState> states;
  DfsTuple first{};
  bool have_first = false;
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = g.edges()[e];
    for (auto [u, v] : {std::pair{ed.src, ed.dst}, std::pair{ed.dst, ed.src}}) {
      DfsTuple t{0, 1, g.label(u), g.label(v), ed.bond};
      auto key = std::make_tuple(t.li, static_cast<int>(t.bond), t.lj);
      auto best = std::make_tuple(first.li, static_cast<int>(first.bond), first.lj);
      if (!have_first || key < best) {
        first = t;
        have_first = true;
        states.clear();
      }
      if (key == std::make_tuple(first.li, static_cast<int>(first.bond), first.lj)) {
        DfsState s;
        s.map = {u, v};
        s.rindex.assign(g.num_vertices(), -1);
        s.rindex[u] = 0;
        s.rindex[v] = 1;
        s.rmpath = {0, 1};
        s.used = std::uint64_t{1} << e;
        states.push_back(std::move(s));
      }
    }
  }

  std::string code = first.render();

  for (int placed = 1; placed < ne; ++placed) {
    std::vector<Candidate> cands;
    for (int si = 0; si < static_cast<int>(states.size()); ++si) {
      const DfsState& s = states[si];
      int r = s.rmpath.back();
      int vr = s.map[r];
      // Backward: rightmost vertex to a rightmost-path vertex.
      for (std::size_t p = 0; p + 1 < s.rmpath.size(); ++p) {
        int jd = s.rmpath[p];
        int vj = s.map[jd];
        int eid = edge_id_between(g, vr, vj);
        if (eid < 0 || (s.used >> eid) & 1) continue;
        BondLabel b = g.edges()[eid].bond;
        cands.push_back({CandKey{0, jd, static_cast<int>(b), ""},
                         DfsTuple{r, jd, g.label(vr), g.label(vj), b}, si, -1, eid, -1});
      }
      // Forward: from a rightmost-path vertex to an undiscovered vertex.
      for (std::size_t p = 0; p < s.rmpath.size(); ++p) {
        int i = s.rmpath[s.rmpath.size() - 1 - p];  // deepest first
        int vi = s.map[i];
        for (const auto& [n, b] : g.neighbors(vi)) {
          if (s.rindex[n] != -1) continue;
          int eid = edge_id_between(g, vi, n);
          cands.push_back({CandKey{1, static_cast<int>(p), static_cast<int>(b), g.label(n)},
                           DfsTuple{i, static_cast<int>(s.map.size()), g.label(vi), g.label(n), b},
                           si, n, eid, i});
        }
      }
    }
    const Candidate* best = nullptr;
    for (const Candidate& c : cands)
      if (!best || c.key < best->key) best = &c;
    if (!best) throw std::logic_error("dfs code search stalled");

    std::vector<DfsState> next;
    for (const Candidate& c : cands) {
      if (!(c.key == best->key)) continue;
      DfsState s = states[c.state_idx];
      if (c.key.backward == 0) {
        s.used |= std::uint64_t{1} << c.edge_id;
      } else {
        int t = static_cast<int>(s.map.size());
        s.map.push_back(c.graph_vertex);
        s.rindex[c.graph_vertex] = t;
        while (s.rmpath.back() != c.src_dfs) s.rmpath.pop_back();
        s.rmpath.push_back(t);
        s.used |= std::uint64_t{1} << c.edge_id;
      }
      next.push_back(std::move(s));
    }
    states = std::move(next);
    code += ';';
    code += best->tuple.render();
  }
  return code;
}

GraphPattern::GraphPattern(MolecularGraph graph) : graph_(std::move(graph)) {
  if (!graph_.connected() || graph_.num_edges() == 0)
    throw std::invalid_argument("graph pattern must be connected with >= 1 edge");
}

std::string GraphPattern::code() const {
  if (code_cache_.empty()) code_cache_ = "G:" + min_dfs_code(graph_);
  return code_cache_;
}

// ---------------------------------------------------------------------------
// Variant helpers

std::string canonical_code(const Pattern& pattern) {
  return std::visit([](const auto& p) { return p.code(); }, pattern);
}

PatternLanguage pattern_language(const Pattern& pattern) {
  if (std::holds_alternative<SequencePattern>(pattern)) return PatternLanguage::Sequence;
  if (std::holds_alternative<TreePattern>(pattern)) return PatternLanguage::Tree;
  if (std::holds_alternative<GraphPattern>(pattern)) return PatternLanguage::Graph;
  throw std::invalid_argument("walk fragments are outside the pattern languages");
}

const MolecularGraph pattern_graph(const Pattern& pattern) {
  if (const auto* s = std::get_if<SequencePattern>(&pattern)) return s->to_graph();
  if (const auto* t = std::get_if<TreePattern>(&pattern)) return t->graph();
  if (const auto* g = std::get_if<GraphPattern>(&pattern)) return g->graph();
  throw std::invalid_argument("walk fragments have no pattern graph");
}

int pattern_num_edges(const Pattern& pattern) {
  if (const auto* w = std::get_if<WalkFragment>(&pattern))
    return static_cast<int>(w->bonds().size());
  return pattern_graph(pattern).num_edges();
}

Pattern make_pattern(const MolecularGraph& g, PatternLanguage lang) {
  switch (lang) {
    case PatternLanguage::Sequence: {
      if (!is_path_graph(g)) throw std::invalid_argument("not a path graph");
      // Walk the path from an endpoint.
      int start = 0;
      for (int v = 0; v < g.num_vertices(); ++v)
        if (g.neighbors(v).size() == 1) {
          start = v;
          break;
        }
      std::vector<std::string> atoms{g.label(start)};
      std::vector<BondLabel> bonds;
      int prev = -1, cur = start;
      while (static_cast<int>(atoms.size()) < g.num_vertices()) {
        for (const auto& [n, b] : g.neighbors(cur)) {
          if (n == prev) continue;
          atoms.push_back(g.label(n));
          bonds.push_back(b);
          prev = cur;
          cur = n;
          break;
        }
      }
      return SequencePattern(std::move(atoms), std::move(bonds));
    }
    case PatternLanguage::Tree: return TreePattern(g);
    case PatternLanguage::Graph: return GraphPattern(g);
  }
  throw std::logic_error("invalid language");
}

namespace {

MolecularGraph graph_from_dfs_code(const std::string& body) {
  MolecularGraph g;
  std::istringstream in(body);
  std::string tuple;
  while (std::getline(in, tuple, ';')) {
    std::istringstream ts(tuple);
    std::string fi, fj, li, fb, lj;
    if (!std::getline(ts, fi, ',') || !std::getline(ts, fj, ',') || !std::getline(ts, li, ',') ||
        !std::getline(ts, fb, ',') || !std::getline(ts, lj, ',') || fb.size() != 1)
      throw std::invalid_argument("malformed graph code: " + body);
    int i = std::stoi(fi), j = std::stoi(fj);
    BondLabel b = bond_from_char(fb[0]);
    if (g.num_vertices() == 0) g.add_vertex(li);
    if (j == g.num_vertices()) g.add_vertex(lj);
    g.add_edge(i, j, b);
  }
  return g;
}

int parse_rooted_tree(const std::string& body, std::size_t& pos, MolecularGraph& g, int parent,
                      BondLabel incoming) {
  if (pos >= body.size() || body[pos] != '(')
    throw std::invalid_argument("malformed tree code: " + body);
  ++pos;
  std::size_t start = pos;
  while (pos < body.size() && body[pos] != '(' && body[pos] != ')' && body[pos] != '-' &&
         body[pos] != '=' && body[pos] != '#' && body[pos] != ':')
    ++pos;
  int v = g.add_vertex(body.substr(start, pos - start));
  if (parent >= 0) g.add_edge(parent, v, incoming);
  while (pos < body.size() && body[pos] != ')') {
    BondLabel b = bond_from_char(body[pos]);
    ++pos;
    parse_rooted_tree(body, pos, g, v, b);
  }
  if (pos >= body.size()) throw std::invalid_argument("malformed tree code: " + body);
  ++pos;  // consume ')'
  return v;
}

}  // namespace

Pattern parse_pattern_code(const std::string& code) {
  if (code.size() < 3 || code[1] != ':')
    throw std::invalid_argument("malformed pattern code: " + code);
  std::string body = code.substr(2);
  switch (code[0]) {
    case 'S':
    case 'W': {
      std::vector<std::string> atoms;
      std::vector<BondLabel> bonds;
      parse_chain(body, atoms, bonds);
      if (code[0] == 'S') return SequencePattern(std::move(atoms), std::move(bonds));
      return WalkFragment(std::move(atoms), std::move(bonds));
    }
    case 'T': {
      MolecularGraph g;
      std::size_t pos = 0;
      parse_rooted_tree(body, pos, g, -1, BondLabel::Single);
      if (pos != body.size()) throw std::invalid_argument("malformed tree code: " + code);
      return TreePattern(std::move(g));
    }
    case 'G': return GraphPattern(graph_from_dfs_code(body));
  }
  throw std::invalid_argument("unknown pattern code tag: " + code);
}

}  // namespace fragmine
