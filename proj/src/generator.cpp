#include "fragmine/generator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "fragmine/pattern.hpp"
#include "fragmine/smiles.hpp"

namespace fragmine {

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

// Deterministic Bernoulli from the top 53 bits.
bool coin(std::mt19937_64& rng, double p) {
  return (rng() >> 11) * 0x1.0p-53 < p;
}

MolecularGraph random_skeleton(const GeneratorSpec& spec, std::mt19937_64& rng) {
  int size = spec.min_size + static_cast<int>(draw(
                                 rng, static_cast<std::uint64_t>(spec.max_size - spec.min_size + 1)));
  MolecularGraph m;
  for (int i = 0; i < size; ++i) {
    m.add_vertex(spec.atom_labels[draw(rng, spec.atom_labels.size())]);
    if (i > 0) {
      // Mostly chain-like: attach to one of the last three vertices.
      int lo = std::max(0, i - 3);
      int parent = lo + static_cast<int>(draw(rng, static_cast<std::uint64_t>(i - lo)));
      BondLabel b = coin(rng, spec.double_bond_prob) ? BondLabel::Double : BondLabel::Single;
      m.add_edge(parent, i, b);
    }
  }
  if (size >= 4 && coin(rng, spec.ring_edge_prob)) {
    int u = static_cast<int>(draw(rng, size));
    int v = static_cast<int>(draw(rng, size));
    if (u != v && !m.has_edge(u, v)) m.add_edge(u, v, BondLabel::Single);
  }
  return m;
}

void embed_fragment(MolecularGraph& m, const MolecularGraph& frag, std::mt19937_64& rng) {
  int attach = static_cast<int>(draw(rng, m.num_vertices()));
  int base = m.num_vertices();
  for (int v = 0; v < frag.num_vertices(); ++v) m.add_vertex(frag.label(v));
  for (const Edge& e : frag.edges()) m.add_edge(base + e.src, base + e.dst, e.bond);
  m.add_edge(attach, base, BondLabel::Single);
}

}  // namespace

LabeledDataset generate_dataset(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.n_molecules < 0 || spec.min_size < 1 || spec.max_size < spec.min_size)
    throw std::invalid_argument("invalid generator size parameters");
  std::vector<MolecularGraph> frags;
  for (const PlantedFragment& pf : spec.planted) {
    MolecularGraph g = parse_smiles(pf.smiles);
    if (g.num_vertices() > spec.max_size)
      throw std::invalid_argument("planted fragment larger than molecule size range");
    frags.push_back(std::move(g));
  }

  std::mt19937_64 rng(seed);
  LabeledDataset ds;
  int n_active = static_cast<int>(std::lround(spec.n_molecules * spec.active_fraction));
  for (int i = 0; i < spec.n_molecules; ++i) {
    Activity label = i < n_active ? Activity::Active : Activity::Inactive;
    MolecularGraph m = random_skeleton(spec, rng);
    for (std::size_t f = 0; f < frags.size(); ++f) {
      double p = label == Activity::Active ? spec.planted[f].p_active : spec.planted[f].p_inactive;
      if (coin(rng, p)) embed_fragment(m, frags[f], rng);
    }
    m.id = std::to_string(i);
    ds.molecules.push_back(std::move(m));
    ds.labels.push_back(label);
  }
  return ds;
}

std::string generator_manifest(const GeneratorSpec& spec, std::uint64_t seed) {
  nlohmann::json j;
  j["seed"] = seed;
  j["n_molecules"] = spec.n_molecules;
  j["min_size"] = spec.min_size;
  j["max_size"] = spec.max_size;
  j["active_fraction"] = spec.active_fraction;
  j["atom_labels"] = spec.atom_labels;
  j["planted"] = nlohmann::json::array();
  for (const PlantedFragment& pf : spec.planted) {
    nlohmann::json p;
    p["smiles"] = pf.smiles;
    p["p_active"] = pf.p_active;
    p["p_inactive"] = pf.p_inactive;
    MolecularGraph g = parse_smiles(pf.smiles);
    p["graph_code"] = canonical_code(make_pattern(g, PatternLanguage::Graph));
    if (is_tree_graph(g)) p["tree_code"] = canonical_code(make_pattern(g, PatternLanguage::Tree));
    if (is_path_graph(g))
      p["sequence_code"] = canonical_code(make_pattern(g, PatternLanguage::Sequence));
    j["planted"].push_back(std::move(p));
  }
  return j.dump(2) + "\n";
}

}  // namespace fragmine
