#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fragmine/molgraph.hpp"

namespace fragmine {

struct PlantedFragment {
  std::string smiles;
  double p_active;    // insertion probability in active molecules
  double p_inactive;  // insertion probability in inactive molecules
};

struct GeneratorSpec {
  int n_molecules = 200;
  int min_size = 6;  // skeleton atoms, before planted fragments
  int max_size = 12;
  double active_fraction = 0.5;
  std::vector<std::string> atom_labels = {"C", "C", "C", "N", "O"};  // sampled uniformly
  double double_bond_prob = 0.15;
  double ring_edge_prob = 0.2;  // chance of one extra ring-closing edge
  std::vector<PlantedFragment> planted;
};

// Deterministic synthetic dataset: random mostly-chain skeletons with the
// planted fragments embedded per class probability (attached by one single
// bond to a random skeleton vertex).
LabeledDataset generate_dataset(const GeneratorSpec& spec, std::uint64_t seed);

// JSON manifest recording the spec, seed and the planted fragments'
// canonical codes (graph always; tree/sequence when the fragment qualifies).
std::string generator_manifest(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace fragmine
