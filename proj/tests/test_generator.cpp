#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fragmine/generator.hpp"
#include "fragmine/miner.hpp"
#include "fragmine/smiles.hpp"
#include "fragmine/transactions.hpp"
#include "oracles.hpp"

using namespace fragmine;

TEST_CASE("generator determinism and basic shape") {
  GeneratorSpec spec;
  spec.n_molecules = 60;
  spec.planted = {{"N=O", 0.8, 0.1}};
  LabeledDataset a = generate_dataset(spec, 5);
  LabeledDataset b = generate_dataset(spec, 5);
  CHECK(write_transactions(a) == write_transactions(b));
  CHECK(write_transactions(a) != write_transactions(generate_dataset(spec, 6)));
  REQUIRE(a.size() == 60);
  CHECK(a.count(Activity::Active) == 30);
  for (const auto& m : a.molecules) {
    CHECK(m.connected());
    CHECK(m.num_vertices() >= spec.min_size);
  }
}

TEST_CASE("zero molecules produce an empty dataset and file") {
  GeneratorSpec spec;
  spec.n_molecules = 0;
  LabeledDataset ds = generate_dataset(spec, 1);
  CHECK(ds.size() == 0);
  CHECK(write_transactions(ds) == "");
}

TEST_CASE("a fully penetrant planted fragment is recovered with chi2 = dataset size") {
  GeneratorSpec spec;
  spec.n_molecules = 30;
  spec.min_size = 5;
  spec.max_size = 8;
  spec.atom_labels = {"C", "C", "O"};
  spec.planted = {{"NC(=S)N", 1.0, 0.0}};
  LabeledDataset ds = generate_dataset(spec, 21);
  auto top = mine_topk(ds, PatternLanguage::Graph, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0].score == doctest::Approx(30.0));
  // The planted fragment itself is among the pure top patterns.
  std::string planted =
      canonical_code(make_pattern(parse_smiles("NC(=S)N"), PatternLanguage::Graph));
  bool found = false;
  for (const auto& sp : mine_threshold(ds, PatternLanguage::Graph, 30.0))
    if (sp.code == planted) found = true;
  CHECK(found);
}

TEST_CASE("insertion probabilities are honoured approximately") {
  GeneratorSpec spec;
  spec.n_molecules = 400;
  spec.atom_labels = {"C", "C", "O"};
  spec.planted = {{"N#N", 0.9, 0.05}};
  LabeledDataset ds = generate_dataset(spec, 33);
  MolecularGraph frag = parse_smiles("N#N");
  int in_active = 0, in_inactive = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    bool has = oracles::brute_occurs(frag, ds.molecules[i]);
    if (ds.labels[i] == Activity::Active)
      in_active += has;
    else
      in_inactive += has;
  }
  CHECK(in_active >= 160);   // ~180 expected of 200
  CHECK(in_inactive <= 30);  // ~10 expected of 200
}

TEST_CASE("infeasible planted fragment is rejected") {
  GeneratorSpec spec;
  spec.n_molecules = 10;
  spec.min_size = 3;
  spec.max_size = 4;
  spec.planted = {{"CCCCCC", 1.0, 0.0}};
  CHECK_THROWS_WITH(generate_dataset(spec, 1),
                    doctest::Contains("larger than molecule size range"));
}

TEST_CASE("manifest records seed and planted codes") {
  GeneratorSpec spec;
  spec.n_molecules = 10;
  spec.planted = {{"N=O", 0.9, 0.05}};
  nlohmann::json m = nlohmann::json::parse(generator_manifest(spec, 77));
  CHECK(m["seed"] == 77);
  CHECK(m["n_molecules"] == 10);
  REQUIRE(m["planted"].size() == 1);
  CHECK(m["planted"][0]["smiles"] == "N=O");
  CHECK(m["planted"][0]["graph_code"] ==
        canonical_code(make_pattern(parse_smiles("N=O"), PatternLanguage::Graph)));
  CHECK(m["planted"][0]["p_active"] == 0.9);
}
