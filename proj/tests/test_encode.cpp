#include <doctest.h>

#include <random>
#include <set>

#include "fragmine/analyze.hpp"
#include "fragmine/encode.hpp"
#include "fragmine/smiles.hpp"
#include "fragmine/transactions.hpp"
#include "oracles.hpp"

using namespace fragmine;

namespace {

FragmentVocabulary vocab_from_smiles(const std::vector<std::string>& smiles) {
  std::vector<ScoredPattern> mined;
  for (const auto& s : smiles) {
    Pattern p = make_pattern(parse_smiles(s), PatternLanguage::Graph);
    mined.push_back({p, canonical_code(p), {0, 0, 1, 1}, 0.0});
  }
  return FragmentVocabulary::from_patterns(mined);
}

std::set<std::size_t> set_bits(const Fingerprint& fp) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < fp.size(); ++i)
    if (fp.test(i)) out.insert(i);
  return out;
}

}  // namespace

TEST_CASE("encode_gfp basics") {
  FragmentVocabulary empty;
  CHECK(encode_gfp(parse_smiles("CC"), empty).size() == 0);

  FragmentVocabulary cc = vocab_from_smiles({"CC"});
  Fingerprint ethane = encode_gfp(parse_smiles("CC"), cc);
  REQUIRE(ethane.size() == 1);
  CHECK(ethane.test(0));
  MolecularGraph lone;
  lone.add_vertex("C");
  Fingerprint atom = encode_gfp(lone, cc);
  CHECK_FALSE(atom.test(0));
  CHECK(atom.popcount() == 0);
}

TEST_CASE("encode_gfp agrees with per-fragment occurrence oracle") {
  FragmentVocabulary v = vocab_from_smiles({"CC", "C=O", "cc", "CN", "C1CC1"});
  for (const char* s : {"c1ccccc1", "CC(=O)N", "C1CC1C", "O=C=O"}) {
    MolecularGraph mol = parse_smiles(s);
    Fingerprint fp = encode_gfp(mol, v);
    REQUIRE(fp.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(fp.test(i) == oracles::brute_occurs(pattern_graph(v.entries[i].pattern), mol));
  }
}

TEST_CASE("encode_dataset matrix matches per-cell encoding") {
  CHECK(encode_dataset(LabeledDataset{}, vocab_from_smiles({"CC"})).empty());
  LabeledDataset ds = parse_smiles_file("CCO\t1\nCC\t0\nO\t1\n");
  FragmentVocabulary v = vocab_from_smiles({"CC", "CO"});
  auto rows = encode_dataset(ds, v);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i)
    CHECK(rows[i] == encode_gfp(ds.molecules[i], v));
  CHECK(rows[2].popcount() == 0);  // lone oxygen matches nothing
}

TEST_CASE("vocabulary rejects duplicate codes and keeps rank order") {
  std::vector<ScoredPattern> mined;
  Pattern p = make_pattern(parse_smiles("CC"), PatternLanguage::Graph);
  mined.push_back({p, canonical_code(p), {0, 0, 1, 1}, 5.0});
  mined.push_back({p, canonical_code(p), {0, 0, 1, 1}, 3.0});
  CHECK_THROWS(FragmentVocabulary::from_patterns(mined));

  FragmentVocabulary v = vocab_from_smiles({"CN", "CC"});
  CHECK(v.entries[0].code == "G:0,1,C,-,N");
  CHECK(v.entries[1].code == "G:0,1,C,-,C");
}

TEST_CASE("encode_hashed determinism and basic shape") {
  FragmentVocabulary v = vocab_from_smiles({"CC"});
  MolecularGraph none = parse_smiles("O");
  CHECK(encode_hashed(none, v, 32, 2, 1).popcount() == 0);
  CHECK(encode_hashed(none, v, 32, 2, 1).size() == 32);

  MolecularGraph ethane = parse_smiles("CC");
  Fingerprint one = encode_hashed(ethane, v, 512, 1, 9);
  CHECK(one.popcount() == 1);

  Fingerprint a = encode_hashed(ethane, v, 64, 3, 5);
  Fingerprint b = encode_hashed(ethane, v, 64, 3, 5);
  CHECK(a == b);
  CHECK(!(a == encode_hashed(ethane, v, 64, 3, 6)));
}

TEST_CASE("encode_hashed golden pattern") {
  // Pinned output of the documented hash chain for k=64, b=2, seed=7.
  FragmentVocabulary v = vocab_from_smiles({"CC", "C=O", "CN"});
  Fingerprint fp = encode_hashed(parse_smiles("CC(=O)N"), v, 64, 2, 7);
  CHECK(set_bits(fp) == std::set<std::size_t>{1, 14, 19, 40, 44, 53});
}

TEST_CASE("hashed bits are the union of per-fragment positions") {
  FragmentVocabulary v = vocab_from_smiles({"CC", "C=O", "CN", "CO"});
  MolecularGraph mol = parse_smiles("CC(=O)N");
  Fingerprint fp = encode_hashed(mol, v, 128, 2, 42);
  std::set<std::size_t> expect;
  for (const auto& e : v.entries) {
    if (!occurs(e.pattern, mol)) continue;
    std::uint64_t h = hash_code(e.code, 42);
    for (int j = 0; j < 2; ++j) expect.insert(splitmix64(h + 1 + j) % 128);
  }
  CHECK(set_bits(fp) == expect);
}

TEST_CASE("refinement monotonicity: larger vocabulary preserves distinctions") {
  std::mt19937_64 rng(19);
  LabeledDataset ds = oracles::random_dataset(rng, 15, 7, 3, 2);
  auto mined = mine_topk(ds, PatternLanguage::Tree, 60);
  for (int small : {5, 15, 30}) {
    std::vector<ScoredPattern> head(mined.begin(),
                                    mined.begin() + std::min<std::size_t>(small, mined.size()));
    FragmentVocabulary vs = FragmentVocabulary::from_patterns(head);
    FragmentVocabulary vl = FragmentVocabulary::from_patterns(mined);
    auto rs = encode_dataset(ds, vs);
    auto rl = encode_dataset(ds, vl);
    for (std::size_t i = 0; i < ds.size(); ++i)
      for (std::size_t j = i + 1; j < ds.size(); ++j)
        if (!(rs[i] == rs[j])) CHECK(!(rl[i] == rl[j]));
  }
}

TEST_CASE("hashing cannot reduce correspondences") {
  std::mt19937_64 rng(29);
  LabeledDataset ds = oracles::random_dataset(rng, 20, 7, 3, 2);
  auto mined = mine_topk(ds, PatternLanguage::Graph, 40);
  FragmentVocabulary v = FragmentVocabulary::from_patterns(mined);
  auto gfp = encode_dataset(ds, v);
  long base = correspondences(gfp, ds.labels).pair_count;
  for (int k : {16, 64, 256}) {
    for (int b : {1, 2}) {
      std::vector<Fingerprint> hashed;
      for (const auto& m : ds.molecules) hashed.push_back(encode_hashed(m, v, k, b, 7));
      CHECK(correspondences(hashed, ds.labels).pair_count >= base);
    }
  }
}

TEST_CASE("fingerprint serializations") {
  LabeledDataset ds = parse_smiles_file("CCO\t1\nCC\t0\n");
  FragmentVocabulary v = vocab_from_smiles({"CC", "CO"});
  auto rows = encode_dataset(ds, v);
  std::string csv = fingerprints_csv(rows, v);
  CHECK(csv == "molecule,G:0,1,C,-,C,G:0,1,C,-,O\n0,1,1\n1,1,0\n");
  CHECK(fingerprints_sparse_tsv(rows) == "molecule\tfragment_rank\n0\t1\n0\t2\n1\t1\n");
}
