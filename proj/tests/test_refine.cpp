#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "fragmine/refine.hpp"
#include "fragmine/transactions.hpp"
#include "oracles.hpp"

using namespace fragmine;

namespace {

// Full closure of refine over the seed patterns; checks anti-monotone
// support along the way.
std::map<std::string, std::vector<int>> refine_closure(const LabeledDataset& ds,
                                                       PatternLanguage lang) {
  std::map<std::string, std::vector<int>> found;
  std::vector<OccurringPattern> stack = seed_patterns(lang, ds);
  while (!stack.empty()) {
    OccurringPattern node = std::move(stack.back());
    stack.pop_back();
    REQUIRE_MESSAGE(!found.count(node.code), "duplicate enumeration of " << node.code);
    found.emplace(node.code, node.occurrences);
    for (OccurringPattern& child : refine(node, lang, ds)) {
      CHECK(child.occurrences.size() <= node.occurrences.size());
      stack.push_back(std::move(child));
    }
  }
  return found;
}

}  // namespace

TEST_CASE("refine on propane yields the single extension") {
  LabeledDataset ds = parse_transactions("t # 0 1\nv 0 C\nv 1 C\nv 2 C\ne 0 1 1\ne 1 2 1\n");
  ds.labels = {Activity::Active};
  auto seeds = seed_patterns(PatternLanguage::Sequence, ds);
  REQUIRE(seeds.size() == 1);
  CHECK(seeds[0].code == "S:C-C");
  auto children = refine(seeds[0], PatternLanguage::Sequence, ds);
  REQUIRE(children.size() == 1);
  CHECK(children[0].code == "S:C-C-C");
  CHECK(refine(children[0], PatternLanguage::Sequence, ds).empty());
}

TEST_CASE("refine rejects a pattern with no occurrences") {
  LabeledDataset ds;
  OccurringPattern p{SequencePattern({"C", "C"}, {BondLabel::Single}), "S:C-C", {}};
  CHECK_THROWS(refine(p, PatternLanguage::Sequence, ds));
}

TEST_CASE("refine closure equals brute-force enumeration with exact occurrence lists") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    LabeledDataset ds = oracles::random_dataset(rng, 5, 6, 3, 2);
    for (PatternLanguage lang :
         {PatternLanguage::Sequence, PatternLanguage::Tree, PatternLanguage::Graph}) {
      auto closure = refine_closure(ds, lang);
      auto brute = oracles::brute_all_patterns(ds, lang);
      REQUIRE_MESSAGE(closure.size() == brute.size(),
                      language_name(lang) << " trial " << trial);
      for (const ScoredPattern& sp : brute) {
        auto it = closure.find(sp.code);
        REQUIRE_MESSAGE(it != closure.end(), "missing " << sp.code);
        // Occurrence lists carried through refinement match brute force.
        std::vector<int> expect;
        for (int i = 0; i < static_cast<int>(ds.size()); ++i)
          if (oracles::brute_occurs(pattern_graph(sp.pattern), ds.molecules[i]))
            expect.push_back(i);
        CHECK(it->second == expect);
      }
    }
  }
}

TEST_CASE("refine closure on a larger dataset, up to 6 edges") {
  std::mt19937_64 rng(131);
  LabeledDataset ds = oracles::random_dataset(rng, 12, 7, 3, 2);
  for (PatternLanguage lang : {PatternLanguage::Sequence, PatternLanguage::Tree}) {
    auto closure = refine_closure(ds, lang);
    std::set<std::string> brute;
    for (const ScoredPattern& sp : oracles::brute_all_patterns(ds, lang)) brute.insert(sp.code);
    std::set<std::string> mined;
    for (const auto& [code, _] : closure) mined.insert(code);
    CHECK(mined == brute);
  }
}

TEST_CASE("designated parent is unique and one edge smaller") {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 40; ++trial) {
    MolecularGraph g = oracles::random_molecule(rng, 6, {"C", "N"},
                                                {BondLabel::Single, BondLabel::Double});
    if (g.num_edges() < 2) continue;
    Pattern p = make_pattern(g, PatternLanguage::Graph);
    std::string parent_code = designated_parent_code(p);
    Pattern parent = parse_pattern_code(parent_code);
    CHECK(pattern_num_edges(parent) == pattern_num_edges(p) - 1);
    CHECK(canonical_code(parent) == parent_code);
  }
}
