#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fragmine/miner.hpp"
#include "fragmine/pattern.hpp"

namespace fragmine {

// Binary presence vector packed into 64-bit words.
class Fingerprint {
 public:
  Fingerprint() = default;
  explicit Fingerprint(std::size_t nbits);

  std::size_t size() const { return nbits_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  int popcount() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const Fingerprint& o) const = default;
  // Total order for grouping.
  bool operator<(const Fingerprint& o) const;

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

int intersection_count(const Fingerprint& a, const Fingerprint& b);
int union_count(const Fingerprint& a, const Fingerprint& b);

struct FragmentVocabulary {
  struct Entry {
    std::string code;
    Pattern pattern;
  };
  std::vector<Entry> entries;
  std::string provenance;  // mining task / fold id, free-form

  std::size_t size() const { return entries.size(); }

  static FragmentVocabulary from_patterns(const std::vector<ScoredPattern>& mined,
                                          std::string provenance = "");
};

// Generalized fingerprint: bit i = 1 iff vocabulary entry i occurs in the
// molecule. Presence only, never counts.
Fingerprint encode_gfp(const MolecularGraph& molecule, const FragmentVocabulary& vocab);

// Classical hashed fingerprint: each present fragment sets b positions
// derived from a seeded splitmix64 hash of its canonical code, modulo k.
Fingerprint encode_hashed(const MolecularGraph& molecule, const FragmentVocabulary& vocab, int k,
                          int b, std::uint64_t seed);

std::vector<Fingerprint> encode_dataset(const LabeledDataset& dataset,
                                        const FragmentVocabulary& vocab);

// Dense CSV (header = canonical codes) and sparse TSV (molecule-id,
// fragment-rank) serializations of a fingerprint matrix.
std::string fingerprints_csv(const std::vector<Fingerprint>& rows,
                             const FragmentVocabulary& vocab);
std::string fingerprints_sparse_tsv(const std::vector<Fingerprint>& rows);

// The documented code hash: x = seed, then x = splitmix64(x ^ byte) over the
// code bytes; position j is splitmix64(x + 1 + j) mod k.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_code(const std::string& code, std::uint64_t seed);

}  // namespace fragmine
