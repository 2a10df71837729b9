#include "fragmine/encode.hpp"

#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fragmine {

Fingerprint::Fingerprint(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

int Fingerprint::popcount() const {
  int c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool Fingerprint::operator<(const Fingerprint& o) const {
  if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
  return words_ < o.words_;
}

int intersection_count(const Fingerprint& a, const Fingerprint& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fingerprint length mismatch");
  int c = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i)
    c += std::popcount(a.words()[i] & b.words()[i]);
  return c;
}

int union_count(const Fingerprint& a, const Fingerprint& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fingerprint length mismatch");
  int c = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i)
    c += std::popcount(a.words()[i] | b.words()[i]);
  return c;
}

FragmentVocabulary FragmentVocabulary::from_patterns(const std::vector<ScoredPattern>& mined,
                                                     std::string provenance) {
  FragmentVocabulary v;
  v.provenance = std::move(provenance);
  v.entries.reserve(mined.size());
  std::set<std::string> seen;
  for (const ScoredPattern& sp : mined) {
    if (!seen.insert(sp.code).second)
      throw std::invalid_argument("duplicate vocabulary code: " + sp.code);
    v.entries.push_back({sp.code, sp.pattern});
  }
  return v;
}

Fingerprint encode_gfp(const MolecularGraph& molecule, const FragmentVocabulary& vocab) {
  Fingerprint fp(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i)
    if (occurs(vocab.entries[i].pattern, molecule)) fp.set(i);
  return fp;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_code(const std::string& code, std::uint64_t seed) {
  std::uint64_t x = seed;
  for (unsigned char c : code) x = splitmix64(x ^ c);
  return x;
}

Fingerprint encode_hashed(const MolecularGraph& molecule, const FragmentVocabulary& vocab, int k,
                          int b, std::uint64_t seed) {
  if (k < 1 || b < 1) throw std::invalid_argument("k and b must be >= 1");
  Fingerprint fp(static_cast<std::size_t>(k));
  for (const auto& entry : vocab.entries) {
    if (!occurs(entry.pattern, molecule)) continue;
    std::uint64_t h = hash_code(entry.code, seed);
    for (int j = 0; j < b; ++j) fp.set(splitmix64(h + 1 + static_cast<std::uint64_t>(j)) % k);
  }
  return fp;
}

std::vector<Fingerprint> encode_dataset(const LabeledDataset& dataset,
                                        const FragmentVocabulary& vocab) {
  std::vector<Fingerprint> rows;
  rows.reserve(dataset.size());
  for (const MolecularGraph& m : dataset.molecules) rows.push_back(encode_gfp(m, vocab));
  return rows;
}

std::string fingerprints_csv(const std::vector<Fingerprint>& rows,
                             const FragmentVocabulary& vocab) {
  std::ostringstream out;
  out << "molecule";
  for (const auto& entry : vocab.entries) out << ',' << entry.code;
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << r;
    for (std::size_t i = 0; i < rows[r].size(); ++i) out << ',' << (rows[r].test(i) ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

std::string fingerprints_sparse_tsv(const std::vector<Fingerprint>& rows) {
  std::ostringstream out;
  out << "molecule\tfragment_rank\n";
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < rows[r].size(); ++i)
      if (rows[r].test(i)) out << r << '\t' << (i + 1) << '\n';
  return out.str();
}

}  // namespace fragmine
