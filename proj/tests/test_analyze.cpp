#include <doctest.h>

#include <map>
#include <random>

#include "fragmine/analyze.hpp"
#include "fragmine/smiles.hpp"
#include "fragmine/transactions.hpp"
#include "oracles.hpp"

using namespace fragmine;

namespace {

Fingerprint fp_of(const std::vector<int>& bits) {
  Fingerprint fp(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) fp.set(i);
  return fp;
}

// O(n^2) correspondence oracle: count cross-class pairs directly.
CorrespondenceReport corr_oracle(const std::vector<Fingerprint>& fps,
                                 const std::vector<Activity>& labels) {
  CorrespondenceReport r;
  std::vector<char> involved(fps.size(), 0);
  for (std::size_t i = 0; i < fps.size(); ++i)
    for (std::size_t j = 0; j < fps.size(); ++j) {
      if (i == j || labels[i] != Activity::Active || labels[j] != Activity::Inactive) continue;
      if (fps[i] == fps[j]) {
        ++r.pair_count;
        involved[i] = involved[j] = 1;
      }
    }
  for (char c : involved) r.involved_molecules += c;
  for (const auto& f : fps) r.zero_vector_count += f.popcount() == 0;
  return r;
}

// Exact two-sided Wilcoxon p by enumerating every sign assignment.
double wilcoxon_enum_p(const std::vector<double>& d) {
  int n = static_cast<int>(d.size());
  // Midranks of |d|.
  std::vector<double> ad(n);
  for (int i = 0; i < n; ++i) ad[i] = std::abs(d[i]);
  std::vector<double> ranks(n);
  for (int i = 0; i < n; ++i) {
    double below = 0, equal = 0;
    for (int j = 0; j < n; ++j) {
      if (ad[j] < ad[i]) ++below;
      if (ad[j] == ad[i]) ++equal;
    }
    ranks[i] = below + (equal + 1) / 2.0;
  }
  double wp = 0;
  for (int i = 0; i < n; ++i)
    if (d[i] > 0) wp += ranks[i];
  double wm = 0;
  for (int i = 0; i < n; ++i)
    if (d[i] < 0) wm += ranks[i];
  double w = std::min(wp, wm);
  int hits = 0, total = 1 << n;
  for (int mask = 0; mask < total; ++mask) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) s += ranks[i];
    double other = 0;
    for (int i = 0; i < n; ++i) other += ranks[i];
    other -= s;
    if (std::min(s, other) <= w + 1e-12) ++hits;
  }
  return static_cast<double>(hits) / total;
}

}  // namespace

TEST_CASE("correspondences on hand cases") {
  std::vector<Activity> labels = {Activity::Active, Activity::Active, Activity::Inactive,
                                  Activity::Inactive, Activity::Inactive};
  std::vector<Fingerprint> distinct;
  for (int i = 0; i < 5; ++i) {
    std::vector<int> bits(5, 0);
    bits[i] = 1;
    distinct.push_back(fp_of(bits));
  }
  CHECK(correspondences(distinct, labels).pair_count == 0);

  std::vector<Fingerprint> same(5, fp_of({1, 0, 1}));
  CorrespondenceReport r = correspondences(same, labels);
  CHECK(r.pair_count == 6);
  CHECK(r.involved_molecules == 5);
  CHECK(r.zero_vector_count == 0);

  // The all-zero vector is a group like any other.
  std::vector<Fingerprint> zeros(5, fp_of({0, 0, 0}));
  CorrespondenceReport z = correspondences(zeros, labels);
  CHECK(z.pair_count == 6);
  CHECK(z.zero_vector_count == 5);
}

TEST_CASE("correspondences match the quadratic oracle on random data") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Fingerprint> fps;
    std::vector<Activity> labels;
    for (int i = 0; i < 50; ++i) {
      std::vector<int> bits(4);
      for (auto& b : bits) b = rng() % 2;
      fps.push_back(fp_of(bits));
      labels.push_back(rng() % 2 ? Activity::Active : Activity::Inactive);
    }
    CorrespondenceReport got = correspondences(fps, labels);
    CorrespondenceReport want = corr_oracle(fps, labels);
    CHECK(got.pair_count == want.pair_count);
    CHECK(got.involved_molecules == want.involved_molecules);
    CHECK(got.zero_vector_count == want.zero_vector_count);
  }
}

TEST_CASE("correspondences shrink as the vocabulary grows") {
  std::mt19937_64 rng(11);
  LabeledDataset ds = oracles::random_dataset(rng, 25, 7, 3, 2);
  auto mined = mine_topk(ds, PatternLanguage::Tree, 40);
  std::int64_t prev = -1;
  for (std::size_t take : {2ul, 5ul, 10ul, 40ul}) {
    std::vector<ScoredPattern> head(mined.begin(),
                                    mined.begin() + std::min(take, mined.size()));
    auto fps = encode_dataset(ds, FragmentVocabulary::from_patterns(head));
    std::int64_t pairs = correspondences(fps, ds.labels).pair_count;
    if (prev >= 0) CHECK(pairs <= prev);
    prev = pairs;
  }
}

TEST_CASE("intercorrelation hand cases") {
  // Four molecules, two fragments with presence (1,0,1,0) and (1,1,0,0).
  LabeledDataset ds = parse_smiles_file("CCN\t1\nCC\t1\nCN\t0\nO\t0\n");
  std::vector<ScoredPattern> mined;
  for (const char* s : {"CN", "CC"}) {
    Pattern p = make_pattern(parse_smiles(s), PatternLanguage::Graph);
    mined.push_back({p, canonical_code(p), {0, 0, 2, 2}, 0.0});
  }
  FragmentVocabulary v = FragmentVocabulary::from_patterns(mined);
  // presence(C-N) = (1,0,1,0), presence(C-C) = (1,1,0,0)
  Eigen::MatrixXd phi = intercorrelation(v, 2, ds);
  CHECK(phi(0, 0) == doctest::Approx(1.0));
  CHECK(phi(1, 1) == doctest::Approx(1.0));
  CHECK(phi(0, 1) == doctest::Approx(0.0));
  CHECK(phi(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("intercorrelation symmetry, range and constant-column convention") {
  std::mt19937_64 rng(13);
  LabeledDataset ds = oracles::random_dataset(rng, 20, 6, 3, 2);
  auto mined = mine_topk(ds, PatternLanguage::Sequence, 15);
  FragmentVocabulary v = FragmentVocabulary::from_patterns(mined);
  Eigen::MatrixXd phi = intercorrelation(v, v.size(), ds);
  auto fps = encode_dataset(ds, v);
  for (int i = 0; i < phi.rows(); ++i) {
    int count = 0;
    for (const auto& f : fps) count += f.test(i);
    bool constant = count == 0 || count == static_cast<int>(fps.size());
    CHECK(phi(i, i) == doctest::Approx(constant ? 0.0 : 1.0));
    for (int j = 0; j < phi.cols(); ++j) {
      CHECK(phi(i, j) == doctest::Approx(phi(j, i)));
      CHECK(phi(i, j) <= 1.0 + 1e-12);
      CHECK(phi(i, j) >= -1.0 - 1e-12);
    }
  }
  // Two identical presence columns correlate at 1.
  std::vector<ScoredPattern> dup = {mined[0], mined[0]};
  dup[1].code += "?";  // distinct code, same pattern
  Eigen::MatrixXd phi2 = intercorrelation(FragmentVocabulary::from_patterns(dup), 2, ds);
  int count0 = 0;
  for (const auto& f : encode_dataset(ds, v)) count0 += f.test(0);
  if (count0 > 0 && count0 < static_cast<int>(ds.size()))
    CHECK(phi2(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("features_per_molecule") {
  std::vector<Fingerprint> zeros(4, Fingerprint(6));
  CHECK(features_per_molecule(zeros) == 0.0);
  std::vector<Fingerprint> eye;
  for (int i = 0; i < 5; ++i) {
    Fingerprint f(5);
    f.set(i);
    eye.push_back(f);
  }
  CHECK(features_per_molecule(eye) == 1.0);
  std::mt19937_64 rng(17);
  std::vector<Fingerprint> rand_rows;
  int total = 0;
  for (int i = 0; i < 30; ++i) {
    Fingerprint f(16);
    for (int b = 0; b < 16; ++b)
      if (rng() % 3 == 0) f.set(b);
    total += f.popcount();
    rand_rows.push_back(f);
  }
  CHECK(features_per_molecule(rand_rows) == doctest::Approx(total / 30.0));
}

TEST_CASE("score_stats and crop_by_score") {
  CHECK_THROWS(score_stats({}));
  Pattern p = make_pattern(parse_smiles("CC"), PatternLanguage::Graph);
  auto sp = [&](double s) { return ScoredPattern{p, "G:0,1,C,-,C", {1, 0, 1, 1}, s}; };
  ScoreStats one = score_stats({sp(5)});
  CHECK(one.min == 5);
  CHECK(one.max == 5);
  ScoreStats three = score_stats({sp(10), sp(4), sp(7)});
  CHECK(three.sorted_desc == std::vector<double>{10, 7, 4});
  CHECK(three.min == 4);

  std::vector<ScoredPattern> list = {sp(10), sp(4), sp(7)};
  CHECK(crop_by_score(list, 0).size() == 3);
  CHECK(crop_by_score(list, 11).empty());
  auto cropped = crop_by_score(list, 7);
  REQUIRE(cropped.size() == 2);
  CHECK(cropped[0].score == 10);
  CHECK(cropped[1].score == 7);  // order preserved
}

TEST_CASE("cyclic_fraction counts cyclic pattern graphs, walks excluded") {
  CHECK(cyclic_fraction({}) == 0.0);
  auto gp = [](const char* s) {
    Pattern p = make_pattern(parse_smiles(s), PatternLanguage::Graph);
    return ScoredPattern{p, canonical_code(p), {1, 0, 1, 1}, 1.0};
  };
  std::vector<ScoredPattern> mixed = {gp("c1ccccc1"), gp("CCC"), gp("C1CC1"), gp("CC(C)C")};
  CHECK(cyclic_fraction(mixed) == doctest::Approx(0.5));
  WalkFragment w({"C", "C"}, {BondLabel::Single});
  mixed.push_back({w, w.code(), {1, 0, 1, 1}, 1.0});
  CHECK(cyclic_fraction(mixed) == doctest::Approx(2.0 / 5.0));
}

TEST_CASE("wilcoxon uniform improvement and degenerate input") {
  std::vector<double> a, b;
  for (int i = 0; i < 10; ++i) {
    b.push_back(i);
    a.push_back(i + 0.1 * (i + 1));  // distinct positive margins
  }
  WilcoxonResult r = wilcoxon_signed_rank(a, b, 0.99);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == doctest::Approx(2.0 / 1024.0));
  CHECK(r.significant);
  CHECK(r.direction == 1);

  CHECK_THROWS(wilcoxon_signed_rank(b, b, 0.99));
  CHECK_THROWS(wilcoxon_signed_rank({1, 2, 3, 4}, {0, 1, 2, 3}, 0.99));  // < 5 nonzero
}

TEST_CASE("wilcoxon exact p matches full enumeration for n <= 12") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 5 + static_cast<int>(rng() % 8);
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      b[i] = 0;
      // Small integer differences create ties between |d| values.
      a[i] = static_cast<double>(static_cast<int>(rng() % 9)) - 4.0;
      if (a[i] == 0) a[i] = 1;
    }
    std::vector<double> d(a);
    WilcoxonResult r = wilcoxon_signed_rank(a, b, 0.95);
    CHECK(r.p_value == doctest::Approx(wilcoxon_enum_p(d)).epsilon(1e-9));
  }
}

TEST_CASE("wilcoxon null false-positive rate stays near alpha") {
  std::mt19937_64 rng(31);
  int fp = 0, trials = 1000;
  for (int t = 0; t < trials; ++t) {
    int n = 12;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      double d = ((rng() >> 11) * 0x1.0p-53 - 0.5);  // symmetric around 0
      b[i] = 0;
      a[i] = d == 0 ? 0.1 : d;
    }
    if (wilcoxon_signed_rank(a, b, 0.99).significant) ++fp;
  }
  CHECK(fp <= trials * 0.015);
}

TEST_CASE("wilcoxon large-sample normal approximation is sane") {
  // 40 pairs, strong one-sided shift: highly significant, direction +1.
  std::vector<double> a, b;
  std::mt19937_64 rng(37);
  for (int i = 0; i < 40; ++i) {
    double base = (rng() >> 11) * 0x1.0p-53;
    b.push_back(base);
    a.push_back(base + 0.5 + 0.1 * (i % 5));
  }
  WilcoxonResult r = wilcoxon_signed_rank(a, b, 0.99);
  CHECK(r.p_value < 1e-6);
  CHECK(r.significant);
  CHECK(r.direction == 1);
  // Swapping the inputs flips the direction, not the p-value.
  WilcoxonResult s = wilcoxon_signed_rank(b, a, 0.99);
  CHECK(s.direction == -1);
  CHECK(s.p_value == doctest::Approx(r.p_value));
}

TEST_CASE("intercorrelation TSV layout") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, -0.5, -0.5, 1.0;
  CHECK(intercorrelation_tsv(m) == "i\tj\tphi\n0\t0\t1\n0\t1\t-0.5\n1\t0\t-0.5\n1\t1\t1\n");
}
