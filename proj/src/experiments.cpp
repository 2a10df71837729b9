#include "fragmine/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fragmine/analyze.hpp"
#include "fragmine/chi2.hpp"
#include "fragmine/encode.hpp"
#include "fragmine/transactions.hpp"

namespace fs = std::filesystem;

namespace fragmine {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string dataset_stem(const std::string& path) { return fs::path(path).stem().string(); }

std::string confidence_label(double c) {
  std::ostringstream s;
  s << c * 100 << "pct";
  return s.str();
}

struct Condition {
  std::string name;
  std::string mode;
  std::string param;
  VocabularyBuilder builder;
};

std::vector<Condition> experiment_conditions(const ExperimentConfig& cfg) {
  std::vector<Condition> conds;
  if (cfg.experiment == "E1" || cfg.experiment == "custom") {
    for (PatternLanguage lang : cfg.languages)
      conds.push_back({language_name(lang), "topk", std::to_string(cfg.k),
                       [lang, k = cfg.k](const LabeledDataset& train) {
                         return mine_topk(train, lang, k);
                       }});
  } else if (cfg.experiment == "E2") {
    conds.push_back({"graph", "topk", std::to_string(cfg.k),
                     [k = cfg.k](const LabeledDataset& train) {
                       return mine_topk(train, PatternLanguage::Graph, k);
                     }});
    for (PatternLanguage lang : {PatternLanguage::Sequence, PatternLanguage::Tree}) {
      conds.push_back({std::string(language_name(lang)) + "_cropped", "topk_cropped",
                       std::to_string(cfg.k), [lang, k = cfg.k](const LabeledDataset& train) {
                         // Crop at the k-th best graph score mined on the
                         // same training molecules.
                         auto graphs = mine_topk(train, PatternLanguage::Graph, k);
                         double floor = graphs.empty() ? 0.0 : score_stats(graphs).min;
                         return crop_by_score(mine_topk(train, lang, k), floor);
                       }});
    }
  } else if (cfg.experiment == "E3" || cfg.experiment == "E4") {
    for (double conf : cfg.confidences) {
      double t = chi2_quantile(conf);
      conds.push_back({"seq_" + confidence_label(conf), "threshold", fmt(t),
                       [t](const LabeledDataset& train) {
                         return mine_threshold(train, PatternLanguage::Sequence, t);
                       }});
    }
    if (cfg.experiment == "E4")
      conds.push_back({"paths_L" + std::to_string(cfg.max_path_length), "paths",
                       "minfreq=" + std::to_string(cfg.min_freq),
                       [L = cfg.max_path_length, f = cfg.min_freq](const LabeledDataset& train) {
                         return enumerate_restricted_paths(train, L, f);
                       }});
  } else {
    throw std::invalid_argument("unknown experiment id: " + cfg.experiment);
  }
  return conds;
}

}  // namespace

std::vector<ReportRow> evaluate_dataset(const LabeledDataset& dataset,
                                        const ExperimentConfig& cfg) {
  std::vector<ReportRow> rows;
  for (const Condition& cond : experiment_conditions(cfg)) {
    std::vector<FoldMetrics> folds = run_cv(dataset, cond.builder, cfg.svm_c, cfg.svm_tol,
                                            cfg.folds, cfg.seed, cfg.threads);
    for (const FoldMetrics& m : folds)
      rows.push_back({dataset.name, m.fold, cond.name, cond.mode, cond.param, m.n_fragments,
                      m.auc, m.correspondence_pairs, m.avg_features_per_molecule, m.min_score});
  }
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "dataset,fold,language,mode,param,n_fragments,auc,correspondences,"
         "avg_features_per_molecule,min_score\n";
  for (const ReportRow& r : rows)
    out << r.dataset << ',' << r.fold << ',' << r.condition << ',' << r.mode << ',' << r.param
        << ',' << r.n_fragments << ',' << fmt(r.auc) << ',' << r.correspondences << ','
        << fmt(r.avg_features_per_molecule) << ',' << fmt(r.min_score) << '\n';
  return out.str();
}

std::string summary_csv(const std::vector<ReportRow>& rows) {
  // Aggregates are plain means over folds, recomputable from the row CSV.
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const ReportRow*>> groups;
  for (const ReportRow& r : rows) {
    auto key = std::make_pair(r.dataset, r.condition);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::ostringstream out;
  out << "dataset,language,folds,mean_n_fragments,mean_auc,mean_correspondences,"
         "mean_avg_features_per_molecule,min_min_score\n";
  for (const auto& key : order) {
    const auto& g = groups[key];
    double nf = 0, auc = 0, corr = 0, feat = 0, min_score = g.front()->min_score;
    for (const ReportRow* r : g) {
      nf += r->n_fragments;
      auc += r->auc;
      corr += static_cast<double>(r->correspondences);
      feat += r->avg_features_per_molecule;
      min_score = std::min(min_score, r->min_score);
    }
    double n = static_cast<double>(g.size());
    out << key.first << ',' << key.second << ',' << g.size() << ',' << fmt(nf / n) << ','
        << fmt(auc / n) << ',' << fmt(corr / n) << ',' << fmt(feat / n) << ',' << fmt(min_score)
        << '\n';
  }
  return out.str();
}

std::string wilcoxon_csv(const std::vector<ReportRow>& rows, double alpha) {
  std::vector<std::string> conds;
  std::map<std::string, std::vector<double>> aucs;  // condition -> per-fold AUC (fold order)
  for (const ReportRow& r : rows) {
    if (!aucs.count(r.condition)) conds.push_back(r.condition);
    aucs[r.condition].push_back(r.auc);
  }
  std::ostringstream out;
  out << "condition_a,condition_b,statistic,p_value,significant,direction\n";
  for (std::size_t i = 0; i < conds.size(); ++i)
    for (std::size_t j = i + 1; j < conds.size(); ++j) {
      out << conds[i] << ',' << conds[j] << ',';
      try {
        WilcoxonResult w = wilcoxon_signed_rank(aucs[conds[i]], aucs[conds[j]], alpha);
        out << fmt(w.statistic) << ',' << fmt(w.p_value) << ',' << (w.significant ? 1 : 0) << ','
            << w.direction << '\n';
      } catch (const std::exception&) {
        out << "na,na,na,0\n";  // too few nonzero differences
      }
    }
  return out.str();
}

int cmd_mine(const ExperimentConfig& cfg) {
  if (cfg.dataset_paths.empty()) return 1;
  int failures = 0;
  for (const std::string& path : cfg.dataset_paths) {
    try {
      LabeledDataset ds = load_dataset_file(path);
      ds.name = dataset_stem(path);
      fs::path dir = fs::path(cfg.outdir) / "mine" / ds.name;
      for (PatternLanguage lang : cfg.languages) {
        std::vector<ScoredPattern> mined;
        if (cfg.mode == "topk")
          mined = mine_topk(ds, lang, cfg.k);
        else if (cfg.mode == "threshold")
          mined = mine_threshold(ds, lang, chi2_quantile(cfg.confidences.at(0)));
        else
          throw std::invalid_argument("unknown mining mode: " + cfg.mode);
        write_file(dir / ("fragments_" + std::string(language_name(lang)) + ".tsv"),
                   fragments_tsv(mined));
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "mine: %s: %s\n", path.c_str(), e.what());
      ++failures;
    }
  }
  if (failures == static_cast<int>(cfg.dataset_paths.size())) return 1;
  return failures > 0 ? 2 : 0;
}

int cmd_evaluate(const ExperimentConfig& cfg) {
  if (cfg.dataset_paths.empty()) return 1;
  int failures = 0;
  for (const std::string& path : cfg.dataset_paths) {
    try {
      LabeledDataset ds = load_dataset_file(path);
      ds.name = dataset_stem(path);
      fs::path dir = fs::path(cfg.outdir) / cfg.experiment / ds.name;

      std::vector<ReportRow> rows = evaluate_dataset(ds, cfg);
      write_file(dir / "report.csv", report_csv(rows));
      write_file(dir / "summary.csv", summary_csv(rows));
      write_file(dir / "wilcoxon.csv", wilcoxon_csv(rows, 0.99));

      if (cfg.experiment == "E1") {
        // Intercorrelation of the top fragments from one representative
        // training fold (fold 0).
        FoldAssignment fa = stratified_folds(ds.labels, cfg.folds, cfg.seed);
        LabeledDataset train;
        for (std::size_t i = 0; i < ds.size(); ++i)
          if (fa.fold[i] != 0) {
            train.molecules.push_back(ds.molecules[i]);
            train.labels.push_back(ds.labels[i]);
          }
        for (PatternLanguage lang : cfg.languages) {
          auto mined = mine_topk(train, lang, cfg.k);
          auto vocab = FragmentVocabulary::from_patterns(mined);
          std::size_t m = std::min<std::size_t>(cfg.intercorr_top, vocab.size());
          write_file(dir / ("intercorr_" + std::string(language_name(lang)) + ".tsv"),
                     intercorrelation_tsv(intercorrelation(vocab, m, ds)));
        }
      }

      nlohmann::json manifest;
      manifest["experiment"] = cfg.experiment;
      manifest["dataset"] = path;
      manifest["k"] = cfg.k;
      manifest["confidences"] = cfg.confidences;
      manifest["max_path_length"] = cfg.max_path_length;
      manifest["min_freq"] = cfg.min_freq;
      manifest["svm_c"] = cfg.svm_c;
      manifest["svm_tol"] = cfg.svm_tol;
      manifest["folds"] = cfg.folds;
      manifest["seed"] = cfg.seed;
      write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
      std::fprintf(stderr, "evaluate: %s: %s\n", path.c_str(), e.what());
      ++failures;
    }
  }
  if (failures == static_cast<int>(cfg.dataset_paths.size())) return 1;
  return failures > 0 ? 2 : 0;
}

int cmd_generate(const GeneratorSpec& spec, std::uint64_t seed, const std::string& out_path) {
  try {
    LabeledDataset ds = generate_dataset(spec, seed);
    fs::path p(out_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    save_transactions_file(ds, out_path);
    write_file(out_path + ".manifest.json", generator_manifest(spec, seed));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "generate: %s\n", e.what());
    return 1;
  }
  return 0;
}

int cmd_analyze(const std::string& fragments_tsv_path, const std::string& dataset_path,
                const std::string& outdir) {
  try {
    std::ifstream in(fragments_tsv_path);
    if (!in) throw std::runtime_error("cannot open " + fragments_tsv_path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<ScoredPattern> mined = parse_fragments_tsv(buf.str());
    LabeledDataset ds = load_dataset_file(dataset_path);
    ds.name = dataset_stem(dataset_path);

    FragmentVocabulary vocab = FragmentVocabulary::from_patterns(mined);
    std::vector<Fingerprint> fps = encode_dataset(ds, vocab);
    fs::path dir = fs::path(outdir) / "analyze" / ds.name;
    write_file(dir / "fingerprints.csv", fingerprints_csv(fps, vocab));
    write_file(dir / "fingerprints_sparse.tsv", fingerprints_sparse_tsv(fps));

    CorrespondenceReport corr = correspondences(fps, ds.labels);
    std::ostringstream cr;
    cr << "pair_count,involved_molecules,zero_vector_count,avg_features_per_molecule,"
          "cyclic_fraction\n"
       << corr.pair_count << ',' << corr.involved_molecules << ',' << corr.zero_vector_count
       << ',' << fmt(features_per_molecule(fps)) << ',' << fmt(cyclic_fraction(mined)) << '\n';
    write_file(dir / "correspondences.csv", cr.str());

    std::size_t m = std::min<std::size_t>(100, vocab.size());
    write_file(dir / "intercorr.tsv", intercorrelation_tsv(intercorrelation(vocab, m, ds)));

    if (!mined.empty()) {
      ScoreStats stats = score_stats(mined);
      std::ostringstream ss;
      ss << "rank,chi2\n";
      for (std::size_t i = 0; i < stats.sorted_desc.size(); ++i)
        ss << (i + 1) << ',' << fmt(stats.sorted_desc[i]) << '\n';
      write_file(dir / "scores.csv", ss.str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "analyze: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace fragmine
