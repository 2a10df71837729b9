#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fragmine/experiments.hpp"

namespace {

std::vector<fragmine::PatternLanguage> parse_languages(const std::vector<std::string>& names) {
  std::vector<fragmine::PatternLanguage> out;
  for (const std::string& n : names) out.push_back(fragmine::language_from_name(n));
  return out;
}

// "SMILES:p_active:p_inactive"
fragmine::PlantedFragment parse_plant_spec(const std::string& spec) {
  auto second = spec.rfind(':');
  auto first = spec.rfind(':', second - 1);
  if (second == std::string::npos || first == std::string::npos || first == 0)
    throw CLI::ValidationError("--plant expects SMILES:p_active:p_inactive");
  return {spec.substr(0, first), std::stod(spec.substr(first + 1, second - first - 1)),
          std::stod(spec.substr(second + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class-correlated molecular fragment mining and evaluation"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  fragmine::ExperimentConfig cfg;
  std::vector<std::string> language_names = {"sequence", "tree", "graph"};
  double mine_confidence = 0.95;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dataset", cfg.dataset_paths, "dataset file (transaction or SMILES format)")
        ->required();
    sub->add_option("--out", cfg.outdir, "output directory");
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  CLI::App* mine = app.add_subcommand("mine", "mine class-correlated fragments to TSV");
  add_common(mine);
  mine->add_option("--language", language_names, "sequence, tree and/or graph");
  mine->add_option("--mode", cfg.mode, "topk or threshold");
  mine->add_option("-k,--top-k", cfg.k, "number of fragments in topk mode");
  mine->add_option("--confidence", mine_confidence,
                   "chi2 significance level in threshold mode (0.95, 0.99, 0.999)");

  CLI::App* evaluate = app.add_subcommand("evaluate", "run a cross-validated experiment");
  add_common(evaluate);
  evaluate->add_option("--experiment", cfg.experiment, "E1, E2, E3, E4 or custom");
  evaluate->add_option("--language", language_names, "languages for E1/custom");
  evaluate->add_option("-k,--top-k", cfg.k, "top-k size");
  evaluate->add_option("--confidences", cfg.confidences, "significance levels for E3/E4");
  evaluate->add_option("--max-path-length", cfg.max_path_length, "walk length cap for E4");
  evaluate->add_option("--min-freq", cfg.min_freq, "minimum frequency for E4 paths");
  evaluate->add_option("-C,--svm-c", cfg.svm_c, "SVM regularization");
  evaluate->add_option("--svm-tol", cfg.svm_tol, "SVM stopping tolerance");
  evaluate->add_option("--folds", cfg.folds, "cross-validation folds");
  evaluate->add_option("--threads", cfg.threads, "parallel folds (1 = sequential)");
  evaluate->add_option("--intercorr-top", cfg.intercorr_top, "fragments in intercorrelation");

  CLI::App* generate = app.add_subcommand("generate", "generate a synthetic dataset");
  fragmine::GeneratorSpec gen;
  std::string gen_out = "dataset.txt";
  std::vector<std::string> plant_specs;
  generate->add_option("--out", gen_out, "output transaction file")->required();
  generate->add_option("--n", gen.n_molecules, "number of molecules");
  generate->add_option("--min-size", gen.min_size, "minimum skeleton atoms");
  generate->add_option("--max-size", gen.max_size, "maximum skeleton atoms");
  generate->add_option("--active-fraction", gen.active_fraction, "fraction of active molecules");
  generate->add_option("--atom-labels", gen.atom_labels, "skeleton atom labels (with repeats)");
  generate->add_option("--double-bond-prob", gen.double_bond_prob, "double bond probability");
  generate->add_option("--ring-edge-prob", gen.ring_edge_prob, "extra ring edge probability");
  generate->add_option("--plant", plant_specs, "planted fragment SMILES:p_active:p_inactive");
  generate->add_option("--seed", cfg.seed, "random seed");

  CLI::App* analyze = app.add_subcommand("analyze", "diagnostics for a mined fragment set");
  std::string fragments_path;
  std::string analyze_dataset;
  analyze->add_option("--fragments", fragments_path, "fragments TSV from mine")->required();
  analyze->add_option("--dataset", analyze_dataset, "dataset file")->required();
  analyze->add_option("--out", cfg.outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.languages = parse_languages(language_names);
    if (mine->parsed()) {
      cfg.confidences = {mine_confidence};
      return fragmine::cmd_mine(cfg);
    }
    if (evaluate->parsed()) return fragmine::cmd_evaluate(cfg);
    if (generate->parsed()) {
      for (const std::string& s : plant_specs) gen.planted.push_back(parse_plant_spec(s));
      return fragmine::cmd_generate(gen, cfg.seed, gen_out);
    }
    if (analyze->parsed())
      return fragmine::cmd_analyze(fragments_path, analyze_dataset, cfg.outdir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
