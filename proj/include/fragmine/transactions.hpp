#pragma once

#include <stdexcept>
#include <string>

#include "fragmine/molgraph.hpp"

namespace fragmine {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line-based transaction format:
//   t # <graph-id> <class:0|1>   starts a molecule
//   v <vid> <atom-label>          vids consecutive from 0
//   e <src> <dst> <bond:1|2|3|4>  1=Single 2=Double 3=Triple 4=Aromatic
// '#'-prefixed lines are comments, blank lines are ignored.
LabeledDataset parse_transactions(const std::string& text);
std::string write_transactions(const LabeledDataset& dataset);

// One molecule per line: SMILES, optionally followed by a tab and a class
// token (0/1 or inactive/active).
LabeledDataset parse_smiles_file(const std::string& text);

LabeledDataset load_dataset_file(const std::string& path);
void save_transactions_file(const LabeledDataset& dataset, const std::string& path);

}  // namespace fragmine
