#pragma once

#include <stdexcept>
#include <string>

#include "fragmine/molgraph.hpp"

namespace fragmine {

struct SmilesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses a single SMILES string from the supported subset and returns the
// hydrogen-suppressed molecular graph. Charges, isotopes and hydrogen counts
// inside bracket atoms are parsed and discarded. Stereo markers (/ \ @) and
// disconnected structures (.) are rejected.
MolecularGraph parse_smiles(const std::string& text);

}  // namespace fragmine
