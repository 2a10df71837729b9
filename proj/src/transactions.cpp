#include "fragmine/transactions.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "fragmine/smiles.hpp"

namespace fragmine {

namespace {

Activity parse_class_token(const std::string& tok, int lineno) {
  if (tok == "1" || tok == "active") return Activity::Active;
  if (tok == "0" || tok == "inactive") return Activity::Inactive;
  throw FormatError("line " + std::to_string(lineno) + ": unknown class token '" + tok + "'");
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

LabeledDataset parse_transactions(const std::string& text) {
  LabeledDataset ds;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool in_block = false;
  MolecularGraph current;
  Activity current_label = Activity::Inactive;

  auto flush = [&] {
    if (in_block) {
      ds.molecules.push_back(std::move(current));
      ds.labels.push_back(current_label);
      current = MolecularGraph();
      in_block = false;
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    auto malformed = [&] {
      return FormatError("line " + std::to_string(lineno) + ": malformed line '" + line + "'");
    };
    if (tag == "t") {
      std::string hash, gid, cls;
      if (!(ls >> hash >> gid >> cls) || hash != "#") throw malformed();
      flush();
      in_block = true;
      current.id = gid;
      current_label = parse_class_token(cls, lineno);
    } else if (tag == "v") {
      if (!in_block) throw malformed();
      int vid;
      std::string label;
      if (!(ls >> vid >> label)) throw malformed();
      if (vid != current.num_vertices())
        throw FormatError("line " + std::to_string(lineno) + ": non-consecutive vertex id " +
                          std::to_string(vid));
      current.add_vertex(label);
    } else if (tag == "e") {
      if (!in_block) throw malformed();
      int src, dst, bond;
      if (!(ls >> src >> dst >> bond)) throw malformed();
      if (src < 0 || src >= current.num_vertices() || dst < 0 || dst >= current.num_vertices())
        throw FormatError("line " + std::to_string(lineno) + ": edge references unknown vertex");
      current.add_edge(src, dst, bond_from_int(bond));
    } else if (tag[0] == '#') {
      continue;
    } else {
      throw malformed();
    }
  }
  flush();
  return ds;
}

std::string write_transactions(const LabeledDataset& dataset) {
  std::ostringstream out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const MolecularGraph& m = dataset.molecules[i];
    out << "t # " << (all_digits(m.id) ? m.id : std::to_string(i)) << ' '
        << (dataset.labels[i] == Activity::Active ? 1 : 0) << '\n';
    for (int v = 0; v < m.num_vertices(); ++v) out << "v " << v << ' ' << m.label(v) << '\n';
    for (const Edge& e : m.edges())
      out << "e " << e.src << ' ' << e.dst << ' ' << static_cast<int>(e.bond) << '\n';
  }
  return out.str();
}

LabeledDataset parse_smiles_file(const std::string& text) {
  LabeledDataset ds;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string smiles = line;
    Activity label = Activity::Inactive;
    auto tab = line.find('\t');
    if (tab != std::string::npos) {
      smiles = line.substr(0, tab);
      label = parse_class_token(line.substr(tab + 1), lineno);
    }
    MolecularGraph m = parse_smiles(smiles);
    m.id = std::to_string(ds.size());
    ds.molecules.push_back(std::move(m));
    ds.labels.push_back(label);
  }
  return ds;
}

LabeledDataset load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open dataset file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // Transaction files start their first content line with 't '.
  std::istringstream scan(text);
  std::string line;
  while (std::getline(scan, line)) {
    if (line.empty() || line[0] == '#') continue;
    LabeledDataset ds =
        line.rfind("t ", 0) == 0 ? parse_transactions(text) : parse_smiles_file(text);
    ds.name = path;
    return ds;
  }
  LabeledDataset empty;
  empty.name = path;
  return empty;
}

void save_transactions_file(const LabeledDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write dataset file: " + path);
  out << write_transactions(dataset);
}

}  // namespace fragmine
