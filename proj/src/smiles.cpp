#include "fragmine/smiles.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace fragmine {

namespace {

const std::set<std::string> kOrganicSubset = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"};
const std::set<char> kAromaticOrganic = {'b', 'c', 'n', 'o', 'p', 's'};

struct ParsedAtom {
  std::string element;  // uppercase symbol, "H" allowed here and removed later
  bool aromatic = false;
};

struct RingOpening {
  int atom;
  std::optional<BondLabel> bond;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  MolecularGraph run() {
    while (pos_ < s_.size()) step();
    if (!branch_stack_.empty()) throw SmilesError("unmatched parenthesis");
    if (!rings_.empty()) throw SmilesError("unclosed ring index");
    return strip_hydrogens();
  }

 private:
  void step() {
    char c = s_[pos_];
    switch (c) {
      case '/':
      case '\\':
      case '@':
        throw SmilesError("stereochemistry not supported");
      case '.':
        throw SmilesError("disconnected structures not supported");
      case '(':
        if (prev_ < 0) throw SmilesError("branch before first atom");
        branch_stack_.push_back(prev_);
        ++pos_;
        break;
      case ')':
        if (branch_stack_.empty()) throw SmilesError("unmatched parenthesis");
        prev_ = branch_stack_.back();
        branch_stack_.pop_back();
        ++pos_;
        break;
      case '-':
      case '=':
      case '#':
      case ':':
        pending_bond_ = bond_from_char(c);
        ++pos_;
        break;
      case '%': {
        if (pos_ + 2 >= s_.size() || !std::isdigit(s_[pos_ + 1]) || !std::isdigit(s_[pos_ + 2]))
          throw SmilesError("malformed %nn ring closure");
        int idx = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
        pos_ += 3;
        ring_closure(idx);
        break;
      }
      default:
        if (std::isdigit(c)) {
          ++pos_;
          ring_closure(c - '0');
        } else if (c == '[') {
          add_atom(parse_bracket_atom());
        } else {
          add_atom(parse_plain_atom());
        }
    }
  }

  ParsedAtom parse_plain_atom() {
    char c = s_[pos_];
    if (std::isupper(c)) {
      std::string sym(1, c);
      // Two-char symbols in the organic subset: Cl, Br.
      if (pos_ + 1 < s_.size() && std::islower(s_[pos_ + 1])) {
        std::string two = sym + s_[pos_ + 1];
        if (two == "Cl" || two == "Br") {
          pos_ += 2;
          return {two, false};
        }
      }
      if (!kOrganicSubset.count(sym)) throw SmilesError("unknown atom symbol '" + sym + "'");
      ++pos_;
      return {sym, false};
    }
    if (std::islower(c) && kAromaticOrganic.count(c)) {
      ++pos_;
      return {std::string(1, static_cast<char>(std::toupper(c))), true};
    }
    throw SmilesError(std::string("unknown atom symbol '") + c + "'");
  }

  ParsedAtom parse_bracket_atom() {
    ++pos_;  // consume '['
    while (pos_ < s_.size() && std::isdigit(s_[pos_])) ++pos_;  // isotope, discarded
    if (pos_ >= s_.size()) throw SmilesError("unterminated bracket atom");
    ParsedAtom atom;
    char c = s_[pos_];
    if (std::isupper(c)) {
      atom.element = std::string(1, c);
      ++pos_;
      if (pos_ < s_.size() && std::islower(s_[pos_])) {
        atom.element += s_[pos_];
        ++pos_;
      }
    } else if (std::islower(c) && kAromaticOrganic.count(c)) {
      atom.element = std::string(1, static_cast<char>(std::toupper(c)));
      atom.aromatic = true;
      ++pos_;
    } else {
      throw SmilesError(std::string("unknown atom symbol '") + c + "'");
    }
    if (atom.element != "H" && !kOrganicSubset.count(atom.element))
      throw SmilesError("unknown atom symbol '" + atom.element + "'");
    // Hydrogen count and charge: parsed, discarded.
    if (pos_ < s_.size() && s_[pos_] == 'H' && atom.element != "H") {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(s_[pos_])) ++pos_;
    }
    while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(s_[pos_])) ++pos_;
    }
    if (pos_ < s_.size() && s_[pos_] == '@') throw SmilesError("stereochemistry not supported");
    if (pos_ >= s_.size() || s_[pos_] != ']') throw SmilesError("unterminated bracket atom");
    ++pos_;
    return atom;
  }

  void add_atom(ParsedAtom atom) {
    int v = graph_.add_vertex(atom.element);
    aromatic_.push_back(atom.aromatic);
    if (prev_ >= 0) {
      graph_.add_edge(prev_, v, bond_between(prev_, v));
    }
    pending_bond_.reset();
    prev_ = v;
  }

  BondLabel bond_between(int a, int b) const {
    if (pending_bond_) return *pending_bond_;
    return (aromatic_[a] && aromatic_[b]) ? BondLabel::Aromatic : BondLabel::Single;
  }

  void ring_closure(int idx) {
    if (prev_ < 0) throw SmilesError("ring closure before first atom");
    auto it = rings_.find(idx);
    if (it == rings_.end()) {
      rings_[idx] = {prev_, pending_bond_};
      pending_bond_.reset();
      return;
    }
    RingOpening open = it->second;
    rings_.erase(it);
    std::optional<BondLabel> bond;
    if (open.bond && pending_bond_ && *open.bond != *pending_bond_)
      throw SmilesError("conflicting ring-closure bond symbols");
    bond = open.bond ? open.bond : pending_bond_;
    pending_bond_.reset();
    BondLabel resolved = bond ? *bond
                              : ((aromatic_[open.atom] && aromatic_[prev_]) ? BondLabel::Aromatic
                                                                           : BondLabel::Single);
    graph_.add_edge(open.atom, prev_, resolved);
  }

  // Drops explicit hydrogen vertices and remaps indices.
  MolecularGraph strip_hydrogens() {
    MolecularGraph out;
    std::vector<int> remap(graph_.num_vertices(), -1);
    for (int v = 0; v < graph_.num_vertices(); ++v)
      if (graph_.label(v) != "H") remap[v] = out.add_vertex(graph_.label(v));
    for (const Edge& e : graph_.edges())
      if (remap[e.src] >= 0 && remap[e.dst] >= 0)
        out.add_edge(remap[e.src], remap[e.dst], e.bond);
    return out;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  MolecularGraph graph_;
  std::vector<bool> aromatic_;
  int prev_ = -1;
  std::optional<BondLabel> pending_bond_;
  std::vector<int> branch_stack_;
  std::map<int, RingOpening> rings_;
};

}  // namespace

MolecularGraph parse_smiles(const std::string& text) {
  if (text.empty()) throw SmilesError("empty SMILES string");
  return Parser(text).run();
}

}  // namespace fragmine
