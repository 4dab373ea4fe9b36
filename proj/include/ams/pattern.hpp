// Aho-Corasick automaton over a set of equal-length words, completed to a DFA.

#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "ams/seqcore.hpp"

namespace ams {

class PatternAutomaton {
 public:
  PatternAutomaton(std::size_t alphabet_size, const std::set<Word>& words);

  std::size_t size() const { return accepting_.size(); }
  static constexpr std::size_t root() { return 0; }
  std::size_t next(std::size_t node, Symbol a) const { return delta_[node * sigma_ + a]; }
  /// Some pattern ends at the last symbol read.
  bool accepting(std::size_t node) const { return accepting_[node]; }
  std::size_t run(const Word& w, std::size_t from = root()) const;

 private:
  std::size_t sigma_;
  std::vector<std::size_t> delta_;
  std::vector<bool> accepting_;
};

}  // namespace ams
