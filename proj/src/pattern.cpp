#include "ams/pattern.hpp"

#include <deque>

namespace ams {

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}

PatternAutomaton::PatternAutomaton(std::size_t alphabet_size, const std::set<Word>& words)
    : sigma_(alphabet_size) {
  // Trie first; delta_ holds goto edges (kNone where absent).
  delta_.assign(sigma_, kNone);
  accepting_.assign(1, false);
  for (const auto& w : words) {
    std::size_t node = root();
    for (Symbol a : w) {
      const std::size_t at = node * sigma_ + a;
      if (delta_[at] == kNone) {
        delta_[at] = accepting_.size();
        accepting_.push_back(false);
        delta_.resize(delta_.size() + sigma_, kNone);
      }
      node = delta_[at];
    }
    accepting_[node] = true;
  }

  // Breadth-first failure links; missing edges are filled from the failure
  // target so the result is a complete DFA.
  std::vector<std::size_t> fail(size(), root());
  std::deque<std::size_t> queue;
  for (std::size_t a = 0; a < sigma_; ++a) {
    std::size_t& child = delta_[a];
    if (child == kNone) {
      child = root();
    } else {
      fail[child] = root();
      queue.push_back(child);
    }
  }
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (accepting_[fail[u]]) accepting_[u] = true;
    for (std::size_t a = 0; a < sigma_; ++a) {
      std::size_t& child = delta_[u * sigma_ + a];
      std::size_t via_fail = delta_[fail[u] * sigma_ + a];
      if (child == kNone) {
        child = via_fail;
      } else {
        fail[child] = via_fail;
        queue.push_back(child);
      }
    }
  }
}

std::size_t PatternAutomaton::run(const Word& w, std::size_t from) const {
  std::size_t node = from;
  for (Symbol a : w) node = next(node, a);
  return node;
}

}  // namespace ams
