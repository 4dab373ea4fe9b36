// Alphabets, words and cylinder events on one-sided sequence spaces.

#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ams {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Ordered finite set of distinct tokens. The order fixes symbol indices and
/// serialization order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens);

  /// Tokens "(a,b)" for every pair, a-major. Symbol index is a * |B| + b.
  static Alphabet product(const Alphabet& a, const Alphabet& b);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(Symbol s) const { return tokens_.at(s); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  Symbol index(std::string_view token) const;
  bool contains(const Word& w) const;

  /// Concatenates tokens when all are single characters, separates them with
  /// spaces otherwise.
  std::string format(const Word& w) const;
  Word parse(std::string_view text) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  bool single_char_ = true;
};

void require_same(const Alphabet& a, const Alphabet& b, std::string_view what);

/// Calls fn on every word of exactly the given length in lexicographic order.
void for_each_word(std::size_t alphabet_size, std::size_t length,
                   const std::function<void(const Word&)>& fn);
/// All words of length 1..max_length, shorter first, lexicographic within a
/// length.
std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_length);
/// Throws BudgetExceeded when |A|^length exceeds the enumeration budget.
void check_enumeration_budget(std::size_t alphabet_size, std::size_t length);
inline constexpr double kEnumerationBudget = 4.0e6;

/// The event {x : x_0 ... x_{L-1} in words}, all words of length L = depth.
class CylinderEvent {
 public:
  CylinderEvent(Alphabet alphabet, std::size_t depth, std::set<Word> words = {});

  static CylinderEvent full(const Alphabet& alphabet, std::size_t depth);
  static CylinderEvent empty(const Alphabet& alphabet, std::size_t depth);
  static CylinderEvent singleton(const Alphabet& alphabet, const Word& w);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t depth() const { return depth_; }
  const std::set<Word>& words() const { return words_; }
  bool is_empty() const { return words_.empty(); }
  bool contains(const Word& w) const { return words_.count(w) != 0; }

  /// Same event, expressed at a larger depth by appending every suffix.
  CylinderEvent refine(std::size_t new_depth) const;

  friend bool operator==(const CylinderEvent& a, const CylinderEvent& b) {
    return a.alphabet_ == b.alphabet_ && a.depth_ == b.depth_ && a.words_ == b.words_;
  }

 private:
  Alphabet alphabet_;
  std::size_t depth_;
  std::set<Word> words_;
};

/// T^{-k} E: the event that the window starting at time k lies in E.
CylinderEvent shift_preimage(const CylinderEvent& event, std::size_t k);

enum class SetOp { union_, intersect, difference, complement };

/// Refines both operands to the common depth, then applies the set operation
/// on word sets. complement ignores the second operand.
CylinderEvent event_algebra(SetOp op, const CylinderEvent& e1, const CylinderEvent* e2 = nullptr);

CylinderEvent event_union(const CylinderEvent& a, const CylinderEvent& b);
CylinderEvent event_intersect(const CylinderEvent& a, const CylinderEvent& b);
CylinderEvent event_difference(const CylinderEvent& a, const CylinderEvent& b);
CylinderEvent event_complement(const CylinderEvent& a);

/// The rectangle F x G of a joint input/output space.
struct RectEvent {
  CylinderEvent input;
  CylinderEvent output;

  RectEvent(CylinderEvent in, CylinderEvent out);
  /// The same set as a cylinder event over Alphabet::product(in, out).
  CylinderEvent joint() const;
};

/// Pairs two equal-length words into a word over the product alphabet.
Word zip_words(const Word& input, const Word& output, std::size_t output_size);
/// Inverse of zip_words.
std::pair<Word, Word> unzip_word(const Word& joint, std::size_t output_size);

}  // namespace ams
