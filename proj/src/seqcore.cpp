#include "ams/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ams/errors.hpp"

namespace ams {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw InvariantViolation("alphabet must contain at least one symbol");
  std::unordered_set<std::string> seen;
  for (const auto& t : tokens_) {
    if (t.empty()) throw InvariantViolation("alphabet tokens must be nonempty");
    if (!seen.insert(t).second) throw InvariantViolation("duplicate alphabet token '" + t + "'");
    if (t.size() != 1) single_char_ = false;
  }
}

Alphabet Alphabet::product(const Alphabet& a, const Alphabet& b) {
  std::vector<std::string> tokens;
  tokens.reserve(a.size() * b.size());
  for (const auto& x : a.tokens_) {
    for (const auto& y : b.tokens_) tokens.push_back("(" + x + "," + y + ")");
  }
  return Alphabet(std::move(tokens));
}

Symbol Alphabet::index(std::string_view token) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i] == token) return static_cast<Symbol>(i);
  }
  throw AlphabetMismatch("symbol '" + std::string(token) + "' is not in the alphabet");
}

bool Alphabet::contains(const Word& w) const {
  return std::all_of(w.begin(), w.end(), [&](Symbol s) { return s < tokens_.size(); });
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i > 0) out.push_back(' ');
    out += token(w[i]);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (single_char_) {
    for (char c : text) {
      if (c == ' ') continue;
      w.push_back(index(std::string_view(&c, 1)));
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    w.push_back(index(text.substr(pos, end - pos)));
    pos = end;
  }
  return w;
}

void require_same(const Alphabet& a, const Alphabet& b, std::string_view what) {
  if (!(a == b)) throw AlphabetMismatch(std::string(what) + ": alphabet mismatch");
}

void check_enumeration_budget(std::size_t alphabet_size, std::size_t length) {
  double count = std::pow(static_cast<double>(alphabet_size), static_cast<double>(length));
  if (count > kEnumerationBudget) {
    throw BudgetExceeded("enumerating " + std::to_string(alphabet_size) + "^" +
                         std::to_string(length) + " words exceeds the budget");
  }
}

void for_each_word(std::size_t alphabet_size, std::size_t length,
                   const std::function<void(const Word&)>& fn) {
  check_enumeration_budget(alphabet_size, length);
  Word w(length, 0);
  if (alphabet_size == 0 && length > 0) return;
  while (true) {
    fn(w);
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (++w[i] < alphabet_size) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (length == 0) return;
  }
}

std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_length) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_length; ++len) {
    for_each_word(alphabet_size, len, [&](const Word& w) { out.push_back(w); });
  }
  return out;
}

CylinderEvent::CylinderEvent(Alphabet alphabet, std::size_t depth, std::set<Word> words)
    : alphabet_(std::move(alphabet)), depth_(depth), words_(std::move(words)) {
  if (depth_ == 0) throw InvariantViolation("cylinder events need depth >= 1");
  for (const auto& w : words_) {
    if (w.size() != depth_) throw InvariantViolation("cylinder word length differs from depth");
    if (!alphabet_.contains(w)) throw AlphabetMismatch("cylinder word outside its alphabet");
  }
}

CylinderEvent CylinderEvent::full(const Alphabet& alphabet, std::size_t depth) {
  std::set<Word> words;
  for_each_word(alphabet.size(), depth, [&](const Word& w) { words.insert(w); });
  return CylinderEvent(alphabet, depth, std::move(words));
}

CylinderEvent CylinderEvent::empty(const Alphabet& alphabet, std::size_t depth) {
  return CylinderEvent(alphabet, depth);
}

CylinderEvent CylinderEvent::singleton(const Alphabet& alphabet, const Word& w) {
  return CylinderEvent(alphabet, w.size(), {w});
}

CylinderEvent CylinderEvent::refine(std::size_t new_depth) const {
  if (new_depth < depth_) throw InvariantViolation("refinement cannot reduce depth");
  if (new_depth == depth_) return *this;
  std::set<Word> out;
  std::size_t extra = new_depth - depth_;
  for_each_word(alphabet_.size(), extra, [&](const Word& suffix) {
    for (const auto& w : words_) {
      Word x = w;
      x.insert(x.end(), suffix.begin(), suffix.end());
      out.insert(std::move(x));
    }
  });
  return CylinderEvent(alphabet_, new_depth, std::move(out));
}

CylinderEvent shift_preimage(const CylinderEvent& event, std::size_t k) {
  if (k == 0) return event;
  std::set<Word> out;
  for_each_word(event.alphabet().size(), k, [&](const Word& prefix) {
    for (const auto& w : event.words()) {
      Word x = prefix;
      x.insert(x.end(), w.begin(), w.end());
      out.insert(std::move(x));
    }
  });
  return CylinderEvent(event.alphabet(), event.depth() + k, std::move(out));
}

CylinderEvent event_algebra(SetOp op, const CylinderEvent& e1, const CylinderEvent* e2) {
  if (op == SetOp::complement) {
    std::set<Word> out;
    for_each_word(e1.alphabet().size(), e1.depth(), [&](const Word& w) {
      if (!e1.contains(w)) out.insert(w);
    });
    return CylinderEvent(e1.alphabet(), e1.depth(), std::move(out));
  }
  if (e2 == nullptr) throw InvariantViolation("binary event operation needs two operands");
  require_same(e1.alphabet(), e2->alphabet(), "event_algebra");
  std::size_t depth = std::max(e1.depth(), e2->depth());
  CylinderEvent a = e1.refine(depth);
  CylinderEvent b = e2->refine(depth);
  std::set<Word> out;
  switch (op) {
    case SetOp::union_:
      std::set_union(a.words().begin(), a.words().end(), b.words().begin(), b.words().end(),
                     std::inserter(out, out.end()));
      break;
    case SetOp::intersect:
      std::set_intersection(a.words().begin(), a.words().end(), b.words().begin(),
                            b.words().end(), std::inserter(out, out.end()));
      break;
    case SetOp::difference:
      std::set_difference(a.words().begin(), a.words().end(), b.words().begin(),
                          b.words().end(), std::inserter(out, out.end()));
      break;
    case SetOp::complement:
      break;
  }
  return CylinderEvent(e1.alphabet(), depth, std::move(out));
}

CylinderEvent event_union(const CylinderEvent& a, const CylinderEvent& b) {
  return event_algebra(SetOp::union_, a, &b);
}
CylinderEvent event_intersect(const CylinderEvent& a, const CylinderEvent& b) {
  return event_algebra(SetOp::intersect, a, &b);
}
CylinderEvent event_difference(const CylinderEvent& a, const CylinderEvent& b) {
  return event_algebra(SetOp::difference, a, &b);
}
CylinderEvent event_complement(const CylinderEvent& a) {
  return event_algebra(SetOp::complement, a);
}

RectEvent::RectEvent(CylinderEvent in, CylinderEvent out)
    : input(std::move(in)), output(std::move(out)) {
  if (input.depth() != output.depth()) throw InvariantViolation("rectangle sides differ in depth");
}

Word zip_words(const Word& input, const Word& output, std::size_t output_size) {
  if (input.size() != output.size()) throw InvariantViolation("zip of unequal-length words");
  Word joint(input.size());
  for (std::size_t t = 0; t < input.size(); ++t) {
    joint[t] = static_cast<Symbol>(input[t] * output_size + output[t]);
  }
  return joint;
}

std::pair<Word, Word> unzip_word(const Word& joint, std::size_t output_size) {
  Word in(joint.size());
  Word out(joint.size());
  for (std::size_t t = 0; t < joint.size(); ++t) {
    in[t] = static_cast<Symbol>(joint[t] / output_size);
    out[t] = static_cast<Symbol>(joint[t] % output_size);
  }
  return {in, out};
}

CylinderEvent RectEvent::joint() const {
  Alphabet ab = Alphabet::product(input.alphabet(), output.alphabet());
  std::set<Word> words;
  for (const auto& w : input.words()) {
    for (const auto& v : output.words()) words.insert(zip_words(w, v, output.alphabet().size()));
  }
  return CylinderEvent(ab, input.depth(), std::move(words));
}

}  // namespace ams
