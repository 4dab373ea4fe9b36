// Causal finite-state probabilistic transducers and the measures they induce.
//
// A channel in state q reading input a emits b and moves to q' with
// probability K(q,a)(b,q'). Timing convention shared by every construction
// here and by the oracles: at tick t the source emits x_t, then the channel
// consumes x_t and emits y_t in the same tick.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ams/source.hpp"

namespace ams {

class FsmChannel {
 public:
  /// kernel is dense, indexed ((q * |A| + a) * |B| + b) * |Q| + q'.
  FsmChannel(Alphabet in, Alphabet out, Vector init, std::vector<Scalar> kernel,
             std::vector<std::string> state_names = {});

  const Alphabet& in_alphabet() const { return in_; }
  const Alphabet& out_alphabet() const { return out_; }
  std::size_t num_states() const { return init_.size(); }
  const Vector& init() const { return init_; }
  const std::vector<std::string>& state_names() const { return names_; }
  const std::vector<Scalar>& kernel() const { return kernel_; }

  std::size_t index(std::size_t q, Symbol a, Symbol b, std::size_t q2) const {
    return ((q * in_.size() + a) * out_.size() + b) * num_states() + q2;
  }
  const Scalar& k(std::size_t q, Symbol a, Symbol b, std::size_t q2) const {
    return kernel_[index(q, a, b, q2)];
  }

  bool exact() const;
  FsmChannel to_mode(Arith mode) const;
  FsmChannel with_init(Vector init) const;

 private:
  Alphabet in_;
  Alphabet out_;
  Vector init_;
  std::vector<Scalar> kernel_;
  std::vector<std::string> names_;
};

/// The eventually periodic input stem . cycle . cycle . ...
struct LassoInput {
  Word stem;
  Word cycle;

  std::size_t period_start() const { return stem.size(); }
  std::size_t positions() const { return stem.size() + cycle.size(); }
  Symbol at_position(std::size_t p) const {
    return p < stem.size() ? stem[p] : cycle[p - stem.size()];
  }
  std::size_t next_position(std::size_t p) const {
    return p + 1 < positions() ? p + 1 : stem.size();
  }
  /// x_0 ... x_{n-1}.
  Word prefix(std::size_t n) const;
};

/// A source over A x B together with its factor alphabets. Symbol index of
/// (a, b) is a * |B| + b.
struct JointSource {
  FsmSource source;
  Alphabet input;
  Alphabet output;

  Symbol input_of(Symbol joint) const { return static_cast<Symbol>(joint / output.size()); }
  Symbol output_of(Symbol joint) const { return static_cast<Symbol>(joint % output.size()); }
};

/// nu(x, [v]) for any x in [w]. Requires |w| >= |v|.
Scalar channel_cyl_prob(const FsmChannel& ch, const Word& w, const Word& v);

/// nu(x, .) for a lasso input x, as a source over the output alphabet.
FsmSource channel_output_measure(const FsmChannel& ch, const LassoInput& x);

/// The hookup mu nu as a Moore chain on states (s, q, b).
JointSource hookup(const FsmSource& src, const FsmChannel& ch);
/// Hookup where the channel reads input_of_label[a] whenever the source emits
/// a. The joint alphabet is src.alphabet() x ch.out_alphabet().
JointSource hookup_projected(const FsmSource& src, const FsmChannel& ch,
                             const std::vector<Symbol>& input_of_label);

FsmSource input_marginal(const JointSource& joint);
FsmSource output_marginal(const JointSource& joint);

/// ch1 then ch2 on states Q1 x Q2.
FsmChannel cascade(const FsmChannel& ch1, const FsmChannel& ch2);

/// Channel whose state is the last output state z: reading a moves z to z'
/// with probability per_symbol[a](z, z') and emits labels[z'].
FsmChannel markov_channel(const Alphabet& in, const Alphabet& out,
                          const std::vector<Matrix>& per_symbol,
                          const std::vector<Symbol>& labels, const Vector& init);

/// Depth-bounded conditional cylinder probabilities entry(w, v), 1 <= |w| <= L,
/// 0 <= |v| <= |w|. Inputs with zero conditioning mass are flagged and carry
/// no entries.
struct ConditionalKernelTable {
  Alphabet input;
  Alphabet output;
  std::size_t depth = 0;
  std::map<std::pair<Word, Word>, Scalar> entries;
  std::set<Word> flags;

  std::optional<Scalar> entry(const Word& w, const Word& v) const;
  /// Exact equality on every entry and on the flag set.
  friend bool operator==(const ConditionalKernelTable& a, const ConditionalKernelTable& b);
};

/// Sum_b entry(w, v.b) = entry(w, v) and entry(w, eps) = 1 on unflagged w.
bool table_is_coherent(const ConditionalKernelTable& t);

/// Fills a table from a joint law whose input marginal is mu:
/// entry(w, v) = joint([w] x [v]) / mu([w]).
ConditionalKernelTable conditional_table(const JointSource& joint, const FsmSource& mu,
                                         std::size_t depth);
/// Same values, computed without threads. Kept as the reference for the
/// parallel fill.
ConditionalKernelTable conditional_table_serial(const JointSource& joint, const FsmSource& mu,
                                                std::size_t depth);

/// mu nu T^{-i} conditioned on the input, for stationary mu.
ConditionalKernelTable nu_i_table(const FsmSource& src, const FsmChannel& ch, std::size_t i,
                                  std::size_t depth);
/// The channel factor of the stationary mean of mu nu, for stationary mu.
ConditionalKernelTable quasi_stationary_mean(const FsmSource& src, const FsmChannel& ch,
                                             std::size_t depth);
/// The stationary mean of the hookup itself.
JointSource hookup_stationary_mean(const FsmSource& src, const FsmChannel& ch);

/// Stationary mean of nu(x, .).
FsmSource kernel_stationary_mean(const FsmChannel& ch, const LassoInput& x);

/// Compares two channels on every (w, v) with |v| = |w| <= depth.
std::optional<std::pair<Word, Word>> channel_difference(const FsmChannel& a,
                                                        const FsmChannel& b, std::size_t depth);

}  // namespace ams
