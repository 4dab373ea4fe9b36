// Finite-state hidden-Markov sources on one-sided sequence spaces.
//
// State s emits label(s) (Moore style). The measure of a cylinder is
//   mu([w]) = sum over s_0..s_{n-1} with label(s_t) = w_t of
//             init(s_0) * P(s_0,s_1) * ... * P(s_{n-2},s_{n-1}).

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ams/linalg.hpp"
#include "ams/markov.hpp"
#include "ams/seqcore.hpp"

namespace ams {

class FsmSource {
 public:
  FsmSource(Alphabet alphabet, std::vector<Symbol> labels, Vector init, Matrix trans,
            std::vector<std::string> state_names = {});

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return labels_.size(); }
  const std::vector<Symbol>& labels() const { return labels_; }
  Symbol label(std::size_t s) const { return labels_[s]; }
  const Vector& init() const { return init_; }
  const Matrix& trans() const { return trans_; }
  const std::vector<std::string>& state_names() const { return names_; }
  bool exact() const;

  /// Class decomposition and Cesaro limit of trans(), computed once and
  /// shared by every source derived with with_init().
  const ClassDecomposition& decomposition() const;
  const Matrix& cesaro() const;

  /// Same chain and labels, new initial distribution. Shares the cache.
  FsmSource with_init(Vector init) const;
  /// Same chain, labels mapped into another alphabet.
  FsmSource relabel(Alphabet alphabet, std::vector<Symbol> labels) const;
  FsmSource to_mode(Arith mode) const;

 private:
  struct Cache;

  Alphabet alphabet_;
  std::vector<Symbol> labels_;
  Vector init_;
  Matrix trans_;
  std::vector<std::string> names_;
  std::shared_ptr<Cache> cache_;
};

/// Forward vector alpha_w(s) = P(emit w, be in s at time |w|-1). For the empty
/// word this is init.
Vector forward(const FsmSource& src, const Word& w);

Scalar cyl_prob(const FsmSource& src, const Word& w);
Scalar event_prob(const FsmSource& src, const CylinderEvent& e);

/// init replaced by init * P^n.
FsmSource shifted_source(const FsmSource& src, std::size_t n);
FsmSource stationary_mean(const FsmSource& src);

struct Equivalence {
  bool equal = true;
  std::optional<Word> witness;
};

/// Measure equality of two sources on the same alphabet. Explores a basis of
/// the joint forward space breadth-first; the basis spans every word, and no
/// basis word is longer than |S1| + |S2|.
Equivalence are_equivalent(const FsmSource& a, const FsmSource& b);
bool is_stationary(const FsmSource& src);
/// The first word whose probability changes under the shift, if any.
std::optional<Word> stationarity_witness(const FsmSource& src);

/// mu(F \ union_{k>=1} T^{-k} F) for the cylinder event F.
Scalar recurrence_defect(const FsmSource& src, const CylinderEvent& e);
/// recurrence_defect(src, e) == 0, decided on the support graph only.
bool recurrence_defect_is_zero(const FsmSource& src, const CylinderEvent& e);

/// A depth-tagged verdict. witness is the first word (shorter first, then
/// lexicographic) refuting the property.
struct WordVerdict {
  bool holds = true;
  std::size_t depth = 0;
  std::optional<Word> witness;
};

WordVerdict is_recurrent(const FsmSource& src, std::size_t depth);

/// Positive-probability words of length <= depth from the given start states
/// (each start state counted as emitting its own label first).
std::vector<Word> support_from(const FsmSource& src, const std::vector<bool>& start,
                               std::size_t depth);
/// Positive-probability words of length <= depth under init.
std::vector<Word> support(const FsmSource& src, std::size_t depth);
/// Words generable from states of closed classes reachable from init.
std::vector<Word> asymptotic_support(const FsmSource& src, std::size_t depth);

/// eta([w]) = 0 implies mu([w]) = 0 for all |w| <= depth.
WordVerdict dominates(const FsmSource& eta, const FsmSource& mu, std::size_t depth);
/// Throws PreconditionError unless eta is stationary.
WordVerdict asymptotically_dominates(const FsmSource& eta, const FsmSource& mu,
                                     std::size_t depth);

struct ErgodicVerdict {
  bool ergodic = true;
  /// Set when several closed classes carry mass: they might still induce the
  /// same output law, so "false" holds up to output-equivalence only.
  bool caveat = false;
  std::size_t charged_classes = 0;
};

ErgodicVerdict is_ergodic(const FsmSource& src);

/// Cesaro-convergence evidence, always computed on a double copy. dev(n) sums
/// |(1/n) sum_{k<n} mu(T^-k [w]) - mubar([w])| over all words of length
/// <= depth; constant = max(n1 * dev(n1), n2 * dev(n2)).
struct ConvergenceEvidence {
  std::size_t n1 = 128;
  std::size_t n2 = 256;
  double dev1 = 0;
  double dev2 = 0;
  double max_dev1 = 0;
  double max_dev2 = 0;
  double constant = 0;
  /// dev(n1) negligible: the source starts (numerically) at its mean.
  bool converged = false;
  double ratio() const { return dev1 > 0 ? dev2 / dev1 : 0.0; }
};

ConvergenceEvidence convergence_evidence(const FsmSource& src, std::size_t depth,
                                         std::size_t n1 = 128, std::size_t n2 = 256);

struct SourceVerdict {
  bool stationary = false;
  std::optional<Word> stationary_witness;
  WordVerdict recurrent;
  bool ams = true;
  ConvergenceEvidence evidence;
  ErgodicVerdict ergodic;
};

/// Throws HierarchyViolation if stationary holds but recurrence fails.
SourceVerdict classify_source(const FsmSource& src, std::size_t depth);

}  // namespace ams
