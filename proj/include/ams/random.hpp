// Deterministic random streams and random model generators.
//
// The stream is SplitMix64: state += 0x9e3779b97f4a7c15, then the output
// mixer. Every trial and every Monte Carlo trajectory draws from its own
// stream derived from (seed, index), so results never depend on scheduling.

#pragma once

#include <cstdint>

#include "ams/channel.hpp"

namespace ams {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  /// Independent stream for item `index` of a run seeded with `seed`.
  static SplitMix64 derive(std::uint64_t seed, std::uint64_t index);

  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

struct RowOptions {
  /// Probability that an entry is forced to zero (at least one entry stays).
  double zero_prob = 0.3;
  /// Entries are integer weights in 1..max_weight before normalization.
  unsigned max_weight = 4;
};

/// Exact rational probability vector.
Vector random_distribution(SplitMix64& rng, std::size_t n, const RowOptions& opt = {});
Matrix random_stochastic(SplitMix64& rng, std::size_t n, const RowOptions& opt = {});

enum class MatrixShape { generic, reducible, periodic, permutation };
/// Stochastic matrices with forced structure: reducible ones have a
/// transient block feeding two closed blocks, periodic ones cycle through
/// 2 or 3 cyclic classes.
Matrix random_structured_matrix(SplitMix64& rng, std::size_t n, MatrixShape shape);

Alphabet letters(std::size_t n);

struct SourceOptions {
  std::size_t max_states = 4;
  std::size_t min_alphabet = 1;
  std::size_t max_alphabet = 3;
  RowOptions rows;
};

FsmSource random_source(SplitMix64& rng, const SourceOptions& opt = {});
FsmSource random_source_over(SplitMix64& rng, const Alphabet& a, std::size_t states,
                             const RowOptions& rows = {});
FsmSource random_stationary_source(SplitMix64& rng, const Alphabet& a, std::size_t states,
                                   const RowOptions& rows = {});
/// Initial law supported on the closed classes only, so the source is
/// recurrent (and dominated by its stationary mean).
FsmSource random_recurrent_source(SplitMix64& rng, const Alphabet& a, std::size_t states,
                                  const RowOptions& rows = {});

/// Arbitrary kernel with zeros.
FsmChannel random_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out,
                          std::size_t states, const RowOptions& rows = {});
/// Every K(q,a) has full support: half uniform, half random.
FsmChannel random_dense_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out,
                                std::size_t states);
/// Input-independent stationary state chain plus emissions depending on
/// (q, q', a). Stationary in the kernel sense.
FsmChannel random_stationary_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out,
                                     std::size_t states, const RowOptions& rows = {});
FsmChannel random_markov_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out,
                                 std::size_t states, const RowOptions& rows = {});

/// Stem of length <= max_stem, cycle of length 1..max_cycle.
LassoInput random_lasso(SplitMix64& rng, const Alphabet& a, std::size_t max_stem = 1,
                        std::size_t max_cycle = 2);
Word random_word(SplitMix64& rng, std::size_t alphabet_size, std::size_t length);

}  // namespace ams
