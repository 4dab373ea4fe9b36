// Named reference sources and channels over the alphabet {a, b}.

#pragma once

#include "ams/channel.hpp"

namespace ams::catalog {

Alphabet binary();

/// Period two: s0 emits a, s1 emits b, s0 <-> s1, started in s0.
FsmSource s1_periodic();
/// t emits a once, then the chain is absorbed in r emitting b.
FsmSource s2_absorbing();
/// Fair coin, one state per symbol.
FsmSource s3_iid();
/// Fair coin with the a-state split in two (a redundant representation).
FsmSource s3_split();
/// iid with P(a) = p.
FsmSource iid(const Scalar& p_a);
/// The constant sequence sym sym sym ...
FsmSource point_mass(Symbol sym);
/// Two absorbing loops, one emitting a and one emitting b, each with mass 1/2.
FsmSource two_loops();
/// Stationary mixture: mass 1/2 on a fair-coin class, 1/2 on a b-loop.
FsmSource reducible_mixture();
/// Transient start emitting a, then either a b-loop or a fair-coin class.
FsmSource transient_fork();

/// Memoryless binary symmetric channel with crossover p.
FsmChannel bsc(const Scalar& p);
/// Noiseless channel.
FsmChannel copy();
/// Emits a at time 0 whatever the input, then copies the input.
FsmChannel transient_copy();
/// Draws a fair coin at time 0 and outputs that symbol forever.
FsmChannel coin_latch();

}  // namespace ams::catalog
