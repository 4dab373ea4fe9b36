// Reference computations used to validate the main code path.
//
// Nothing here calls the forward algorithm, the hookup construction or the
// Cesaro solver: the oracles read raw model data and enumerate paths or
// iterate distributions directly.

#pragma once

#include <cstdint>
#include <map>

#include "ams/channel.hpp"

namespace ams::oracle {

/// Upper bound on enumerated state paths per call.
inline constexpr double kPathBudget = 4.0e6;

/// Sum over state sequences of length depth(E) whose labels spell a word of E.
Scalar brute_force_event_prob(const FsmSource& src, const CylinderEvent& e);

/// (1/n) sum_{k<n} mu(T^-k E), iterating init * P^k by hand.
Scalar cesaro_partial(const FsmSource& src, const CylinderEvent& e, std::size_t n);

/// nu(x, [v]) by enumerating channel state paths.
Scalar brute_force_channel_prob(const FsmChannel& ch, const Word& w, const Word& v);

/// mu nu T^{-shift}([w] x [v]) with |w| = |v|, by enumerating source and
/// channel paths of length shift + |w|.
Scalar brute_force_rectangle(const FsmSource& src, const FsmChannel& ch, const Word& w,
                             const Word& v, std::size_t shift = 0);

/// (1/n) sum_{i<n} of the nu_i tables, from the averaged (source state,
/// channel state) law at the start of the window.
ConditionalKernelTable nu_cesaro_partial(const FsmSource& src, const FsmChannel& ch,
                                         std::size_t n, std::size_t depth);

/// (1/n) sum_{k<n} nu(x, T^-k [v]) for a lasso input x.
Scalar kernel_cesaro_partial(const FsmChannel& ch, const LassoInput& x, const Word& v,
                             std::size_t n);

struct EmpiricalTable {
  std::size_t horizon = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::map<Word, std::uint64_t> counts;

  double frequency(const Word& w) const;
  /// 3 sqrt(p(1-p)/n), the reported 99% half-width.
  double half_width(const Word& w) const;
  friend bool operator==(const EmpiricalTable& a, const EmpiricalTable& b) {
    return a.horizon == b.horizon && a.samples == b.samples && a.seed == b.seed &&
           a.counts == b.counts;
  }
};

/// Samples trajectories of the given length; trajectory i draws from
/// SplitMix64::derive(seed, i). Parallel over trajectory blocks.
EmpiricalTable monte_carlo(const FsmSource& src, std::size_t horizon, std::size_t samples,
                           std::uint64_t seed);
EmpiricalTable monte_carlo_serial(const FsmSource& src, std::size_t horizon,
                                  std::size_t samples, std::uint64_t seed);

}  // namespace ams::oracle
