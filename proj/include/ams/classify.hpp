// Channel property checkers and the stationary / quasi-stationary / R-AMS /
// AMS hierarchy classifier.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ams/channel.hpp"

namespace ams {

using Rectangle = std::pair<Word, Word>;

struct ChannelCheck {
  bool holds = true;
  std::size_t depth = 0;
  /// First refuting (input word, output word), if any.
  std::optional<Rectangle> witness;
};

/// sum_b nu(x, [b v]) = nu(Tx, [v]) on every [w] with |w| = |v| + 1 <= L + 1.
/// Exhaustive once L >= |Q|: the difference of the two initial laws is
/// tested against a spanning set of channel-state vectors.
ChannelCheck is_channel_stationary(const FsmChannel& ch, std::size_t depth);

/// Stationarity of the hookup. Throws PreconditionError for a non-stationary
/// source. The check itself is exact on all depths.
ChannelCheck is_quasi_stationary_wrt(const FsmChannel& ch, const FsmSource& src,
                                     std::size_t depth);

/// Zero recurrence defect on every positive-mass rectangle [w] x [v],
/// |w| = |v| <= L. Throws PreconditionError unless the source is recurrent.
ChannelCheck is_channel_recurrent_wrt(const FsmChannel& ch, const FsmSource& src,
                                      std::size_t depth);

struct AmsCheck {
  bool holds = true;
  std::size_t depth = 0;
  ConvergenceEvidence evidence;
  /// Asymptotic domination of the hookup by its stationary mean.
  WordVerdict dominated;
  JointSource mean;
};

AmsCheck is_channel_ams_wrt(const FsmChannel& ch, const FsmSource& src, std::size_t depth);

/// Throws PreconditionError unless the source is ergodic.
ErgodicVerdict is_channel_ergodic_wrt(const FsmChannel& ch, const FsmSource& src);

/// Verdicts of one channel against one source. A missing optional means the
/// source failed that checker's precondition; the reason is in rejections.
struct SourceEntry {
  std::string id;
  std::optional<ChannelCheck> quasi_stationary;
  std::optional<ChannelCheck> recurrent;
  AmsCheck ams;
  std::optional<bool> r_ams;
  std::optional<ErgodicVerdict> ergodic;
  std::vector<std::string> rejections;
};

struct ChannelVerdict {
  std::size_t depth = 0;
  ChannelCheck stationary;
  std::vector<SourceEntry> sources;
};

struct NamedSource {
  std::string id;
  FsmSource source;
};

/// Runs every checker per source and enforces stationary => quasi-stationary
/// => R-AMS => AMS; an inversion throws HierarchyViolation. Stationarity is
/// checked to depth max(L, |Q|) so that it is exact.
ChannelVerdict classify_channel(const FsmChannel& ch, const std::vector<NamedSource>& sources,
                                std::size_t depth);

/// Default stand-in for "every stationary source": 20 random stationary
/// sources plus iid, periodic and reducible-mixture ones, over `a`.
std::vector<NamedSource> stationary_battery(const Alphabet& a, std::uint64_t seed,
                                            std::size_t random_count = 20);

struct IdentityReport {
  bool passed = true;
  std::vector<std::string> notes;
};

/// The quasi-stationary mean with respect to mu equals the one with respect
/// to its stationary mean, on every word of positive stationary-mean mass.
/// Throws PreconditionError unless mu is ergodic and recurrent and the
/// channel is ergodic and recurrent with respect to mu.
IdentityReport check_qs_mean_identity(const FsmChannel& ch, const FsmSource& src,
                                      std::size_t depth);
/// For two sources with singular stationary means (disjoint supports at
/// depth L), the stationary means of the hookups have disjoint supports.
IdentityReport check_qs_mean_singularity(const FsmChannel& ch, const FsmSource& a,
                                         const FsmSource& b, std::size_t depth);

/// Positive-mass joint words of the hookup, as rectangles with |w| = |v| = m
/// for every m <= depth, in order of length then lexicographic.
std::vector<Rectangle> rectangle_support(const JointSource& joint, std::size_t depth);

}  // namespace ams
