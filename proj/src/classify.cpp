#include "ams/classify.hpp"

#include <algorithm>
#include <cmath>

#include "ams/errors.hpp"
#include "ams/random.hpp"

namespace ams {

namespace {

Word tail(const Word& w) { return Word(w.begin() + 1, w.end()); }

Word push_front(Symbol b, const Word& v) {
  Word out;
  out.reserve(v.size() + 1);
  out.push_back(b);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace

ChannelCheck is_channel_stationary(const FsmChannel& ch, std::size_t depth) {
  if (depth == 0) throw InvariantViolation("is_channel_stationary needs L >= 1");
  ChannelCheck out{true, depth, std::nullopt};
  const std::size_t na = ch.in_alphabet().size();
  const std::size_t nb = ch.out_alphabet().size();
  for (std::size_t m = 1; m <= depth && out.holds; ++m) {
    for_each_word(na, m + 1, [&](const Word& w) {
      if (!out.holds) return;
      Word rest = tail(w);
      for_each_word(nb, m, [&](const Word& v) {
        if (!out.holds) return;
        Scalar lhs;
        for (Symbol b = 0; b < nb; ++b) lhs += channel_cyl_prob(ch, w, push_front(b, v));
        if (!(lhs == channel_cyl_prob(ch, rest, v))) {
          out.holds = false;
          out.witness = Rectangle{w, v};
        }
      });
    });
  }
  return out;
}

ChannelCheck is_quasi_stationary_wrt(const FsmChannel& ch, const FsmSource& src,
                                     std::size_t depth) {
  if (!is_stationary(src)) {
    throw PreconditionError("quasi-stationarity is defined against stationary sources only");
  }
  JointSource joint = hookup(src, ch);
  ChannelCheck out{true, depth, std::nullopt};
  if (auto w = stationarity_witness(joint.source)) {
    out.holds = false;
    out.witness = unzip_word(*w, joint.output.size());
  }
  return out;
}

std::vector<Rectangle> rectangle_support(const JointSource& joint, std::size_t depth) {
  std::vector<Rectangle> out;
  for (const Word& z : support(joint.source, depth)) {
    out.push_back(unzip_word(z, joint.output.size()));
  }
  return out;
}

ChannelCheck is_channel_recurrent_wrt(const FsmChannel& ch, const FsmSource& src,
                                      std::size_t depth) {
  if (!is_recurrent(src, depth).holds) {
    throw PreconditionError("channel recurrence is defined against recurrent sources only");
  }
  JointSource joint = hookup(src, ch);
  const Alphabet& ja = joint.source.alphabet();
  ChannelCheck out{true, depth, std::nullopt};
  for (const Word& z : support(joint.source, depth)) {
    if (!recurrence_defect_is_zero(joint.source, CylinderEvent::singleton(ja, z))) {
      out.holds = false;
      out.witness = unzip_word(z, joint.output.size());
      break;
    }
  }
  return out;
}

AmsCheck is_channel_ams_wrt(const FsmChannel& ch, const FsmSource& src, std::size_t depth) {
  JointSource joint = hookup(src, ch);
  AmsCheck out{true, depth, {}, {}, hookup_stationary_mean(src, ch)};
  out.evidence = convergence_evidence(joint.source, depth);
  out.dominated = asymptotically_dominates(out.mean.source, joint.source, depth);
  out.holds = out.dominated.holds && std::isfinite(out.evidence.constant);
  return out;
}

ErgodicVerdict is_channel_ergodic_wrt(const FsmChannel& ch, const FsmSource& src) {
  if (!is_ergodic(src).ergodic) {
    throw PreconditionError("channel ergodicity is defined against ergodic sources only");
  }
  return is_ergodic(hookup(src, ch).source);
}

ChannelVerdict classify_channel(const FsmChannel& ch, const std::vector<NamedSource>& sources,
                                std::size_t depth) {
  ChannelVerdict v;
  v.depth = depth;
  v.stationary = is_channel_stationary(ch, std::max(depth, ch.num_states()));
  for (const auto& [id, src] : sources) {
    SourceEntry e{id, std::nullopt, std::nullopt, is_channel_ams_wrt(ch, src, depth),
                  std::nullopt, std::nullopt, {}};
    if (is_stationary(src)) {
      e.quasi_stationary = is_quasi_stationary_wrt(ch, src, depth);
    } else {
      e.rejections.push_back("quasi_stationary: source is not stationary");
    }
    if (is_recurrent(src, depth).holds) {
      e.recurrent = is_channel_recurrent_wrt(ch, src, depth);
    } else {
      e.rejections.push_back("recurrent: source is not recurrent");
    }
    if (e.recurrent) e.r_ams = e.recurrent->holds && e.ams.holds;
    if (is_ergodic(src).ergodic) {
      e.ergodic = is_channel_ergodic_wrt(ch, src);
    } else {
      e.rejections.push_back("ergodic: source is not ergodic");
    }

    auto fail = [&](const std::string& what) {
      throw HierarchyViolation("channel against source '" + id + "': " + what);
    };
    bool qs = e.quasi_stationary && e.quasi_stationary->holds;
    if (v.stationary.holds && e.quasi_stationary && !qs) {
      fail("stationary but not quasi-stationary");
    }
    if (qs && !(e.r_ams && *e.r_ams)) fail("quasi-stationary but not R-AMS");
    if (e.r_ams && *e.r_ams && !e.ams.holds) fail("R-AMS but not AMS");
    v.sources.push_back(std::move(e));
  }
  return v;
}

std::vector<NamedSource> stationary_battery(const Alphabet& a, std::uint64_t seed,
                                            std::size_t random_count) {
  std::vector<NamedSource> out;
  for (std::size_t i = 0; i < random_count; ++i) {
    SplitMix64 rng = SplitMix64::derive(seed, i);
    std::size_t states = 1 + rng.below(4);
    out.push_back({"random-" + std::to_string(i), random_stationary_source(rng, a, states)});
  }
  const std::size_t k = a.size();
  const Scalar u = Scalar(1) / Scalar(static_cast<long>(k));
  std::vector<Symbol> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = static_cast<Symbol>(i);

  Matrix iid(k, k), cyc(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) iid(i, j) = u;
    cyc(i, (i + 1) % k) = 1;
  }
  out.push_back({"iid", FsmSource(a, labels, Vector(k, u), iid)});
  out.push_back({"periodic", FsmSource(a, labels, Vector(k, u), cyc)});

  // Half iid over the alphabet, half a loop on the first letter.
  Matrix mix(k + 1, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) mix(i, j) = u;
  }
  mix(k, k) = 1;
  Vector init(k + 1, u * Scalar::ratio(1, 2));
  init[k] = Scalar::ratio(1, 2);
  std::vector<Symbol> mlabels = labels;
  mlabels.push_back(0);
  out.push_back({"mixture", FsmSource(a, mlabels, init, mix)});
  return out;
}

IdentityReport check_qs_mean_identity(const FsmChannel& ch, const FsmSource& src,
                                      std::size_t depth) {
  if (!is_ergodic(src).ergodic) throw PreconditionError("source is not ergodic");
  if (!is_recurrent(src, depth).holds) throw PreconditionError("source is not recurrent");
  if (!is_channel_recurrent_wrt(ch, src, depth).holds) {
    throw PreconditionError("channel is not recurrent with respect to the source");
  }
  if (!is_channel_ergodic_wrt(ch, src).ergodic) {
    throw PreconditionError("channel is not ergodic with respect to the source");
  }
  FsmSource mean = stationary_mean(src);
  ConditionalKernelTable of_mean = quasi_stationary_mean(mean, ch, depth);
  ConditionalKernelTable of_src = conditional_table(hookup_stationary_mean(src, ch), mean, depth);
  IdentityReport r;
  if (of_mean.flags != of_src.flags) {
    r.passed = false;
    r.notes.push_back("flag sets differ");
  }
  for (const auto& [key, value] : of_mean.entries) {
    auto other = of_src.entry(key.first, key.second);
    if (!other || !(*other == value)) {
      r.passed = false;
      r.notes.push_back("entry (" + ch.in_alphabet().format(key.first) + ", " +
                        ch.out_alphabet().format(key.second) + ") differs");
      break;
    }
  }
  return r;
}

IdentityReport check_qs_mean_singularity(const FsmChannel& ch, const FsmSource& a,
                                         const FsmSource& b, std::size_t depth) {
  auto top_layer = [depth](const std::vector<Word>& words) {
    std::set<Word> out;
    for (const auto& w : words) {
      if (w.size() == depth) out.insert(w);
    }
    return out;
  };
  std::set<Word> sa = top_layer(support(stationary_mean(a), depth));
  std::set<Word> sb = top_layer(support(stationary_mean(b), depth));
  for (const auto& w : sa) {
    if (sb.count(w)) {
      throw PreconditionError("stationary means share the word " + a.alphabet().format(w));
    }
  }
  std::set<Word> ja = top_layer(support(hookup_stationary_mean(a, ch).source, depth));
  std::set<Word> jb = top_layer(support(hookup_stationary_mean(b, ch).source, depth));
  IdentityReport r;
  for (const auto& z : ja) {
    if (jb.count(z)) {
      r.passed = false;
      r.notes.push_back("rectangle supports intersect");
      break;
    }
  }
  return r;
}

}  // namespace ams
