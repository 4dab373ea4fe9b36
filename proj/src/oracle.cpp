#include "ams/oracle.hpp"

#include <cmath>
#include <functional>

#include "ams/errors.hpp"
#include "ams/random.hpp"

namespace ams::oracle {

namespace {

void path_budget(std::size_t states, std::size_t length) {
  double count = std::pow(static_cast<double>(states), static_cast<double>(length));
  if (count > kPathBudget) {
    throw BudgetExceeded("path enumeration over " + std::to_string(states) + "^" +
                         std::to_string(length) + " sequences exceeds the budget");
  }
}

// Calls fn on every index sequence of the given length over [0, n).
void odometer(std::size_t n, std::size_t length, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> x(length, 0);
  while (true) {
    fn(x);
    std::size_t i = length;
    while (i > 0 && ++x[i - 1] == n) x[--i] = 0;
    if (i == 0) return;
  }
}

bool zero(const Scalar& x) { return x.exact() ? sgn(x.rational()) == 0 : x.to_double() == 0.0; }

// Law of (source state, channel state) at the start of tick i, i = 0..n-1,
// summed over i.
std::vector<Scalar> summed_pair_law(const FsmSource& src, const FsmChannel& ch, std::size_t n) {
  const std::size_t ns = src.num_states();
  const std::size_t nq = ch.num_states();
  const std::size_t nb = ch.out_alphabet().size();
  std::vector<Scalar> d(ns * nq), acc(ns * nq);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t q = 0; q < nq; ++q) d[s * nq + q] = src.init()[s] * ch.init()[q];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t z = 0; z < d.size(); ++z) acc[z] += d[z];
    if (i + 1 == n) break;
    std::vector<Scalar> next(ns * nq);
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t q = 0; q < nq; ++q) {
        const Scalar& m = d[s * nq + q];
        if (zero(m)) continue;
        // Channel step on the symbol emitted at s, outputs summed out.
        std::vector<Scalar> move(nq);
        for (Symbol b = 0; b < nb; ++b) {
          for (std::size_t q2 = 0; q2 < nq; ++q2) move[q2] += ch.k(q, src.label(s), b, q2);
        }
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
          const Scalar& p = src.trans()(s, s2);
          if (zero(p)) continue;
          Scalar mp = m * p;
          for (std::size_t q2 = 0; q2 < nq; ++q2) next[s2 * nq + q2] += mp * move[q2];
        }
      }
    }
    d = std::move(next);
  }
  return acc;
}

// Joint probability of input w and output prefix v starting from the
// (unnormalized) pair law d.
Scalar rectangle_from(const FsmSource& src, const FsmChannel& ch, const std::vector<Scalar>& d,
                      const Word& w, const Word& v) {
  const std::size_t ns = src.num_states();
  const std::size_t nq = ch.num_states();
  const std::size_t nb = ch.out_alphabet().size();
  std::vector<Scalar> f(ns * nq);
  for (std::size_t s = 0; s < ns; ++s) {
    if (src.label(s) != w[0]) continue;
    for (std::size_t q = 0; q < nq; ++q) f[s * nq + q] = d[s * nq + q];
  }
  for (std::size_t t = 0; t < w.size(); ++t) {
    // Channel consumes w[t] and emits; then the source moves on.
    std::vector<Scalar> g(ns * nq);
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t q = 0; q < nq; ++q) {
        const Scalar& m = f[s * nq + q];
        if (zero(m)) continue;
        for (Symbol b = 0; b < nb; ++b) {
          if (t < v.size() && b != v[t]) continue;
          for (std::size_t q2 = 0; q2 < nq; ++q2) g[s * nq + q2] += m * ch.k(q, w[t], b, q2);
        }
      }
    }
    if (t + 1 == w.size()) {
      Scalar total;
      for (const auto& x : g) total += x;
      return total;
    }
    std::vector<Scalar> h(ns * nq);
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t s2 = 0; s2 < ns; ++s2) {
        if (src.label(s2) != w[t + 1]) continue;
        const Scalar& p = src.trans()(s, s2);
        if (zero(p)) continue;
        for (std::size_t q = 0; q < nq; ++q) h[s2 * nq + q] += g[s * nq + q] * p;
      }
    }
    f = std::move(h);
  }
  return Scalar();
}

Scalar source_word_prob(const FsmSource& src, const Word& w) {
  const std::size_t ns = src.num_states();
  std::vector<Scalar> f(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    if (src.label(s) == w[0]) f[s] = src.init()[s];
  }
  for (std::size_t t = 1; t < w.size(); ++t) {
    std::vector<Scalar> g(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      if (zero(f[s])) continue;
      for (std::size_t s2 = 0; s2 < ns; ++s2) {
        if (src.label(s2) == w[t]) g[s2] += f[s] * src.trans()(s, s2);
      }
    }
    f = std::move(g);
  }
  Scalar total;
  for (const auto& x : f) total += x;
  return total;
}

}  // namespace

Scalar brute_force_event_prob(const FsmSource& src, const CylinderEvent& e) {
  require_same(src.alphabet(), e.alphabet(), "brute_force_event_prob");
  const std::size_t n = src.num_states();
  const std::size_t depth = e.depth();
  path_budget(n, depth);
  Scalar total;
  if (e.is_empty()) return total;
  Word word(depth);
  odometer(n, depth, [&](const std::vector<std::size_t>& path) {
    for (std::size_t t = 0; t < depth; ++t) word[t] = src.label(path[t]);
    if (!e.contains(word)) return;
    Scalar p = src.init()[path[0]];
    for (std::size_t t = 1; t < depth && !zero(p); ++t) p *= src.trans()(path[t - 1], path[t]);
    total += p;
  });
  return total;
}

Scalar cesaro_partial(const FsmSource& src, const CylinderEvent& e, std::size_t n) {
  require_same(src.alphabet(), e.alphabet(), "cesaro_partial");
  if (n == 0) throw InvariantViolation("cesaro_partial needs n >= 1");
  const std::size_t ns = src.num_states();
  // The event probability is linear in the initial law, so sum the laws.
  std::vector<Scalar> d(src.init().begin(), src.init().end()), acc(ns);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 0; s < ns; ++s) acc[s] += d[s];
    if (k + 1 == n) break;
    std::vector<Scalar> next(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      if (zero(d[s])) continue;
      for (std::size_t s2 = 0; s2 < ns; ++s2) next[s2] += d[s] * src.trans()(s, s2);
    }
    d = std::move(next);
  }
  Vector mean(ns);
  for (std::size_t s = 0; s < ns; ++s) mean[s] = acc[s] / Scalar(static_cast<long>(n));
  // Averaged laws sum to one only up to rounding in float mode; the model
  // constructor is bypassed by evaluating with a local forward pass.
  Scalar total;
  for (const auto& w : e.words()) {
    std::vector<Scalar> f(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      if (src.label(s) == w[0]) f[s] = mean[s];
    }
    for (std::size_t t = 1; t < w.size(); ++t) {
      std::vector<Scalar> g(ns);
      for (std::size_t s = 0; s < ns; ++s) {
        if (zero(f[s])) continue;
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
          if (src.label(s2) == w[t]) g[s2] += f[s] * src.trans()(s, s2);
        }
      }
      f = std::move(g);
    }
    for (const auto& x : f) total += x;
  }
  return total;
}

Scalar brute_force_channel_prob(const FsmChannel& ch, const Word& w, const Word& v) {
  if (w.size() < v.size()) throw PreconditionError("channel evaluation needs |w| >= |v|");
  const std::size_t nq = ch.num_states();
  const std::size_t m = v.size();
  path_budget(nq, m + 1);
  Scalar total;
  odometer(nq, m + 1, [&](const std::vector<std::size_t>& q) {
    Scalar p = ch.init()[q[0]];
    for (std::size_t t = 0; t < m && !zero(p); ++t) p *= ch.k(q[t], w[t], v[t], q[t + 1]);
    total += p;
  });
  return total;
}

Scalar brute_force_rectangle(const FsmSource& src, const FsmChannel& ch, const Word& w,
                             const Word& v, std::size_t shift) {
  if (w.size() != v.size()) throw PreconditionError("rectangle sides must have equal length");
  const std::size_t len = shift + w.size();
  const std::size_t ns = src.num_states();
  const std::size_t nq = ch.num_states();
  const std::size_t nb = ch.out_alphabet().size();
  path_budget(ns * nq * nb, len);
  Scalar total;
  odometer(ns, len, [&](const std::vector<std::size_t>& s) {
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (src.label(s[shift + t]) != w[t]) return;
    }
    Scalar ps = src.init()[s[0]];
    for (std::size_t t = 1; t < len && !zero(ps); ++t) ps *= src.trans()(s[t - 1], s[t]);
    if (zero(ps)) return;
    // Channel paths: states q_0..q_len and outputs b_0..b_{len-1}; outputs
    // before the window are free.
    odometer(nq, len + 1, [&](const std::vector<std::size_t>& q) {
      Scalar pq = ch.init()[q[0]];
      for (std::size_t t = 0; t < len && !zero(pq); ++t) {
        Symbol a = src.label(s[t]);
        if (t >= shift) {
          pq *= ch.k(q[t], a, v[t - shift], q[t + 1]);
        } else {
          Scalar step;
          for (Symbol b = 0; b < nb; ++b) step += ch.k(q[t], a, b, q[t + 1]);
          pq *= step;
        }
      }
      total += ps * pq;
    });
  });
  return total;
}

ConditionalKernelTable nu_cesaro_partial(const FsmSource& src, const FsmChannel& ch,
                                         std::size_t n, std::size_t depth) {
  require_same(src.alphabet(), ch.in_alphabet(), "nu_cesaro_partial");
  if (n == 0) throw InvariantViolation("nu_cesaro_partial needs n >= 1");
  std::vector<Scalar> d = summed_pair_law(src, ch, n);
  const Scalar inv_n = Scalar(1) / Scalar(static_cast<long>(n));
  for (auto& x : d) x *= inv_n;
  ConditionalKernelTable table{src.alphabet(), ch.out_alphabet(), depth, {}, {}};
  const std::size_t nb = ch.out_alphabet().size();
  for (std::size_t m = 1; m <= depth; ++m) {
    for_each_word(src.alphabet().size(), m, [&](const Word& w) {
      Scalar mass = source_word_prob(src, w);
      if (zero(mass)) {
        table.flags.insert(w);
        return;
      }
      for (std::size_t k = 0; k <= m; ++k) {
        auto add = [&](const Word& v) {
          table.entries.emplace(std::make_pair(w, v), rectangle_from(src, ch, d, w, v) / mass);
        };
        if (k == 0) {
          add(Word{});
        } else {
          for_each_word(nb, k, add);
        }
      }
    });
  }
  return table;
}

Scalar kernel_cesaro_partial(const FsmChannel& ch, const LassoInput& x, const Word& v,
                             std::size_t n) {
  if (x.cycle.empty()) throw InvariantViolation("lasso input needs a nonempty cycle");
  if (n == 0) throw InvariantViolation("kernel_cesaro_partial needs n >= 1");
  const std::size_t nq = ch.num_states();
  const std::size_t nb = ch.out_alphabet().size();
  Word input = x.prefix(n + v.size());
  std::vector<Scalar> e(ch.init().begin(), ch.init().end());
  Scalar total;
  for (std::size_t k = 0; k < n; ++k) {
    // nu(x, T^-k [v]) from the channel-state law e at tick k.
    std::vector<Scalar> f = e;
    for (std::size_t t = 0; t < v.size(); ++t) {
      std::vector<Scalar> g(nq);
      for (std::size_t q = 0; q < nq; ++q) {
        if (zero(f[q])) continue;
        for (std::size_t q2 = 0; q2 < nq; ++q2) g[q2] += f[q] * ch.k(q, input[k + t], v[t], q2);
      }
      f = std::move(g);
    }
    for (const auto& y : f) total += y;
    std::vector<Scalar> next(nq);
    for (std::size_t q = 0; q < nq; ++q) {
      if (zero(e[q])) continue;
      for (Symbol b = 0; b < nb; ++b) {
        for (std::size_t q2 = 0; q2 < nq; ++q2) next[q2] += e[q] * ch.k(q, input[k], b, q2);
      }
    }
    e = std::move(next);
  }
  return total / Scalar(static_cast<long>(n));
}

double EmpiricalTable::frequency(const Word& w) const {
  auto it = counts.find(w);
  if (it == counts.end() || samples == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(samples);
}

double EmpiricalTable::half_width(const Word& w) const {
  double p = frequency(w);
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

namespace {

struct Sampler {
  std::vector<double> init_cum;
  std::vector<std::vector<double>> row_cum;
  std::vector<Symbol> labels;

  explicit Sampler(const FsmSource& src) : labels(src.labels()) {
    const std::size_t n = src.num_states();
    auto cumulative = [&](auto get) {
      std::vector<double> c(n);
      double run = 0;
      for (std::size_t j = 0; j < n; ++j) c[j] = run += get(j);
      return c;
    };
    init_cum = cumulative([&](std::size_t j) { return src.init()[j].to_double(); });
    for (std::size_t i = 0; i < n; ++i) {
      row_cum.push_back(cumulative([&](std::size_t j) { return src.trans()(i, j).to_double(); }));
    }
  }

  static std::size_t pick(const std::vector<double>& cum, double u) {
    u *= cum.back();
    for (std::size_t j = 0; j < cum.size(); ++j) {
      if (u < cum[j]) return j;
    }
    return cum.size() - 1;
  }

  Word trajectory(SplitMix64& rng, std::size_t horizon) const {
    Word w(horizon);
    std::size_t s = pick(init_cum, rng.uniform());
    for (std::size_t t = 0; t < horizon; ++t) {
      if (t > 0) s = pick(row_cum[s], rng.uniform());
      w[t] = labels[s];
    }
    return w;
  }
};

void check_sampling(std::size_t horizon, std::size_t samples) {
  if (horizon == 0 || samples == 0) throw InvariantViolation("monte_carlo needs h, n >= 1");
}

}  // namespace

EmpiricalTable monte_carlo_serial(const FsmSource& src, std::size_t horizon, std::size_t samples,
                                  std::uint64_t seed) {
  check_sampling(horizon, samples);
  Sampler sampler(src);
  EmpiricalTable table{horizon, samples, seed, {}};
  for (std::size_t i = 0; i < samples; ++i) {
    SplitMix64 rng = SplitMix64::derive(seed, i);
    ++table.counts[sampler.trajectory(rng, horizon)];
  }
  return table;
}

EmpiricalTable monte_carlo(const FsmSource& src, std::size_t horizon, std::size_t samples,
                           std::uint64_t seed) {
  check_sampling(horizon, samples);
  Sampler sampler(src);
  EmpiricalTable table{horizon, samples, seed, {}};
  constexpr std::size_t kBlock = 1024;
  const long blocks = static_cast<long>((samples + kBlock - 1) / kBlock);
#pragma omp parallel
  {
    std::map<Word, std::uint64_t> local;
#pragma omp for schedule(static)
    for (long b = 0; b < blocks; ++b) {
      std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      std::size_t hi = std::min(samples, lo + kBlock);
      for (std::size_t i = lo; i < hi; ++i) {
        SplitMix64 rng = SplitMix64::derive(seed, i);
        ++local[sampler.trajectory(rng, horizon)];
      }
    }
#pragma omp critical(ams_monte_carlo_merge)
    for (const auto& [w, c] : local) table.counts[w] += c;
  }
  return table;
}

}  // namespace ams::oracle
