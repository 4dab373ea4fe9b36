#include "ams/random.hpp"

#include <algorithm>
#include <numeric>

#include "ams/errors.hpp"

namespace ams {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

SplitMix64 SplitMix64::derive(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)));
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw InvariantViolation("below(0)");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

Vector random_distribution(SplitMix64& rng, std::size_t n, const RowOptions& opt) {
  std::vector<long> w(n, 0);
  for (auto& x : w) {
    x = rng.bernoulli(opt.zero_prob) ? 0 : 1 + static_cast<long>(rng.below(opt.max_weight));
  }
  if (std::all_of(w.begin(), w.end(), [](long x) { return x == 0; })) {
    w[rng.below(n)] = 1 + static_cast<long>(rng.below(opt.max_weight));
  }
  long total = std::accumulate(w.begin(), w.end(), 0L);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Scalar::ratio(w[i], total);
  return v;
}

Matrix random_stochastic(SplitMix64& rng, std::size_t n, const RowOptions& opt) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(random_distribution(rng, n, opt));
  return Matrix::from_rows(rows);
}

namespace {

// Random distribution restricted to the listed columns.
Vector spread(SplitMix64& rng, std::size_t n, const std::vector<std::size_t>& cols,
              const RowOptions& opt) {
  Vector part = random_distribution(rng, cols.size(), opt);
  Vector row(n);
  for (std::size_t i = 0; i < cols.size(); ++i) row[cols[i]] = part[i];
  return row;
}

}  // namespace

Matrix random_structured_matrix(SplitMix64& rng, std::size_t n, MatrixShape shape) {
  RowOptions opt{0.2, 4};
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  Matrix p(n, n);
  auto set_row = [&](std::size_t i, const Vector& row) {
    for (std::size_t j = 0; j < n; ++j) p(perm[i], perm[j]) = row[j];
  };
  switch (shape) {
    case MatrixShape::generic:
      return random_stochastic(rng, n, opt);
    case MatrixShape::permutation: {
      std::vector<std::size_t> image(n);
      std::iota(image.begin(), image.end(), 0);
      for (std::size_t i = n; i > 1; --i) std::swap(image[i - 1], image[rng.below(i)]);
      for (std::size_t i = 0; i < n; ++i) p(i, image[i]) = 1;
      return p;
    }
    case MatrixShape::reducible: {
      if (n < 3) return random_structured_matrix(rng, n, MatrixShape::permutation);
      // Positions (before permuting): [0, t) transient, then blocks A and B.
      std::size_t t = 1 + rng.below(n - 2);
      std::size_t a_end = t + 1 + rng.below(n - t - 1);
      std::vector<std::size_t> all(n), blk_a, blk_b;
      std::iota(all.begin(), all.end(), 0);
      for (std::size_t j = t; j < a_end; ++j) blk_a.push_back(j);
      for (std::size_t j = a_end; j < n; ++j) blk_b.push_back(j);
      for (std::size_t i = 0; i < t; ++i) {
        Vector row = spread(rng, n, all, opt);
        // Keep some leakage out of the transient block.
        row[blk_a.front()] += Scalar(1);
        row[blk_b.front()] += Scalar(1);
        Scalar total = sum(row);
        for (auto& x : row) x = x / total;
        set_row(i, row);
      }
      for (std::size_t i = t; i < n; ++i) {
        const auto& blk = i < a_end ? blk_a : blk_b;
        set_row(i, spread(rng, n, blk, opt));
      }
      return p;
    }
    case MatrixShape::periodic: {
      std::size_t d = n >= 3 && rng.bernoulli(0.5) ? 3 : 2;
      if (n < d) d = n;
      // Cyclic class of position j is j mod d; class c moves to c+1 mod d.
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j) {
          if (j % d == (i + 1) % d) cols.push_back(j);
        }
        set_row(i, spread(rng, n, cols, opt));
      }
      return p;
    }
  }
  return p;
}

Alphabet letters(std::size_t n) {
  std::vector<std::string> t;
  for (std::size_t i = 0; i < n; ++i) t.emplace_back(1, static_cast<char>('a' + i));
  return Alphabet(std::move(t));
}

FsmSource random_source_over(SplitMix64& rng, const Alphabet& a, std::size_t states,
                             const RowOptions& rows) {
  std::vector<Symbol> labels(states);
  for (auto& l : labels) l = static_cast<Symbol>(rng.below(a.size()));
  Vector init = random_distribution(rng, states, rows);
  Matrix trans = random_stochastic(rng, states, rows);
  return FsmSource(a, std::move(labels), std::move(init), std::move(trans));
}

FsmSource random_source(SplitMix64& rng, const SourceOptions& opt) {
  std::size_t states = 1 + rng.below(opt.max_states);
  std::size_t sigma = opt.min_alphabet + rng.below(opt.max_alphabet - opt.min_alphabet + 1);
  return random_source_over(rng, letters(sigma), states, opt.rows);
}

FsmSource random_stationary_source(SplitMix64& rng, const Alphabet& a, std::size_t states,
                                   const RowOptions& rows) {
  return stationary_mean(random_source_over(rng, a, states, rows));
}

FsmSource random_recurrent_source(SplitMix64& rng, const Alphabet& a, std::size_t states,
                                  const RowOptions& rows) {
  FsmSource src = random_source_over(rng, a, states, rows);
  const auto& d = src.decomposition();
  std::vector<std::size_t> recurrent;
  for (std::size_t s = 0; s < states; ++s) {
    if (d.is_closed_state(s)) recurrent.push_back(s);
  }
  Vector part = random_distribution(rng, recurrent.size(), rows);
  Vector init(states);
  for (std::size_t i = 0; i < recurrent.size(); ++i) init[recurrent[i]] = part[i];
  return src.with_init(std::move(init));
}

namespace {

std::vector<Scalar> kernel_from_rows(const std::vector<Vector>& rows) {
  std::vector<Scalar> k;
  for (const auto& r : rows) k.insert(k.end(), r.begin(), r.end());
  return k;
}

}  // namespace

FsmChannel random_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out,
                          std::size_t states, const RowOptions& rows) {
  std::vector<Vector> kr;
  for (std::size_t q = 0; q < states; ++q) {
    for (Symbol a = 0; a < in.size(); ++a) kr.push_back(random_distribution(rng, out.size() * states, rows));
  }
  return FsmChannel(in, out, random_distribution(rng, states, rows), kernel_from_rows(kr));
}

FsmChannel random_dense_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out,
                                std::size_t states) {
  const std::size_t m = out.size() * states;
  const Scalar half = Scalar::ratio(1, 2);
  const Scalar uniform = Scalar::ratio(1, static_cast<long>(m));
  std::vector<Vector> kr;
  for (std::size_t q = 0; q < states; ++q) {
    for (Symbol a = 0; a < in.size(); ++a) {
      Vector r = random_distribution(rng, m, RowOptions{0.0, 4});
      for (auto& x : r) x = half * uniform + half * x;
      kr.push_back(std::move(r));
    }
  }
  return FsmChannel(in, out, random_distribution(rng, states, RowOptions{0.0, 4}),
                    kernel_from_rows(kr));
}

FsmChannel random_stationary_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out,
                                     std::size_t states, const RowOptions& rows) {
  Matrix r = random_stochastic(rng, states, rows);
  Vector rho = random_distribution(rng, states, rows) * cesaro_limit(r);
  const std::size_t nb = out.size();
  std::vector<Scalar> kernel(states * in.size() * nb * states);
  for (std::size_t q = 0; q < states; ++q) {
    for (std::size_t q2 = 0; q2 < states; ++q2) {
      for (Symbol a = 0; a < in.size(); ++a) {
        Vector g = random_distribution(rng, nb, rows);
        for (Symbol b = 0; b < nb; ++b) {
          kernel[((q * in.size() + a) * nb + b) * states + q2] = r(q, q2) * g[b];
        }
      }
    }
  }
  return FsmChannel(in, out, std::move(rho), std::move(kernel));
}

FsmChannel random_markov_channel(SplitMix64& rng, const Alphabet& in, const Alphabet& out,
                                 std::size_t states, const RowOptions& rows) {
  std::vector<Symbol> labels(states);
  for (std::size_t z = 0; z < states; ++z) {
    labels[z] = static_cast<Symbol>(z < out.size() ? z : rng.below(out.size()));
  }
  std::vector<Matrix> per_symbol;
  for (Symbol a = 0; a < in.size(); ++a) per_symbol.push_back(random_stochastic(rng, states, rows));
  return markov_channel(in, out, per_symbol, labels, random_distribution(rng, states, rows));
}

Word random_word(SplitMix64& rng, std::size_t alphabet_size, std::size_t length) {
  Word w(length);
  for (auto& s : w) s = static_cast<Symbol>(rng.below(alphabet_size));
  return w;
}

LassoInput random_lasso(SplitMix64& rng, const Alphabet& a, std::size_t max_stem,
                        std::size_t max_cycle) {
  LassoInput x;
  x.stem = random_word(rng, a.size(), rng.below(max_stem + 1));
  x.cycle = random_word(rng, a.size(), 1 + rng.below(max_cycle));
  return x;
}

}  // namespace ams
