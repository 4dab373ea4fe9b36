#include "ams/catalog.hpp"

namespace ams::catalog {

namespace {

constexpr Symbol kA = 0;
constexpr Symbol kB = 1;

Scalar half() { return Scalar::ratio(1, 2); }

// Single-state channel from a function (a, b) -> probability.
template <class F>
FsmChannel memoryless(F prob) {
  std::vector<Scalar> k(4);
  for (Symbol a = 0; a < 2; ++a) {
    for (Symbol b = 0; b < 2; ++b) k[a * 2 + b] = prob(a, b);
  }
  return FsmChannel(binary(), binary(), {Scalar(1)}, std::move(k), {"q"});
}

}  // namespace

Alphabet binary() { return Alphabet({"a", "b"}); }

FsmSource s1_periodic() {
  return FsmSource(binary(), {kA, kB}, {1, 0}, Matrix::from_rows({{0, 1}, {1, 0}}), {"s0", "s1"});
}

FsmSource s2_absorbing() {
  return FsmSource(binary(), {kA, kB}, {1, 0}, Matrix::from_rows({{0, 1}, {0, 1}}), {"t", "r"});
}

FsmSource s3_iid() { return iid(half()); }

FsmSource s3_split() {
  Scalar q = Scalar::ratio(1, 4);
  Matrix p = Matrix::from_rows({{q, q, half()}, {q, q, half()}, {q, q, half()}});
  return FsmSource(binary(), {kA, kA, kB}, {q, q, half()}, p, {"a1", "a2", "b"});
}

FsmSource iid(const Scalar& p_a) {
  Scalar p_b = Scalar(1) - p_a;
  return FsmSource(binary(), {kA, kB}, {p_a, p_b}, Matrix::from_rows({{p_a, p_b}, {p_a, p_b}}),
                   {"a", "b"});
}

FsmSource point_mass(Symbol sym) {
  return FsmSource(binary(), {sym}, {1}, Matrix::from_rows({{1}}), {"c"});
}

FsmSource two_loops() {
  return FsmSource(binary(), {kA, kB}, {half(), half()}, Matrix::from_rows({{1, 0}, {0, 1}}),
                   {"la", "lb"});
}

FsmSource reducible_mixture() {
  Scalar q = Scalar::ratio(1, 4);
  Matrix p = Matrix::from_rows({{half(), half(), 0}, {half(), half(), 0}, {0, 0, 1}});
  return FsmSource(binary(), {kA, kB, kB}, {q, q, half()}, p, {"ca", "cb", "lb"});
}

FsmSource transient_fork() {
  Matrix p = Matrix::from_rows({{0, half(), Scalar::ratio(1, 4), Scalar::ratio(1, 4)},
                                {0, 1, 0, 0},
                                {0, 0, half(), half()},
                                {0, 0, half(), half()}});
  return FsmSource(binary(), {kA, kB, kA, kB}, {1, 0, 0, 0}, p, {"t", "lb", "ca", "cb"});
}

FsmChannel bsc(const Scalar& p) {
  return memoryless([&](Symbol a, Symbol b) { return a == b ? Scalar(1) - p : p; });
}

FsmChannel copy() {
  return memoryless([](Symbol a, Symbol b) { return Scalar(a == b ? 1 : 0); });
}

FsmChannel transient_copy() {
  // States q0 (start), q1 (copy). Index ((q*2 + a)*2 + b)*2 + q'.
  std::vector<Scalar> k(16);
  for (Symbol a = 0; a < 2; ++a) {
    k[((0 * 2 + a) * 2 + kA) * 2 + 1] = 1;
    k[((1 * 2 + a) * 2 + a) * 2 + 1] = 1;
  }
  return FsmChannel(binary(), binary(), {1, 0}, std::move(k), {"q0", "q1"});
}

FsmChannel coin_latch() {
  // States: start, qa, qb.
  std::vector<Scalar> k(2 * 2 * 3 * 3);
  auto at = [](std::size_t q, Symbol a, Symbol b, std::size_t q2) {
    return ((q * 2 + a) * 2 + b) * 3 + q2;
  };
  for (Symbol a = 0; a < 2; ++a) {
    k[at(0, a, kA, 1)] = half();
    k[at(0, a, kB, 2)] = half();
    k[at(1, a, kA, 1)] = 1;
    k[at(2, a, kB, 2)] = 1;
  }
  return FsmChannel(binary(), binary(), {1, 0, 0}, std::move(k), {"start", "qa", "qb"});
}

}  // namespace ams::catalog
