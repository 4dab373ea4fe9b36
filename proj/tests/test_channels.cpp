#include "doctest.h"

#include "ams/catalog.hpp"
#include "ams/errors.hpp"
#include "ams/oracle.hpp"
#include "ams/random.hpp"

using namespace ams;
using namespace ams::catalog;

namespace {

Word w(const char* s) { return binary().parse(s); }

Scalar r(long p, long q) { return Scalar::ratio(p, q); }

Scalar rect(const JointSource& j, const char* in, const char* out) {
  RectEvent e(CylinderEvent::singleton(j.input, j.input.parse(in)),
              CylinderEvent::singleton(j.output, j.output.parse(out)));
  return event_prob(j.source, e.joint());
}

bool prefix_of(const Word& v, const Word& x) {
  return v.size() <= x.size() && std::equal(v.begin(), v.end(), x.begin());
}

// Table of the noiseless copy channel: entry(w, v) = [v prefixes w].
void check_copy_table(const ConditionalKernelTable& t) {
  CHECK(t.flags.empty());
  for (const auto& [key, value] : t.entries) {
    CHECK(value == Scalar(prefix_of(key.second, key.first) ? 1 : 0));
  }
}

}  // namespace

TEST_CASE("channel_cyl_prob examples") {
  FsmChannel b = bsc(r(1, 4));
  CHECK(channel_cyl_prob(b, w("a"), w("a")) == r(3, 4));
  CHECK(channel_cyl_prob(b, w("ab"), w("ab")) == r(9, 16));
  for (std::size_t m = 1; m <= 3; ++m) {
    for_each_word(2, m, [&](const Word& x) {
      for (std::size_t k = 0; k <= m; ++k) {
        for_each_word(2, k, [&](const Word& v) {
          CHECK(channel_cyl_prob(copy(), x, v) == Scalar(prefix_of(v, x) ? 1 : 0));
        });
      }
    });
  }
  CHECK_THROWS_AS(channel_cyl_prob(b, w("a"), w("ab")), PreconditionError);
  CHECK_THROWS_AS(channel_cyl_prob(b, Word{3}, Word{}), AlphabetMismatch);
}

TEST_CASE("channel evaluation agrees with path enumeration") {
  SplitMix64 rng(17);
  Alphabet a = letters(2), b = letters(3);
  for (int trial = 0; trial < 20; ++trial) {
    FsmChannel ch = random_channel(rng, a, b, 1 + rng.below(3));
    std::size_t m = 1 + rng.below(4);
    Word x = random_word(rng, 2, m);
    Word v = random_word(rng, 3, rng.below(m + 1));
    CHECK(channel_cyl_prob(ch, x, v) == oracle::brute_force_channel_prob(ch, x, v));
  }
}

TEST_CASE("channel_output_measure examples") {
  FsmSource s = channel_output_measure(copy(), LassoInput{{}, w("ab")});
  CHECK(are_equivalent(s, s1_periodic()).equal);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    LassoInput x = random_lasso(rng, binary(), 2, 3);
    FsmSource ident = channel_output_measure(bsc(0), x);
    CHECK(cyl_prob(ident, x.prefix(6)) == Scalar(1));
    FsmSource noise = channel_output_measure(bsc(r(1, 2)), x);
    CHECK(are_equivalent(noise, s3_iid()).equal);
  }
  CHECK_THROWS_AS(channel_output_measure(copy(), LassoInput{w("a"), {}}), InvariantViolation);
}

TEST_CASE("hookup examples") {
  JointSource j = hookup(s3_iid(), bsc(r(1, 4)));
  CHECK(rect(j, "a", "a") == r(3, 8));
  SplitMix64 rng(3);
  FsmSource src = random_source_over(rng, binary(), 3);
  JointSource c = hookup(src, copy());
  for_each_word(2, 3, [&](const Word& x) {
    RectEvent e(CylinderEvent::singleton(binary(), x), CylinderEvent::singleton(binary(), x));
    CHECK(event_prob(c.source, e.joint()) == cyl_prob(src, x));
  });
  JointSource k = hookup(s1_periodic(), bsc(r(1, 10)));
  // Oracle: joint-path enumeration gives 1 * 0.9 * 0.9.
  CHECK(oracle::brute_force_rectangle(s1_periodic(), bsc(r(1, 10)), w("ab"), w("ab")) ==
        r(81, 100));
  CHECK(rect(k, "ab", "ab") == r(81, 100));
}

TEST_CASE("hookup alphabet mismatch") {
  SplitMix64 rng(1);
  FsmChannel ch = random_channel(rng, letters(3), binary(), 1);
  CHECK_THROWS_AS(hookup(s3_iid(), ch), AlphabetMismatch);
}

TEST_CASE("hookup rectangles agree with path enumeration") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    Alphabet a = letters(1 + rng.below(2)), b = letters(1 + rng.below(2));
    FsmSource src = random_source_over(rng, a, 1 + rng.below(3));
    FsmChannel ch = random_channel(rng, a, b, 1 + rng.below(2));
    JointSource j = hookup(src, ch);
    std::size_t m = 1 + rng.below(3);
    Word x = random_word(rng, a.size(), m), y = random_word(rng, b.size(), m);
    RectEvent e(CylinderEvent::singleton(a, x), CylinderEvent::singleton(b, y));
    CHECK(event_prob(j.source, e.joint()) == oracle::brute_force_rectangle(src, ch, x, y));
  }
}

TEST_CASE("output_marginal examples") {
  for (Scalar p : {r(0, 1), r(1, 3), r(9, 10)}) {
    CHECK(are_equivalent(output_marginal(hookup(s3_iid(), bsc(p))), s3_iid()).equal);
  }
  SplitMix64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    FsmSource src = random_source_over(rng, binary(), 1 + rng.below(4));
    CHECK(are_equivalent(output_marginal(hookup(src, copy())), src).equal);
    FsmChannel ch = random_channel(rng, binary(), letters(3), 2);
    CHECK(are_equivalent(input_marginal(hookup(src, ch)), src).equal);
  }
  FsmSource y = output_marginal(hookup(s1_periodic(), bsc(r(1, 10))));
  CHECK(cyl_prob(y, w("a")) == r(9, 10));
}

TEST_CASE("cascade examples") {
  FsmChannel c = cascade(bsc(r(1, 10)), bsc(r(1, 5)));
  CHECK(channel_cyl_prob(c, w("a"), w("b")) == r(26, 100));
  CHECK_FALSE(channel_difference(c, bsc(r(26, 100)), 3).has_value());

  SplitMix64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    FsmChannel ch = random_channel(rng, binary(), binary(), 1 + rng.below(3));
    CHECK_FALSE(channel_difference(cascade(copy(), ch), ch, 4).has_value());
    CHECK_FALSE(channel_difference(cascade(ch, copy()), ch, 4).has_value());
    // Total noise first: depth-1 output equals ch under a uniform symbol.
    FsmChannel n = cascade(bsc(r(1, 2)), ch);
    for (Symbol out = 0; out < 2; ++out) {
      Scalar expect = (channel_cyl_prob(ch, w("a"), Word{out}) +
                       channel_cyl_prob(ch, w("b"), Word{out})) * r(1, 2);
      CHECK(channel_cyl_prob(n, w("a"), Word{out}) == expect);
      CHECK(channel_cyl_prob(n, w("b"), Word{out}) == expect);
    }
  }
  CHECK_THROWS_AS(cascade(random_channel(rng, binary(), letters(3), 1), copy()),
                  AlphabetMismatch);
}

TEST_CASE("cascade is associative on evaluations") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    FsmChannel c1 = random_channel(rng, binary(), letters(3), 1 + rng.below(2));
    FsmChannel c2 = random_channel(rng, letters(3), binary(), 1 + rng.below(2));
    FsmChannel c3 = random_channel(rng, binary(), binary(), 1 + rng.below(2));
    CHECK_FALSE(channel_difference(cascade(cascade(c1, c2), c3), cascade(c1, cascade(c2, c3)), 4)
                    .has_value());
  }
}

TEST_CASE("markov_channel examples") {
  Matrix id = Matrix::identity(2);
  std::vector<Symbol> labels{0, 1};
  FsmChannel frozen = markov_channel(binary(), binary(), {id, id}, labels, {0, 1});
  for_each_word(2, 4, [&](const Word& x) {
    CHECK(channel_cyl_prob(frozen, x, w("bbbb")) == Scalar(1));
  });
  Matrix m = Matrix::from_rows({{r(1, 3), r(2, 3)}, {r(1, 2), r(1, 2)}});
  FsmChannel blind = markov_channel(binary(), binary(), {m, m}, labels, {1, 0});
  FsmSource driven = output_marginal(hookup(s1_periodic(), blind));
  FsmSource direct(binary(), labels, {1, 0}, m, {});
  // The first output already follows one step of m.
  CHECK(are_equivalent(driven, shifted_source(direct, 1)).equal);
  CHECK_THROWS_AS(markov_channel(binary(), binary(), {id, Matrix::identity(3)}, {0, 1, 1},
                                 {1, 0, 0}),
                  InvariantViolation);
  CHECK_THROWS_AS(markov_channel(binary(), binary(), {id, Matrix::from_rows({{1, 1}, {0, 1}})},
                                 labels, {1, 0}),
                  InvariantViolation);
}

TEST_CASE("nu_i_table examples") {
  SplitMix64 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    FsmChannel ch = random_stationary_channel(rng, binary(), binary(), 2);
    FsmSource src = random_stationary_source(rng, binary(), 2);
    ConditionalKernelTable t0 = nu_i_table(src, ch, 0, 3);
    for (std::size_t i = 1; i <= 5; ++i) CHECK(nu_i_table(src, ch, i, 3) == t0);
    for (const auto& [key, value] : t0.entries) {
      CHECK(value == channel_cyl_prob(ch, key.first, key.second));
    }
    CHECK(table_is_coherent(t0));
  }
  ConditionalKernelTable ct = nu_i_table(s3_iid(), transient_copy(), 1, 3);
  check_copy_table(ct);
  // Oracle: joint-path enumeration with one discarded tick.
  for_each_word(2, 3, [&](const Word& x) {
    for_each_word(2, 3, [&](const Word& v) {
      Scalar joint = oracle::brute_force_rectangle(s3_iid(), transient_copy(), x, v, 1);
      CHECK(joint / cyl_prob(s3_iid(), x) == *ct.entry(x, v));
    });
  });
  CHECK_THROWS_AS(nu_i_table(s1_periodic(), copy(), 1, 2), PreconditionError);
}

TEST_CASE("quasi_stationary_mean examples") {
  SplitMix64 rng(61);
  FsmChannel st = random_stationary_channel(rng, binary(), binary(), 2);
  FsmSource src = random_stationary_source(rng, binary(), 3);
  CHECK(quasi_stationary_mean(src, st, 3) == nu_i_table(src, st, 0, 3));

  ConditionalKernelTable qs = quasi_stationary_mean(s3_iid(), transient_copy(), 3);
  check_copy_table(qs);
  CHECK(qs == nu_i_table(s3_iid(), copy(), 0, 3));
  // Cesaro oracle: the deviation shrinks like 1/n.
  double dev[2];
  std::size_t ns[2] = {128, 256};
  for (int k = 0; k < 2; ++k) {
    ConditionalKernelTable part = oracle::nu_cesaro_partial(
        s3_iid().to_mode(Arith::floating), transient_copy().to_mode(Arith::floating), ns[k], 3);
    dev[k] = 0;
    for (const auto& [key, value] : part.entries) {
      dev[k] = std::max(dev[k], std::abs(value.to_double() - qs.entry(key.first, key.second)->to_double()));
    }
  }
  CHECK(dev[0] > 0);
  CHECK(dev[0] * 128 <= 1.0 + 1e-9);
  CHECK(dev[1] / dev[0] == doctest::Approx(0.5).epsilon(1e-6));

  ConditionalKernelTable b = quasi_stationary_mean(s3_iid(), bsc(r(1, 5)), 2);
  CHECK(b.entry(w("ab"), w("aa")) == r(4, 25));
  CHECK(b.entry(w("ab"), w("a")) == r(4, 5));
  CHECK(table_is_coherent(b));
  CHECK_THROWS_AS(quasi_stationary_mean(s2_absorbing(), copy(), 2), PreconditionError);
}

TEST_CASE("zero-mass inputs are flagged") {
  ConditionalKernelTable t = nu_i_table(point_mass(0), bsc(r(1, 3)), 0, 2);
  CHECK(t.flags == std::set<Word>{w("b"), w("ab"), w("ba"), w("bb")});
  CHECK_FALSE(t.entry(w("ab"), w("a")).has_value());
  CHECK(t.entry(w("aa"), w("ab")) == r(2, 9));
  CHECK(table_is_coherent(t));
}

TEST_CASE("parallel table fill matches the serial reference") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 6; ++trial) {
    Alphabet a = letters(2), b = letters(2);
    FsmSource src = random_source_over(rng, a, 3);
    FsmChannel ch = random_channel(rng, a, b, 2);
    JointSource j = hookup(src, ch);
    ConditionalKernelTable par = conditional_table(j, src, 4);
    CHECK(par == conditional_table_serial(j, src, 4));
    CHECK(table_is_coherent(par));
  }
}

TEST_CASE("kernel_stationary_mean examples") {
  FsmSource m = kernel_stationary_mean(copy(), LassoInput{{}, w("ab")});
  CHECK(cyl_prob(m, w("a")) == r(1, 2));
  FsmSource a = kernel_stationary_mean(transient_copy(), LassoInput{{}, w("a")});
  CHECK(cyl_prob(a, w("aaa")) == Scalar(1));
  FsmSource b = kernel_stationary_mean(transient_copy(), LassoInput{{}, w("b")});
  CHECK(cyl_prob(b, w("a")).is_zero());
  CHECK(cyl_prob(b, w("bb")) == Scalar(1));
  // Oracle: Cesaro partial sums of shifted output cylinders.
  double p128 = oracle::kernel_cesaro_partial(transient_copy(), LassoInput{{}, w("b")}, w("a"), 128)
                    .to_double();
  CHECK(p128 == doctest::Approx(1.0 / 128));
  SplitMix64 rng(81);
  for (int trial = 0; trial < 6; ++trial) {
    FsmChannel ch = random_channel(rng, binary(), binary(), 2);
    LassoInput x = random_lasso(rng, binary());
    FsmSource s = kernel_stationary_mean(ch, x);
    CHECK(is_stationary(s));
    Word v = random_word(rng, 2, 2);
    double exact = cyl_prob(s, v).to_double();
    double p = oracle::kernel_cesaro_partial(ch.to_mode(Arith::floating), x, v, 4096).to_double();
    CHECK(std::abs(p - exact) < 0.01);
  }
}

TEST_CASE("float mode channels") {
  FsmChannel b = bsc(Scalar(0.25));
  CHECK_FALSE(b.exact());
  CHECK(channel_cyl_prob(b, w("ab"), w("ab")).to_double() == doctest::Approx(9.0 / 16));
  CHECK(rect(hookup(s3_iid(), b), "a", "a").to_double() == doctest::Approx(3.0 / 8));
}
