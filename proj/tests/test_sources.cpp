#include "doctest.h"

#include "ams/catalog.hpp"
#include "ams/errors.hpp"
#include "ams/random.hpp"
#include "ams/source.hpp"

using namespace ams;
using namespace ams::catalog;

namespace {

Word w(const char* s) { return binary().parse(s); }

CylinderEvent single(const char* s) { return CylinderEvent::singleton(binary(), w(s)); }

Scalar r(long p, long q) { return Scalar::ratio(p, q); }

}  // namespace

TEST_CASE("cyl_prob examples") {
  CHECK(cyl_prob(s1_periodic(), w("ab")) == Scalar(1));
  CHECK(cyl_prob(s1_periodic(), w("b")).is_zero());
  for_each_word(2, 3, [](const Word& x) { CHECK(cyl_prob(s3_iid(), x) == r(1, 8)); });
  CHECK(cyl_prob(s3_iid(), Word{}) == Scalar(1));
  CHECK_THROWS_AS(cyl_prob(s3_iid(), Word{2}), AlphabetMismatch);
}

TEST_CASE("event_prob examples") {
  CHECK(event_prob(s3_iid(), CylinderEvent::full(binary(), 2)) == Scalar(1));
  CHECK(event_prob(s1_periodic(), single("aa")).is_zero());
  CylinderEvent e(binary(), 2, {w("aa"), w("ab")});
  CHECK(event_prob(s3_iid(), e) == r(1, 2));
}

TEST_CASE("shifted_source examples") {
  FsmSource s = shifted_source(s1_periodic(), 1);
  CHECK(s.init() == Vector{0, 1});
  CHECK(cyl_prob(s, w("b")) == Scalar(1));
  CHECK(shifted_source(s1_periodic(), 0).init() == s1_periodic().init());
  FsmSource t = shifted_source(s2_absorbing(), 2);
  CHECK(t.init() == Vector{0, 1});
  CHECK(cyl_prob(t, w("a")).is_zero());
}

TEST_CASE("cesaro_limit examples") {
  Matrix flip = Matrix::from_rows({{0, 1}, {1, 0}});
  CHECK(cesaro_limit(flip) == Matrix::from_rows({{r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}}));
  Matrix abs = Matrix::from_rows({{0, 1}, {0, 1}});
  CHECK(cesaro_limit(abs) == abs);
  Matrix p = Matrix::from_rows({{r(1, 2), r(1, 2)}, {r(1, 4), r(3, 4)}});
  Matrix pi = cesaro_limit(p);
  // Oracle value: the stationary law (1/3, 2/3), also reached by averaging
  // P^k for k < 10^4 within 1e-6.
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(pi(i, 0) == r(1, 3));
    CHECK(pi(i, 1) == r(2, 3));
  }
  CHECK_THROWS_AS(cesaro_limit(Matrix::from_rows({{1, 1}, {0, 1}})), InvariantViolation);
}

TEST_CASE("cesaro fixed point on structured matrices") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 24; ++trial) {
    auto shape = static_cast<MatrixShape>(trial % 4);
    Matrix p = random_structured_matrix(rng, 2 + rng.below(4), shape);
    Matrix pi = cesaro_limit(p);
    CHECK(is_row_stochastic(pi));
    CHECK(pi * p == pi);
    CHECK(p * pi == pi);
    CHECK(pi * pi == pi);
    ClassDecomposition d = decompose(p);
    for (std::size_t s = 0; s < p.rows(); ++s) {
      Scalar total;
      for (std::size_t c = 0; c < d.closed.size(); ++c) total += d.absorb(s, c);
      CHECK(total.is_one());
    }
  }
}

TEST_CASE("stationary_mean examples") {
  FsmSource m1 = stationary_mean(s1_periodic());
  CHECK(m1.init() == Vector{r(1, 2), r(1, 2)});
  CHECK(cyl_prob(m1, w("ab")) == r(1, 2));
  FsmSource m2 = stationary_mean(s2_absorbing());
  CHECK(m2.init() == Vector{0, 1});
  CHECK(cyl_prob(m2, w("a")).is_zero());
  CHECK(cyl_prob(m2, w("bbbb")) == Scalar(1));
  CHECK(stationary_mean(s3_iid()).init() == s3_iid().init());
}

TEST_CASE("are_equivalent examples") {
  CHECK(are_equivalent(s3_split(), s3_iid()).equal);
  Equivalence e = are_equivalent(s1_periodic(), shifted_source(s1_periodic(), 1));
  CHECK_FALSE(e.equal);
  REQUIRE(e.witness.has_value());
  CHECK(*e.witness == w("a"));
  CHECK(are_equivalent(s1_periodic(), shifted_source(s1_periodic(), 2)).equal);
  CHECK_THROWS_AS(are_equivalent(s3_iid(), FsmSource(Alphabet({"x"}), {0}, {1}, Matrix::identity(1))),
                  AlphabetMismatch);
}

TEST_CASE("are_equivalent is an equivalence on random instances") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Alphabet a = letters(2);
    FsmSource x = random_source_over(rng, a, 1 + rng.below(3));
    FsmSource y = rng.bernoulli(0.5) ? stationary_mean(x) : random_source_over(rng, a, 2);
    CHECK(are_equivalent(x, x).equal);
    CHECK(are_equivalent(x, y).equal == are_equivalent(y, x).equal);
    // Agreement on every word up to the identifiability length.
    bool same = true;
    for (const auto& word : words_up_to(2, x.num_states() + y.num_states())) {
      same = same && cyl_prob(x, word) == cyl_prob(y, word);
    }
    CHECK(same == are_equivalent(x, y).equal);
    FsmSource z = shifted_source(stationary_mean(x), 3);
    CHECK(are_equivalent(stationary_mean(x), z).equal);
  }
}

TEST_CASE("is_stationary examples") {
  CHECK(is_stationary(s3_iid()));
  CHECK_FALSE(is_stationary(s1_periodic()));
  CHECK(is_stationary(stationary_mean(s1_periodic())));
}

TEST_CASE("recurrence_defect examples") {
  CHECK(recurrence_defect(s2_absorbing(), single("a")) == Scalar(1));
  CHECK(recurrence_defect(s3_iid(), single("aa")).is_zero());
  CHECK(recurrence_defect(s1_periodic(), single("a")).is_zero());
  CHECK(recurrence_defect(s3_iid(), CylinderEvent::empty(binary(), 2)).is_zero());
}

TEST_CASE("recurrence_defect on a fork") {
  // From t the chain enters the b-loop with probability 1/2; the transient
  // 'a' then never comes back, otherwise the fair-coin class revisits it.
  FsmSource f = transient_fork();
  CHECK(recurrence_defect(f, single("a")) == r(1, 2));
  CHECK(recurrence_defect_is_zero(f, single("a")) == false);
  CHECK(recurrence_defect(f, single("ab")) == r(1, 2));
  CHECK(recurrence_defect(f, single("b")).is_zero());
}

TEST_CASE("is_recurrent examples") {
  WordVerdict v = is_recurrent(s2_absorbing(), 1);
  CHECK_FALSE(v.holds);
  CHECK(v.depth == 1);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == w("a"));
  for (std::size_t depth = 1; depth <= 5; ++depth) CHECK(is_recurrent(s3_iid(), depth).holds);
  CHECK(is_recurrent(s1_periodic(), 4).holds);
}

TEST_CASE("asymptotic_support examples") {
  CHECK(asymptotic_support(s2_absorbing(), 2) == std::vector<Word>{w("b"), w("bb")});
  CHECK(asymptotic_support(s3_iid(), 2).size() == 6);
  CHECK(asymptotic_support(s1_periodic(), 1) == std::vector<Word>{w("a"), w("b")});
}

TEST_CASE("dominates examples") {
  WordVerdict v = dominates(stationary_mean(s2_absorbing()), s2_absorbing(), 1);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == w("a"));
  CHECK(dominates(stationary_mean(s1_periodic()), s1_periodic(), 4).holds);
  CHECK(dominates(s2_absorbing(), s2_absorbing(), 3).holds);
}

TEST_CASE("cylinder domination does not imply recurrence") {
  // Every fork cylinder is charged by the fair-coin class of the mean, yet
  // the path a b b b ... has positive mass and mean-measure zero.
  FsmSource f = transient_fork();
  for (std::size_t depth = 1; depth <= 5; ++depth) CHECK(dominates(stationary_mean(f), f, depth).holds);
  WordVerdict rec = is_recurrent(f, 3);
  CHECK_FALSE(rec.holds);
  CHECK(*rec.witness == w("a"));
}

TEST_CASE("asymptotically_dominates examples") {
  CHECK(asymptotically_dominates(stationary_mean(s2_absorbing()), s2_absorbing(), 3).holds);
  WordVerdict v = asymptotically_dominates(point_mass(1), s3_iid(), 1);
  CHECK_FALSE(v.holds);
  CHECK(*v.witness == w("a"));
  CHECK_THROWS_AS(asymptotically_dominates(s1_periodic(), s1_periodic(), 1), PreconditionError);
}

TEST_CASE("every source is asymptotically dominated by its mean") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    FsmSource src = random_source(rng);
    FsmSource mean = stationary_mean(src);
    CHECK(asymptotically_dominates(mean, src, 3).holds);
    // Decay oracle: mu(T^-n [w]) -> 0 on every mean-null word.
    std::size_t horizon = 10 * src.num_states() + 40;
    FsmSource late = shifted_source(src, horizon).to_mode(Arith::floating);
    for (const auto& word : words_up_to(src.alphabet().size(), 3)) {
      if (cyl_prob(mean, word).is_zero()) CHECK(cyl_prob(late, word).to_double() < 1e-6);
    }
  }
}

TEST_CASE("is_ergodic examples") {
  CHECK(is_ergodic(s3_iid()).ergodic);
  CHECK(is_ergodic(s1_periodic()).ergodic);
  ErgodicVerdict v = is_ergodic(two_loops());
  CHECK_FALSE(v.ergodic);
  CHECK(v.caveat);
  CHECK(v.charged_classes == 2);
}

TEST_CASE("conservation and consistency") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    FsmSource src = random_source(rng);
    std::size_t sigma = src.alphabet().size();
    for (std::size_t len = 1; len <= 3; ++len) {
      CHECK(event_prob(src, CylinderEvent::full(src.alphabet(), len)).is_one());
    }
    for (const auto& word : words_up_to(sigma, 2)) {
      Scalar total;
      for (Symbol a = 0; a < sigma; ++a) {
        Word x = word;
        x.push_back(a);
        total += cyl_prob(src, x);
      }
      CHECK(total == cyl_prob(src, word));
      CylinderEvent e = CylinderEvent::singleton(src.alphabet(), word);
      CHECK(event_prob(src, e) == event_prob(src, e.refine(4)));
      CHECK(event_prob(shifted_source(src, 2), e) == event_prob(src, shift_preimage(e, 2)));
    }
  }
}

TEST_CASE("S1 partial means deviate by at most 1/(2n)") {
  ConvergenceEvidence ev = convergence_evidence(s1_periodic(), 1, 5, 7);
  // Partial means of [a] are ceil(n/2)/n and of [b] floor(n/2)/n.
  CHECK(ev.max_dev1 == doctest::Approx(0.1));
  CHECK(ev.max_dev2 == doctest::Approx(1.0 / 14));
}

TEST_CASE("source hierarchy on random sources") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    FsmSource src = random_source(rng);
    SourceVerdict v = classify_source(src, 3);
    if (v.stationary) CHECK(v.recurrent.holds);
    CHECK(v.ams);
  }
  CHECK_FALSE(is_recurrent(s2_absorbing(), 1).holds);
  CHECK_FALSE(dominates(stationary_mean(s2_absorbing()), s2_absorbing(), 1).holds);
}

TEST_CASE("float mode mirrors exact verdicts") {
  FsmSource f = s1_periodic().to_mode(Arith::floating);
  CHECK_FALSE(is_stationary(f));
  CHECK(is_stationary(stationary_mean(f)));
  CHECK(cyl_prob(stationary_mean(f), w("ab")).to_double() == doctest::Approx(0.5));
  CHECK_FALSE(is_recurrent(s2_absorbing().to_mode(Arith::floating), 1).holds);
}
