#include "doctest.h"

#include <cmath>

#include "ams/catalog.hpp"
#include "ams/errors.hpp"
#include "ams/oracle.hpp"
#include "ams/random.hpp"

using namespace ams;
using namespace ams::catalog;

TEST_CASE("brute force event probability matches the forward pass") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    FsmSource src = random_source(rng);
    std::size_t depth = 1 + rng.below(3);
    std::set<Word> words;
    for (int i = 0; i < 4; ++i) words.insert(random_word(rng, src.alphabet().size(), depth));
    CylinderEvent e(src.alphabet(), depth, words);
    CHECK(oracle::brute_force_event_prob(src, e) == event_prob(src, e));
  }
  CHECK(oracle::brute_force_event_prob(s3_iid(), CylinderEvent::empty(binary(), 2)).is_zero());
}

TEST_CASE("path budget") {
  SplitMix64 rng(3);
  FsmSource big = random_source_over(rng, letters(2), 40);
  CHECK_THROWS_AS(oracle::brute_force_event_prob(big, CylinderEvent::full(letters(2), 6)),
                  BudgetExceeded);
}

TEST_CASE("cesaro partial sums approach the stationary mean") {
  FsmSource s1 = s1_periodic();
  CylinderEvent a = CylinderEvent::singleton(binary(), binary().parse("a"));
  CHECK(oracle::cesaro_partial(s1, a, 1) == Scalar(1));
  CHECK(oracle::cesaro_partial(s1, a, 2) == Scalar::ratio(1, 2));
  CHECK(oracle::cesaro_partial(s1, a, 3) == Scalar::ratio(2, 3));
  FsmSource s2 = s2_absorbing();
  CHECK(oracle::cesaro_partial(s2, a, 8) == Scalar::ratio(1, 8));
}

TEST_CASE("monte carlo is reproducible and thread independent") {
  FsmSource src = transient_fork();
  oracle::EmpiricalTable par = oracle::monte_carlo(src, 3, 5000, 42);
  CHECK(par == oracle::monte_carlo_serial(src, 3, 5000, 42));
  CHECK(par == oracle::monte_carlo(src, 3, 5000, 42));
  CHECK_FALSE(par == oracle::monte_carlo(src, 3, 5000, 43));
  std::uint64_t total = 0;
  for (const auto& [w, c] : par.counts) total += c;
  CHECK(total == 5000);
  for_each_word(2, 3, [&](const Word& w) {
    double exact = cyl_prob(src, w).to_double();
    CHECK(std::abs(par.frequency(w) - exact) <= par.half_width(w) + 1e-3);
  });
  CHECK_THROWS_AS(oracle::monte_carlo(src, 0, 10, 1), InvariantViolation);
}

TEST_CASE("channel path enumeration on a latch") {
  FsmChannel latch = coin_latch();
  Alphabet b = binary();
  CHECK(oracle::brute_force_channel_prob(latch, b.parse("ab"), b.parse("aa")) ==
        Scalar::ratio(1, 2));
  CHECK(oracle::brute_force_channel_prob(latch, b.parse("ab"), b.parse("ab")).is_zero());
  CHECK_THROWS_AS(oracle::brute_force_channel_prob(latch, b.parse("a"), b.parse("ab")),
                  PreconditionError);
}

TEST_CASE("oracle examples on the catalog sources") {
  Alphabet b = binary();
  CHECK(oracle::brute_force_event_prob(s1_periodic(), CylinderEvent::singleton(b, b.parse("ab"))) ==
        Scalar(1));
  for_each_word(2, 3, [&](const Word& w) {
    CHECK(oracle::brute_force_event_prob(s3_iid(), CylinderEvent::singleton(b, w)) ==
          Scalar::ratio(1, 8));
  });
  CylinderEvent a = CylinderEvent::singleton(b, b.parse("a"));
  CHECK(oracle::cesaro_partial(s1_periodic(), a, 5) == Scalar::ratio(3, 5));
  CHECK(oracle::cesaro_partial(s2_absorbing(), a, 4) == Scalar::ratio(1, 4));
  for (std::size_t n : {7, 64, 101}) {
    Scalar dev = oracle::cesaro_partial(s1_periodic(), a, n) - Scalar::ratio(1, 2);
    CHECK(std::abs(dev.to_double()) <= 0.5 / static_cast<double>(n));
  }
}

TEST_CASE("monte carlo examples") {
  oracle::EmpiricalTable s3 = oracle::monte_carlo(s3_iid(), 1, 10000, 5);
  Word a{0};
  CHECK(std::abs(s3.frequency(a) - 0.5) <= 0.015);
  CHECK(s3.half_width(a) == doctest::Approx(0.015).epsilon(0.01));

  oracle::EmpiricalTable pm = oracle::monte_carlo(point_mass(1), 4, 500, 9);
  REQUIRE(pm.counts.size() == 1);
  CHECK(pm.counts.begin()->first == Word{1, 1, 1, 1});
  CHECK(pm.counts.begin()->second == 500);

  JointSource j = hookup(s3_iid(), bsc(Scalar::ratio(1, 4)));
  oracle::EmpiricalTable h = oracle::monte_carlo(j.source, 1, 10000, 11);
  CHECK(std::abs(h.frequency(Word{0}) - 0.375) <= 0.015);
}
