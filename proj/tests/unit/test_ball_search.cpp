#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ballsat/ball_search.hpp"
#include "ballsat/bench.hpp"
#include "ballsat/covering_code.hpp"
#include "ballsat/error.hpp"
#include "oracles.hpp"

using namespace ballsat;

TEST(Walk, Examples) {
  const Formula f(1, {Clause{pos(1)}});
  std::uint64_t steps = 99;
  auto same = schoening_walk(f, Assignment::from_string("1"), {5, 0}, &steps);
  ASSERT_TRUE(same);
  EXPECT_EQ(steps, 0u);
  auto flipped = schoening_walk(f, Assignment::from_string("0"), {1, 0}, &steps);
  ASSERT_TRUE(flipped);
  EXPECT_EQ(*flipped, Assignment::from_string("1"));
  EXPECT_EQ(steps, 1u);
  EXPECT_FALSE(schoening_walk(Formula(1, {Clause{pos(1)}, Clause{neg(1)}}), Assignment(1),
                              {50, 3}));
}

TEST(Searchball, Examples) {
  const Formula f(3, {Clause{pos(1), pos(2), pos(3)}, Clause{neg(1)}, Clause{neg(2)}});
  auto sat = searchball(f, Assignment::from_string("001"), 0);
  ASSERT_TRUE(sat.found());
  EXPECT_EQ(*sat.witness, Assignment::from_string("001"));
  EXPECT_FALSE(searchball(Formula(1, {Clause{pos(1)}}), Assignment(1), 0).found());
  auto r1 = searchball(f, Assignment(3), 1);
  ASSERT_TRUE(r1.found());
  EXPECT_EQ(*r1.witness, Assignment::from_string("001"));
}

TEST(Searchball, RadiusZeroIsOneLeaf) {
  const Formula f(2, {Clause{pos(1), pos(2)}});
  auto o = searchball(f, Assignment(2), 0);
  EXPECT_EQ(o.stats.leaves, 1u);
  FastParams p = FastParams::make(3, 6);
  auto g = searchball_fast(f, Assignment(2), 0, p);
  EXPECT_EQ(g.stats.leaves, 1u);
}

TEST(MaximalDisjoint, Examples) {
  const Formula f(8, {Clause{pos(1), pos(2), pos(3)}, Clause{pos(3), pos(4), pos(5)},
                      Clause{pos(6), pos(7), pos(8)}});
  EXPECT_EQ(maximal_disjoint_unsat(f, Assignment(8), 3), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(maximal_disjoint_unsat(f, Assignment(8, true), 3).empty());
  const Formula narrow(3, {Clause{pos(1), pos(2)}, Clause{pos(3)}});
  EXPECT_TRUE(maximal_disjoint_unsat(narrow, Assignment(3), 3).empty());
}

TEST(ApplyCodeword, Examples) {
  // x_i = 3i-2, y_i = 3i-1, z_i = 3i.
  std::vector<Clause> h;
  for (Var i = 0; i < 3; ++i) h.push_back(Clause{pos(3 * i + 1), pos(3 * i + 2), pos(3 * i + 3)});
  const Assignment a(9);
  const Assignment b = apply_codeword(a, h, KaryWord{2, 3, 3});
  EXPECT_EQ(b, Assignment::from_string("010001001"));
  EXPECT_EQ(apply_codeword(a, h, KaryWord{1, 1, 1}), Assignment::from_string("100100100"));
  EXPECT_EQ(hamming_distance(a, b), 3u);
  EXPECT_THROW(apply_codeword(a, h, KaryWord{1, 1}), UsageError);
  EXPECT_THROW(apply_codeword(a, h, KaryWord{1, 1, 4}), UsageError);
}

TEST(FastParams, Validation) {
  FastParams p = FastParams::make(3, 6);
  EXPECT_EQ(p.code_radius(), 2u);
  EXPECT_EQ(p.delta(), 2);
  EXPECT_NO_THROW(p.validate());
  FastParams bad = p;
  bad.t = 3;
  EXPECT_THROW(bad.validate(), UsageError);
  EXPECT_THROW(FastParams::make(3, 2), UsageError);  // delta = 0
  EXPECT_EQ(FastParams::default_t(3), 6u);
  for (unsigned k = 3; k <= 6; ++k) {
    FastParams q = FastParams::make(k, FastParams::default_t(k));
    EXPECT_GE(q.delta(), 1);
  }
}

// t disjoint clauses all unsatisfied: any solution is at distance >= t.
TEST(SearchballFast, DisjointUnsatisfiedBeyondRadius) {
  std::mt19937_64 rng(5);
  FastParams p = FastParams::make(3, 6);
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<Clause> cs;
    for (Var i = 0; i < 6; ++i) cs.push_back(Clause{pos(3 * i + 1), pos(3 * i + 2), pos(3 * i + 3)});
    Formula f(18, cs);
    const unsigned r = static_cast<unsigned>(rng() % 6);
    auto o = searchball_fast(f, Assignment(18), r, p);
    EXPECT_FALSE(o.found());
    EXPECT_EQ(o.found(), oracle::ball_has_solution(f, Assignment(18), r));
  }
}

// Every engine is sound, and complete whenever the ball holds a solution.
TEST(Engines, OracleAgreementRandom) {
  std::mt19937_64 rng(17);
  const FastParams p3 = FastParams::make(3, 3);
  const FastParams p6 = FastParams::make(3, 6);
  FastParams literal = p6;
  literal.tighten_beta_radius = false;
  literal.skip_unsatisfying_beta = false;
  for (int iter = 0; iter < 400; ++iter) {
    const std::size_t n = 3 + rng() % 8;
    const Formula f = oracle::random_kcnf(n, n + rng() % (4 * n), 3, rng);
    Assignment a(n);
    for (Var v = 1; v <= n; ++v) a.set(v, rng() & 1);
    const unsigned r = static_cast<unsigned>(rng() % (n + 1));
    const bool expect = oracle::ball_has_solution(f, a, r);
    const SearchOutcome outcomes[] = {searchball(f, a, r), searchball_fast(f, a, r, p3),
                                      searchball_fast(f, a, r, p6)};
    for (const auto& o : outcomes) {
      if (expect) ASSERT_TRUE(o.found()) << "n=" << n << " r=" << r;
      if (o.found()) EXPECT_TRUE(oracle::holds(f, *o.witness));
    }
    // Only plain searchball stays inside the ball; a codeword step moves t
    // variables while the radius drops by delta.
    EXPECT_EQ(outcomes[0].found(), expect);
    if (outcomes[0].found()) EXPECT_LE(hamming_distance(*outcomes[0].witness, a), r);
    // Untightened base case may also return solutions outside the ball.
    const SearchOutcome loose = searchball_fast(f, a, r, literal);
    if (expect) EXPECT_TRUE(loose.found());
    if (loose.found()) EXPECT_TRUE(oracle::holds(f, *loose.witness));
  }
}

TEST(Engines, LeafEnvelopes) {
  const FastParams p = FastParams::make(3, 6);
  for (std::uint64_t s = 0; s < 40; ++s) {
    const PlantedInstance inst = gen_planted(3, 30, 126, s, 2 + s % 9);
    auto a = searchball(inst.formula, inst.start, static_cast<unsigned>(inst.r));
    auto b = searchball_fast(inst.formula, inst.start, static_cast<unsigned>(inst.r), p);
    ASSERT_TRUE(a.found());
    ASSERT_TRUE(b.found());
    EXPECT_LE(a.stats.leaves, std::pow(3.0, inst.r));
    EXPECT_LE(a.stats.max_branching, 3u);
    const double env = std::pow(static_cast<double>(p.code->size()),
                                std::ceil(static_cast<double>(inst.r) / p.delta()));
    EXPECT_LE(static_cast<double>(b.stats.leaves), env);
  }
}

TEST(Searcher, ReusableAcrossCalls) {
  const PlantedInstance inst = gen_planted(3, 20, 80, 9, 4);
  BallSearcher s(inst.formula);
  auto first = s.searchball(inst.start, 4);
  auto second = s.searchball(inst.start, 4);
  ASSERT_TRUE(first.found());
  EXPECT_EQ(*first.witness, *second.witness);
  EXPECT_EQ(first.stats.leaves, second.stats.leaves);
}
