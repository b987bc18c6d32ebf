#include <gtest/gtest.h>

#include <random>

#include "ballsat/csp.hpp"
#include "ballsat/error.hpp"
#include "ballsat/sat_solver.hpp"
#include "oracles.hpp"

using namespace ballsat;

TEST(CspFormula, Validation) {
  EXPECT_THROW(CspFormula(3, 2, {{{1, 4}}}), UsageError);
  EXPECT_THROW(CspFormula(3, 2, {{{3, 1}}}), UsageError);
  EXPECT_THROW(CspFormula(3, 2, {{}}), UsageError);
  EXPECT_THROW(CspFormula(3, 2, {{{1, 1}, {1, 2}}}), UsageError);
}

TEST(CspEvaluate, Examples) {
  EXPECT_TRUE(csp_evaluate(CspFormula(3, 2, {}), {1, 1}));
  EXPECT_FALSE(csp_evaluate(CspFormula(2, 1, {{{1, 1}}}), {1}));
  EXPECT_TRUE(csp_evaluate(CspFormula(3, 2, {{{1, 1}, {2, 2}}}), {1, 1}));
}

TEST(TwoBoxCover, Examples) {
  const BoxCover two = two_box_cover(2, 5);
  EXPECT_EQ(two.size(), 1u);
  EXPECT_EQ(two.box(0).pairs, (std::vector<std::pair<unsigned, unsigned>>(5, {1, 2})));

  const BoxCover four = two_box_cover(4, 2);
  ASSERT_EQ(four.size(), 4u);
  std::vector<TwoBox> boxes;
  for (std::uint64_t i = 0; i < 4; ++i) boxes.push_back(four.box(i));
  EXPECT_EQ(boxes[0].pairs, (std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {1, 2}}));
  EXPECT_EQ(boxes[3].pairs, (std::vector<std::pair<unsigned, unsigned>>{{3, 4}, {3, 4}}));
  EXPECT_TRUE(oracle::boxes_cover(4, 2, boxes));

  const BoxCover three = two_box_cover(3, 4, 4);
  EXPECT_LE(three.size(), 23u);
  EXPECT_TRUE(three.verified());
  std::vector<TwoBox> tb;
  for (std::uint64_t i = 0; i < three.size(); ++i) tb.push_back(three.box(i));
  EXPECT_TRUE(oracle::boxes_cover(3, 4, tb));
}

TEST(TwoBoxCover, OddDomainsCoverWithResidualBlock) {
  for (unsigned d : {3u, 5u}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      BoxCover c = two_box_cover(d, n, 2);
      std::vector<TwoBox> tb;
      for (std::uint64_t i = 0; i < c.size(); ++i) tb.push_back(c.box(i));
      EXPECT_TRUE(oracle::boxes_cover(d, n, tb)) << d << ' ' << n;
    }
  }
}

TEST(RestrictToBox, Examples) {
  TwoBox box{{{1, 2}}};
  const CspFormula five(5, 1, {{{1, 5}}});
  EXPECT_EQ(restrict_to_box(five, box).num_clauses(), 0u);
  const CspFormula one(3, 1, {{{1, 1}}});
  EXPECT_EQ(restrict_to_box(one, box), Formula(1, {Clause{pos(1)}}));
  const CspFormula two(3, 1, {{{1, 2}}});
  EXPECT_EQ(restrict_to_box(two, box), Formula(1, {Clause{neg(1)}}));
  EXPECT_EQ(decode_box_witness(TwoBox{{{1, 3}, {2, 3}}}, Assignment::from_string("10")),
            (CspAssignment{3, 2}));
}

// F restricted to a box is satisfiable iff F has a solution inside the box.
TEST(RestrictToBox, EquisatisfiablePerBox) {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng() % 6;
    const CspFormula f = oracle::random_csp(3, n, 1 + rng() % (3 * n), 3, rng);
    const BoxCover cover = two_box_cover(3, n);
    const TwoBox box = cover.box(rng() % cover.size());
    const Formula g = restrict_to_box(f, box);
    bool in_box = false;
    for (std::uint64_t mask = 0; mask < (1u << n) && !in_box; ++mask) {
      std::vector<unsigned> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = (mask >> i) & 1 ? box.pairs[i].second : box.pairs[i].first;
      }
      in_box = oracle::csp_true(f, x);
    }
    EXPECT_EQ(oracle::satisfiable(g), in_box);
  }
}

TEST(SolveCsp, Examples) {
  const CspSolveResult e = solve_csp(CspFormula(3, 3, {}), {});
  ASSERT_EQ(e.status, SolveStatus::kSat);
  EXPECT_EQ(*e.witness, (CspAssignment{1, 1, 1}));

  EXPECT_EQ(solve_csp(CspFormula(2, 1, {{{1, 1}}, {{1, 2}}}), {}).status, SolveStatus::kUnsat);
  EXPECT_EQ(brute_force_csp(CspFormula(2, 1, {{{1, 1}}, {{1, 2}}})).status, SolveStatus::kUnsat);
  EXPECT_EQ(brute_force_csp(CspFormula(3, 2, {})).status, SolveStatus::kSat);
}

// Four variables pairwise distinct over three values: unsat; padded to n = 6.
TEST(SolveCsp, PigeonholeUnsat) {
  std::vector<CspConstraint> cons;
  for (Var i = 1; i <= 4; ++i) {
    for (Var j = i + 1; j <= 4; ++j) {
      for (unsigned c = 1; c <= 3; ++c) cons.push_back({{i, c}, {j, c}});
    }
  }
  cons.push_back({{5, 1}, {6, 2}});
  const CspFormula f(3, 6, cons);
  EXPECT_FALSE(oracle::csp_satisfiable(f));
  EXPECT_EQ(brute_force_csp(f).status, SolveStatus::kUnsat);
  SolverConfig cfg;
  cfg.mode = SolveMode::kDeterministic;
  EXPECT_EQ(solve_csp(f, cfg).status, SolveStatus::kUnsat);
}

TEST(SolveCsp, RandomWitnessesCheck) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 2 + rng() % 7;
    const CspFormula f = oracle::random_csp(3, n, n + rng() % (4 * n), 3, rng);
    const CspSolveResult r = solve_csp(f, {});
    ASSERT_EQ(r.status == SolveStatus::kSat, oracle::csp_satisfiable(f));
    if (r.witness) EXPECT_TRUE(oracle::csp_true(f, *r.witness));
  }
}

TEST(SolveCsp, EvenDomainAndJobs) {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 40; ++iter) {
    const CspFormula f = oracle::random_csp(4, 5, 25, 3, rng);
    SolverConfig cfg;
    cfg.jobs = 3;
    const CspSolveResult a = solve_csp(f, cfg);
    const CspSolveResult b = solve_csp(f, {});
    EXPECT_EQ(a.status == SolveStatus::kSat, oracle::csp_satisfiable(f));
    EXPECT_EQ(a.witness, b.witness);
  }
}

TEST(BruteForceCsp, Cap) {
  EXPECT_THROW(brute_force_csp(CspFormula(10, 8, {})), ResourceError);
}
