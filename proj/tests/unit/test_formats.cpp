#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "ballsat/covering_code.hpp"
#include "ballsat/error.hpp"
#include "ballsat/formats.hpp"

using namespace ballsat;

namespace {

ParseErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ParseError";
  return ParseErrorKind::kInvalidToken;
}

}  // namespace

TEST(Dimacs, Examples) {
  const Formula f = parse_dimacs("p cnf 1 1\n1 0\n");
  EXPECT_EQ(f, Formula(1, {Clause{pos(1)}}));
  const Formula g = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 0\n");
  ASSERT_EQ(g.num_clauses(), 2u);
  EXPECT_EQ(g.clause(0).size(), 3u);
  EXPECT_EQ(g.clause(1).size(), 2u);
  EXPECT_EQ(kind_of([] { parse_dimacs("p cnf 2 1\n3 0\n"); }),
            ParseErrorKind::kVariableOutOfRange);
}

TEST(Dimacs, Errors) {
  EXPECT_EQ(kind_of([] { parse_dimacs("1 2 0\n"); }), ParseErrorKind::kMissingHeader);
  EXPECT_EQ(kind_of([] { parse_dimacs("p cnf x 1\n"); }), ParseErrorKind::kMalformedHeader);
  EXPECT_EQ(kind_of([] { parse_dimacs("p cnf 2 1\np cnf 2 1\n"); }),
            ParseErrorKind::kDuplicateHeader);
  EXPECT_EQ(kind_of([] { parse_dimacs("p cnf 2 1\n1 a 0\n"); }), ParseErrorKind::kInvalidToken);
  EXPECT_EQ(kind_of([] { parse_dimacs("p cnf 2 1\n1 2\n"); }),
            ParseErrorKind::kMissingTerminator);
}

TEST(Dimacs, LineNumbersAndCrlf) {
  try {
    parse_dimacs("c a\r\nc b\r\np cnf 2 1\r\n1 5 0\r\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_EQ(parse_dimacs("p cnf 2 1\r\n1 -2 0\r\n").num_clauses(), 1u);
}

TEST(Dimacs, CountMismatchWarnsAndTautologyDropped) {
  std::vector<std::string> warnings;
  const Formula f = parse_dimacs("p cnf 2 3\n1 -1 0\n2 2 0\n", &warnings);
  EXPECT_FALSE(warnings.empty());
  EXPECT_EQ(f, Formula(2, {Clause{pos(2)}}));
}

TEST(Dimacs, WriteIsCanonical) {
  const Formula f(3, {Clause{pos(1), neg(2)}, Clause{pos(3)}});
  EXPECT_EQ(write_dimacs(f), "p cnf 3 2\n1 -2 0\n3 0\n");
  EXPECT_EQ(parse_dimacs(write_dimacs(f)), f);
}

TEST(Csp, Examples) {
  const CspFormula a = parse_csp("p csp 3 1 1\n1 2 0\n");
  EXPECT_EQ(a.domain_size(), 3u);
  ASSERT_EQ(a.constraints().size(), 1u);
  EXPECT_EQ(a.constraints()[0], (CspConstraint{{1, 2}}));
  const CspFormula b = parse_csp("p csp 3 3 1\n1 1 2 2 3 3 0\n");
  EXPECT_EQ(b.constraints()[0], (CspConstraint{{1, 1}, {2, 2}, {3, 3}}));
  EXPECT_EQ(kind_of([] { parse_csp("p csp 2 1 1\n1 3 0\n"); }), ParseErrorKind::kValueOutOfDomain);
}

TEST(Csp, Errors) {
  EXPECT_EQ(kind_of([] { parse_csp("p csp 3 2 1\n1 0\n"); }), ParseErrorKind::kMalformedPair);
  EXPECT_EQ(kind_of([] { parse_csp("p csp 3 2 1\n0\n"); }), ParseErrorKind::kEmptyConstraint);
  EXPECT_EQ(kind_of([] { parse_csp("p csp 3 2 1\n3 1 0\n"); }),
            ParseErrorKind::kVariableOutOfRange);
  EXPECT_EQ(kind_of([] { parse_csp("p csp 3 2 1\n1 1\n"); }), ParseErrorKind::kMissingTerminator);
  EXPECT_EQ(kind_of([] { parse_csp("1 1 0\n"); }), ParseErrorKind::kMissingHeader);
  EXPECT_EQ(kind_of([] { parse_csp("p cnf 3 2\n"); }), ParseErrorKind::kMalformedHeader);
}

TEST(Csp, SameVariableTwoValuesIsDropped) {
  const CspFormula f = parse_csp("p csp 3 2 2\n1 1 1 2 0\n2 3 0\n");
  EXPECT_EQ(f.constraints().size(), 1u);
  EXPECT_EQ(write_csp(f), "p csp 3 2 1\n2 3 0\n");
}

TEST(CodeFile, Examples) {
  CoveringCode c{3, 1, 0, {{1}, {2}, {3}}, false};
  EXPECT_EQ(write_code(c), "3 1 0 3\n1\n2\n3\n");
  EXPECT_EQ(read_code("3 1 0 3\n1\n2\n3\n"), c);
  EXPECT_EQ(kind_of([] { read_code("3 1 0 1\n4\n"); }), ParseErrorKind::kValueOutOfDomain);
  EXPECT_EQ(kind_of([] { read_code("3 1 0 2\n1\n"); }), ParseErrorKind::kSizeMismatch);
  EXPECT_EQ(kind_of([] { read_code("3 1 0 2\n1\n1\n"); }), ParseErrorKind::kDuplicateWord);
  EXPECT_FALSE(read_code("2 1 0 1\n1\n").verified);
}

TEST(CodeFile, RandomRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    CoveringCode c;
    c.q = 2 + rng() % 5;
    c.t = 1 + rng() % 6;
    c.r = rng() % (c.t + 1);
    std::set<KaryWord> words;
    const std::size_t m = 1 + rng() % 8;
    while (words.size() < m) {
      KaryWord w(c.t);
      for (auto& s : w) s = static_cast<std::uint8_t>(1 + rng() % c.q);
      words.insert(w);
      if (words.size() >= std::pow(c.q, c.t)) break;
    }
    c.words.assign(words.begin(), words.end());
    EXPECT_EQ(read_code(write_code(c)), c);
  }
}

TEST(Sniff, Detects) {
  EXPECT_EQ(sniff_format("c x\np cnf 1 1\n1 0\n"), "cnf");
  EXPECT_EQ(sniff_format("p csp 3 1 1\n1 2 0\n"), "csp");
  EXPECT_EQ(sniff_format("hello"), "");
}
