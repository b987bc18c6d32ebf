#pragma once
// Reference implementations used as ground truth by the tests. They share no
// code with the library beyond the data types and are kept deliberately naive.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ballsat/cnf.hpp"
#include "ballsat/covering_code.hpp"
#include "ballsat/csp.hpp"

namespace oracle {

using ballsat::Assignment;
using ballsat::Formula;

inline bool clause_true(const ballsat::Clause& c, const std::vector<bool>& x) {
  for (const auto& lit : c) {
    if (x[lit.var() - 1] != lit.negated()) return true;
  }
  return false;
}

inline bool formula_true(const Formula& f, const std::vector<bool>& x) {
  for (const auto& c : f.clauses()) {
    if (!clause_true(c, x)) return false;
  }
  return true;
}

inline std::vector<bool> bits(const Assignment& a) {
  std::vector<bool> x(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) x[i] = a.value(static_cast<ballsat::Var>(i + 1));
  return x;
}

inline bool holds(const Formula& f, const Assignment& a) { return formula_true(f, bits(a)); }

/// Exhaustive satisfiability over 2^n assignments.
inline bool satisfiable(const Formula& f) {
  const std::size_t n = f.num_vars();
  std::vector<bool> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
    if (formula_true(f, x)) return true;
  }
  return false;
}

/// Minimum Hamming distance from alpha to a satisfying assignment, if any.
inline std::optional<std::size_t> nearest_solution(const Formula& f, const Assignment& alpha) {
  const std::size_t n = f.num_vars();
  const auto a = bits(alpha);
  std::optional<std::size_t> best;
  std::vector<bool> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = (mask >> i) & 1;
      d += x[i] != a[i];
    }
    if ((!best || d < *best) && formula_true(f, x)) best = d;
  }
  return best;
}

inline bool ball_has_solution(const Formula& f, const Assignment& alpha, std::size_t r) {
  auto d = nearest_solution(f, alpha);
  return d && *d <= r;
}

inline std::size_t word_distance(const ballsat::KaryWord& a, const ballsat::KaryWord& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

/// Odometer over {1..q}^t, checking each word's distance to every codeword.
inline bool covers(unsigned q, unsigned t, unsigned r, const std::vector<ballsat::KaryWord>& words) {
  ballsat::KaryWord w(t, 1);
  while (true) {
    bool hit = false;
    for (const auto& c : words) {
      if (word_distance(w, c) <= r) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
    std::size_t i = t;
    while (i > 0 && w[i - 1] == q) w[--i] = 1;
    if (i == 0) return true;
    ++w[i - 1];
  }
}

inline bool csp_true(const ballsat::CspFormula& f, const std::vector<unsigned>& x) {
  for (const auto& c : f.constraints()) {
    bool ok = false;
    for (const auto& lit : c) ok = ok || x[lit.var - 1] != lit.value;
    if (!ok) return false;
  }
  return true;
}

inline bool csp_satisfiable(const ballsat::CspFormula& f) {
  const std::size_t n = f.num_vars();
  const unsigned d = f.domain_size();
  std::vector<unsigned> x(n, 1);
  while (true) {
    if (csp_true(f, x)) return true;
    std::size_t i = n;
    while (i > 0 && x[i - 1] == d) x[--i] = 1;
    if (i == 0) return false;
    ++x[i - 1];
  }
}

/// Every point of {1..d}^n lies in some box.
inline bool boxes_cover(unsigned d, std::size_t n, const std::vector<ballsat::TwoBox>& boxes) {
  std::vector<unsigned> x(n, 1);
  while (true) {
    bool hit = false;
    for (const auto& b : boxes) {
      bool in = true;
      for (std::size_t i = 0; i < n && in; ++i) {
        in = x[i] == b.pairs[i].first || x[i] == b.pairs[i].second;
      }
      if (in) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
    std::size_t i = n;
    while (i > 0 && x[i - 1] == d) x[--i] = 1;
    if (i == 0) return true;
    ++x[i - 1];
  }
}

/// Uniform random k-CNF with distinct variables per clause.
inline Formula random_kcnf(std::size_t n, std::size_t m, unsigned k, std::mt19937_64& rng) {
  std::vector<ballsat::Clause> clauses;
  std::vector<ballsat::Var> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<ballsat::Var>(i + 1);
  for (std::size_t j = 0; j < m; ++j) {
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<ballsat::Literal> lits;
    for (unsigned i = 0; i < k && i < n; ++i) lits.emplace_back(vars[i], rng() & 1);
    clauses.emplace_back(std::move(lits));
  }
  return Formula(n, std::move(clauses));
}

inline ballsat::CspFormula random_csp(unsigned d, std::size_t n, std::size_t m, unsigned k,
                                      std::mt19937_64& rng) {
  std::vector<ballsat::CspConstraint> cons;
  std::vector<ballsat::Var> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<ballsat::Var>(i + 1);
  std::uniform_int_distribution<unsigned> val(1, d);
  for (std::size_t j = 0; j < m; ++j) {
    std::shuffle(vars.begin(), vars.end(), rng);
    const unsigned w = 1 + static_cast<unsigned>(rng() % std::min<std::size_t>(k, n));
    ballsat::CspConstraint c;
    for (unsigned i = 0; i < w; ++i) c.push_back({vars[i], val(rng)});
    cons.push_back(std::move(c));
  }
  return ballsat::CspFormula(d, n, std::move(cons));
}

}  // namespace oracle
