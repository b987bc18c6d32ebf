#include "ballsat/ball_search.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "ballsat/error.hpp"
#include "ballsat/rng.hpp"
#include "clause_state.hpp"

namespace ballsat {

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  recursion_nodes += o.recursion_nodes;
  leaves += o.leaves;
  max_depth = std::max(max_depth, o.max_depth);
  inner_nodes += o.inner_nodes;
  inner_leaves += o.inner_leaves;
  max_branching = std::max(max_branching, o.max_branching);
  return *this;
}

WalkParams WalkParams::defaults_for(std::size_t num_vars, std::uint64_t seed) {
  return WalkParams{std::max<std::uint64_t>(1, 3 * static_cast<std::uint64_t>(num_vars)), seed};
}

void FastParams::validate() const {
  if (k < 2) throw UsageError("searchball_fast needs k >= 2");
  if (delta() < 1) {
    throw UsageError("t = " + std::to_string(t) + " gives no radius progress for k = " +
                     std::to_string(k));
  }
  if (!code) throw UsageError("searchball_fast needs a covering code");
  if (!code->verified) throw UsageError("searchball_fast needs a verified code");
  if (code->q != k || code->t != t || code->r != code_radius()) {
    throw UsageError("code parameters do not match (k, t, ceil(t/k))");
  }
}

unsigned FastParams::default_t(unsigned k) {
  if (k == 3) return 6;
  std::vector<unsigned> candidates{2 * k, k};
  for (unsigned t = k - 1; t >= 3; --t) candidates.push_back(t);
  for (unsigned t : candidates) {
    FastParams p{k, t, nullptr};
    if (p.delta() < 1) continue;
    try {
      space_size(k, t, kGreedyCap);
    } catch (const ResourceError&) {
      continue;
    }
    return t;
  }
  throw UsageError("no usable block size for k = " + std::to_string(k));
}

FastParams FastParams::make(unsigned k, unsigned t) {
  FastParams p{k, t, nullptr};
  if (p.delta() < 1) {
    throw UsageError("t = " + std::to_string(t) + " gives no radius progress for k = " +
                     std::to_string(k));
  }
  p.code = CodeCache::global().greedy(k, t, p.code_radius());
  p.validate();
  return p;
}

namespace {

class Engine {
 public:
  Engine(const detail::FormulaIndex& index, const Assignment& alpha)
      : index_(index),
        state_(index, alpha),
        fixed_(index.num_vars() + 1, 0),
        stamp_(index.num_vars() + 1, 0) {}

  SearchStats& stats() { return stats_; }
  const Assignment& assignment() const { return state_.assignment(); }

  bool searchball(unsigned radius, unsigned depth, bool inner) {
    if (inner) {
      ++stats_.inner_nodes;
    } else {
      ++stats_.recursion_nodes;
      stats_.max_depth = std::max(stats_.max_depth, depth);
    }
    auto leaf = [&] { ++(inner ? stats_.inner_leaves : stats_.leaves); };
    if (state_.all_satisfied()) {
      leaf();
      return true;
    }
    if (radius == 0) {
      leaf();
      return false;
    }
    const Clause& clause = index_.formula().clause(*state_.first_unsat());
    unsigned children = 0;
    for (Literal lit : clause) {
      const Var v = lit.var();
      if (fixed_[v]) continue;  // removed from F^[beta]
      ++children;
      state_.flip(v);
      fixed_[v] = 1;
      if (searchball(radius - 1, depth + 1, inner)) return true;
      fixed_[v] = 0;
      state_.flip(v);
    }
    if (children == 0) leaf();
    stats_.max_branching = std::max(stats_.max_branching, children);
    return false;
  }

  bool fast(int radius, unsigned depth, const FastParams& p) {
    ++stats_.recursion_nodes;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (state_.all_satisfied()) {
      ++stats_.leaves;
      return true;
    }
    if (radius <= 0) {
      ++stats_.leaves;
      return false;
    }
    const std::vector<std::size_t> g = disjoint_unsat(p.k);
    // Each clause of G needs its own flip to become satisfied.
    if (static_cast<int>(g.size()) > radius) {
      ++stats_.leaves;
      return false;
    }
    if (g.size() < p.t) {
      ++stats_.leaves;
      return enumerate_beta(g, radius, p);
    }

    const Formula& f = index_.formula();
    std::vector<Var> flips(p.t);
    for (const KaryWord& w : p.code->words) {
      for (unsigned i = 0; i < p.t; ++i) flips[i] = f.clause(g[i])[w[i] - 1u].var();
      for (Var v : flips) state_.flip(v);
      if (fast(radius - p.delta(), depth + 1, p)) return true;
      for (Var v : flips) state_.flip(v);
    }
    return false;
  }

  bool walk(const WalkParams& params, std::uint64_t* steps_taken) {
    Rng rng(params.rng_seed);
    std::uint64_t step = 0;
    bool ok = false;
    for (;; ++step) {
      if (state_.all_satisfied()) {
        ok = true;
        break;
      }
      if (step >= params.max_steps) break;
      const Clause& clause = index_.formula().clause(*state_.first_unsat());
      if (clause.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, clause.size() - 1);
      state_.flip(clause[pick(rng)].var());
    }
    if (steps_taken) *steps_taken = step;
    return ok;
  }

 private:
  std::vector<std::size_t> disjoint_unsat(unsigned k) {
    const Formula& f = index_.formula();
    ++generation_;
    std::vector<std::size_t> g;
    state_.for_each_unsat([&](std::size_t c) {
      const Clause& clause = f.clause(c);
      if (clause.size() != k) return true;
      for (Literal l : clause) {
        if (stamp_[l.var()] == generation_) return true;
      }
      for (Literal l : clause) stamp_[l.var()] = generation_;
      g.push_back(c);
      return true;
    });
    return g;
  }

  // Assignments beta to vbl(G), encoded per clause as the set of its literals
  // that beta makes true (every literal of an unsatisfied clause is false
  // under the current assignment, so "make true" means "flip").
  bool enumerate_beta(const std::vector<std::size_t>& g, int radius, const FastParams& p) {
    const unsigned k = p.k;
    std::vector<unsigned> masks;
    for (unsigned m = p.skip_unsatisfying_beta ? 1u : 0u; m < (1u << k); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
      return std::popcount(a) < std::popcount(b);
    });
    const Formula& f = index_.formula();
    for (std::size_t c : g) {
      for (Literal l : f.clause(c)) fixed_[l.var()] = 1;
    }
    const bool found = beta_rec(g, masks, 0, 0, radius, p);
    if (!found) {
      for (std::size_t c : g) {
        for (Literal l : f.clause(c)) fixed_[l.var()] = 0;
      }
    }
    return found;
  }

  bool beta_rec(const std::vector<std::size_t>& g, const std::vector<unsigned>& masks,
                std::size_t i, int dist, int radius, const FastParams& p) {
    if (i == g.size()) {
      const int inner_radius = p.tighten_beta_radius ? radius - dist : radius;
      return searchball(static_cast<unsigned>(inner_radius), 0, true);
    }
    const Clause& clause = index_.formula().clause(g[i]);
    for (unsigned m : masks) {
      const int cost = std::popcount(m);
      if (p.tighten_beta_radius && dist + cost > radius) break;
      for (unsigned j = 0; j < clause.size(); ++j) {
        if (m >> j & 1u) state_.flip(clause[j].var());
      }
      if (beta_rec(g, masks, i + 1, dist + cost, radius, p)) return true;
      for (unsigned j = 0; j < clause.size(); ++j) {
        if (m >> j & 1u) state_.flip(clause[j].var());
      }
    }
    return false;
  }

  const detail::FormulaIndex& index_;
  detail::ClauseState state_;
  std::vector<std::uint8_t> fixed_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  SearchStats stats_;
};

void check_sound(const Formula& f, const std::optional<Assignment>& witness, const char* engine) {
  if (witness && !evaluate(f, *witness)) {
    throw std::logic_error(std::string(engine) + " returned a non-satisfying assignment");
  }
}

}  // namespace

BallSearcher::BallSearcher(const Formula& formula)
    : formula_(&formula), index_(std::make_unique<detail::FormulaIndex>(formula)) {}

BallSearcher::~BallSearcher() = default;

SearchOutcome BallSearcher::searchball(const Assignment& alpha, unsigned radius) {
  Engine engine(*index_, alpha);
  SearchOutcome out;
  if (engine.searchball(radius, 0, false)) out.witness = engine.assignment();
  out.stats = engine.stats();
  check_sound(*formula_, out.witness, "searchball");
  return out;
}

SearchOutcome BallSearcher::searchball_fast(const Assignment& alpha, unsigned radius,
                                            const FastParams& params) {
  params.validate();
  Engine engine(*index_, alpha);
  SearchOutcome out;
  if (engine.fast(static_cast<int>(radius), 0, params)) out.witness = engine.assignment();
  out.stats = engine.stats();
  check_sound(*formula_, out.witness, "searchball_fast");
  return out;
}

std::optional<Assignment> BallSearcher::walk(const Assignment& alpha, const WalkParams& params,
                                             std::uint64_t* steps_taken) {
  if (params.max_steps < 1) throw UsageError("walk needs max_steps >= 1");
  Engine engine(*index_, alpha);
  std::optional<Assignment> out;
  if (engine.walk(params, steps_taken)) out = engine.assignment();
  check_sound(*formula_, out, "schoening_walk");
  return out;
}

std::optional<Assignment> schoening_walk(const Formula& formula, const Assignment& alpha,
                                         const WalkParams& params, std::uint64_t* steps_taken) {
  return BallSearcher(formula).walk(alpha, params, steps_taken);
}

SearchOutcome searchball(const Formula& formula, const Assignment& alpha, unsigned radius) {
  return BallSearcher(formula).searchball(alpha, radius);
}

SearchOutcome searchball_fast(const Formula& formula, const Assignment& alpha, unsigned radius,
                              const FastParams& params) {
  return BallSearcher(formula).searchball_fast(alpha, radius, params);
}

std::vector<std::size_t> maximal_disjoint_unsat(const Formula& formula, const Assignment& alpha,
                                                unsigned k) {
  if (alpha.size() != formula.num_vars()) {
    throw UsageError("assignment size does not match formula");
  }
  std::vector<std::uint8_t> used(formula.num_vars() + 1, 0);
  std::vector<std::size_t> g;
  for (std::size_t c = 0; c < formula.num_clauses(); ++c) {
    const Clause& clause = formula.clause(c);
    if (clause.size() != k || satisfies(clause, alpha)) continue;
    if (std::any_of(clause.begin(), clause.end(), [&](Literal l) { return used[l.var()]; })) {
      continue;
    }
    for (Literal l : clause) used[l.var()] = 1;
    g.push_back(c);
  }
  return g;
}

Assignment apply_codeword(const Assignment& alpha, std::span<const Clause> clauses,
                          const KaryWord& w) {
  if (clauses.size() != w.size()) throw UsageError("apply_codeword: |H| != |w|");
  Assignment out = alpha;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (w[i] < 1 || w[i] > clauses[i].size()) {
      throw UsageError("apply_codeword: symbol " + std::to_string(w[i]) + " exceeds clause width " +
                       std::to_string(clauses[i].size()));
    }
    const Var v = clauses[i][w[i] - 1u].var();
    if (v > out.size()) throw UsageError("apply_codeword: variable out of range");
    out.flip(v);
  }
  return out;
}

}  // namespace ballsat
