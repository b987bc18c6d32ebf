#pragma once

// Promise-ball search: given (F, alpha, r) such that some satisfying
// assignment lies within Hamming distance r of alpha, find a satisfying
// assignment. Three engines share one incremental clause-state core:
//
//   schoening_walk   randomized correction walk (Monte-Carlo baseline)
//   searchball       deterministic branching over an unsatisfied clause,
//                    at most k children per node, radius - 1 per level
//   searchball_fast  branches over the codewords of a k-ary covering code of
//                    radius ceil(t/k) applied to t disjoint unsatisfied
//                    k-clauses, radius - (t - 2 ceil(t/k)) per level

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ballsat/cnf.hpp"
#include "ballsat/covering_code.hpp"

namespace ballsat {

namespace detail {
class FormulaIndex;
}

struct SearchStats {
  /// Nodes and leaves of the engine's own recursion tree. For searchball_fast
  /// a leaf is any call that does not recurse into searchball_fast (including
  /// the calls that fall back to searchball); the nested searchball work is
  /// counted in the inner_* fields.
  std::uint64_t recursion_nodes = 0;
  std::uint64_t leaves = 0;
  unsigned max_depth = 0;
  std::uint64_t inner_nodes = 0;
  std::uint64_t inner_leaves = 0;
  /// Largest number of children of any searchball node.
  unsigned max_branching = 0;

  std::uint64_t total_nodes() const { return recursion_nodes + inner_nodes; }
  SearchStats& operator+=(const SearchStats& o);
};

struct SearchOutcome {
  std::optional<Assignment> witness;
  SearchStats stats;

  bool found() const { return witness.has_value(); }
};

struct WalkParams {
  std::uint64_t max_steps = 1;
  std::uint64_t rng_seed = 0;

  /// max_steps = 3n (at least 1).
  static WalkParams defaults_for(std::size_t num_vars, std::uint64_t seed);
};

struct FastParams {
  unsigned k = 3;
  unsigned t = 6;
  std::shared_ptr<const CoveringCode> code;
  /// When the disjoint set G is smaller than t, only enumerate assignments to
  /// vbl(G) that satisfy every clause of G.
  bool skip_unsatisfying_beta = true;
  /// Hand searchball the radius left after the flips beta makes on vbl(G)
  /// instead of the full radius.
  bool tighten_beta_radius = true;

  /// ceil(t/k), the code radius.
  unsigned code_radius() const { return (t + k - 1) / k; }
  /// t - 2 ceil(t/k), the guaranteed radius decrease per level.
  int delta() const { return static_cast<int>(t) - 2 * static_cast<int>(code_radius()); }

  /// Throws UsageError unless delta >= 1 and the code is a verified code over
  /// {1..k}^t with radius ceil(t/k).
  void validate() const;

  /// Uses the process-wide greedy code cache.
  static FastParams make(unsigned k, unsigned t);
  /// Default block size: 6 for k = 3; otherwise the largest t in
  /// {2k, k, k-1, ..., 3} with k^t <= 10^6 and delta >= 1.
  static unsigned default_t(unsigned k);
};

/// Up to max_steps correction steps from alpha: pick the first unsatisfied
/// clause, flip the variable of a uniformly random literal in it.
std::optional<Assignment> schoening_walk(const Formula& formula, const Assignment& alpha,
                                         const WalkParams& params,
                                         std::uint64_t* steps_taken = nullptr);

SearchOutcome searchball(const Formula& formula, const Assignment& alpha, unsigned radius);

SearchOutcome searchball_fast(const Formula& formula, const Assignment& alpha, unsigned radius,
                              const FastParams& params);

/// Greedy scan in clause order over width-exactly-k clauses unsatisfied by
/// alpha, keeping those variable-disjoint from everything kept so far.
std::vector<std::size_t> maximal_disjoint_unsat(const Formula& formula, const Assignment& alpha,
                                                unsigned k);

/// alpha[H, w]: flips the variable of the w_i-th literal (1-based) of H_i.
/// Throws UsageError if |H| != |w| or w_i exceeds |H_i|.
Assignment apply_codeword(const Assignment& alpha, std::span<const Clause> clauses,
                          const KaryWord& w);

/// Reusable engine bound to one formula; the free functions above construct
/// one per call. Not thread-safe: use one per worker.
class BallSearcher {
 public:
  explicit BallSearcher(const Formula& formula);
  ~BallSearcher();
  BallSearcher(const BallSearcher&) = delete;
  BallSearcher& operator=(const BallSearcher&) = delete;

  const Formula& formula() const { return *formula_; }

  SearchOutcome searchball(const Assignment& alpha, unsigned radius);
  SearchOutcome searchball_fast(const Assignment& alpha, unsigned radius,
                                const FastParams& params);
  std::optional<Assignment> walk(const Assignment& alpha, const WalkParams& params,
                                 std::uint64_t* steps_taken = nullptr);

 private:
  const Formula* formula_;
  std::unique_ptr<detail::FormulaIndex> index_;
};

}  // namespace ballsat
