#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "ballsat/ball_search.hpp"
#include "ballsat/cnf.hpp"

namespace ballsat {

enum class SolveMode { kDeterministic, kRandomized, kBrute };
enum class SolveStatus { kSat, kUnsat, kUnknown };

const char* to_string(SolveMode mode);
const char* to_string(SolveStatus status);

/// Caps for the oracles and the randomized trial budget.
inline constexpr std::size_t kBruteForceMaxVars = 24;
inline constexpr std::uint64_t kTrialCapLimit = 100'000'000;

struct SolverConfig {
  SolveMode mode = SolveMode::kDeterministic;
  /// Inner code block size; 0 picks FastParams::default_t(k).
  unsigned t = 0;
  double epsilon = 0.1;
  /// Outer Boolean block length; 0 picks min(n, 12).
  unsigned block_len = 0;
  /// Outer radius fraction; 0 picks 1 / (k - 1 + epsilon + 1).
  double rho = 0.0;
  std::uint64_t seed = 0;
  /// Randomized trials; 0 picks ceil(20 (2(k-1)/k)^n), capped at 10^8.
  std::uint64_t trial_cap = 0;
  /// Worker threads for the outer codeword loop (and the CSP box loop).
  unsigned jobs = 1;
  /// CSP only: block length of the greedy 2-box cover for odd d.
  unsigned box_block_len = 4;

  /// Throws UsageError on epsilon <= 0, rho outside (0, 1/2], block_len > 20
  /// or jobs == 0 (zero-valued knobs mean "auto").
  void validate() const;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kUnknown;
  std::optional<Assignment> witness;
  SearchStats stats;
  std::uint64_t codewords_tried = 0;
  std::uint64_t outer_code_size = 0;
  std::uint64_t trials = 0;
  unsigned k = 0;
  unsigned t = 0;
  unsigned outer_radius = 0;
  double wall_time_s = 0.0;
};

/// Effective rho for a formula of width k.
double default_rho(unsigned k, double epsilon);
/// ceil(20 (2(k-1)/k)^n) capped at kTrialCapLimit.
std::uint64_t default_trial_cap(unsigned k, std::size_t n);

/// Lexicographic enumeration of all 2^n assignments (x1 most significant).
/// Throws ResourceError for n > 24.
SolveResult brute_force(const Formula& formula);

/// Complete: a Boolean covering code of {0,1}^n with realized radius R is
/// built first, then searchball_fast(F, gamma, R) runs from every codeword
/// gamma until one returns a witness. Width k <= 2 goes to brute force when
/// n <= 24 and to the engine with k = 3 otherwise.
SolveResult solve_deterministic(const Formula& formula, const SolverConfig& cfg);

/// Monte-Carlo: repeats (uniform alpha, schoening_walk) up to the trial cap;
/// reports unknown, never unsat, when no trial succeeds.
SolveResult solve_schoening(const Formula& formula, const SolverConfig& cfg);

/// Dispatches on cfg.mode.
SolveResult solve(const Formula& formula, const SolverConfig& cfg);

}  // namespace ballsat
