#include "ballsat/sat_solver.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "ballsat/covering_code.hpp"
#include "ballsat/error.hpp"
#include "ballsat/rng.hpp"
#include "clause_state.hpp"

namespace ballsat {

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::kDeterministic: return "deterministic";
    case SolveMode::kRandomized: return "randomized";
    case SolveMode::kBrute: return "brute";
  }
  return "?";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSat: return "sat";
    case SolveStatus::kUnsat: return "unsat";
    case SolveStatus::kUnknown: return "unknown";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
  if (rho != 0.0 && !(rho > 0.0 && rho <= 0.5)) throw UsageError("rho must lie in (0, 1/2]");
  if (block_len > 20) throw UsageError("block length must be at most 20");
  if (jobs == 0) throw UsageError("jobs must be at least 1");
}

double default_rho(unsigned k, double epsilon) {
  const double a = static_cast<double>(k) - 1.0 + epsilon;
  return std::min(0.5, 1.0 / (a + 1.0));
}

std::uint64_t default_trial_cap(unsigned k, std::size_t n) {
  const double base = 2.0 * (static_cast<double>(k) - 1.0) / static_cast<double>(k);
  const double trials = std::ceil(20.0 * std::pow(base, static_cast<double>(n)));
  if (!(trials < static_cast<double>(kTrialCapLimit))) return kTrialCapLimit;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(trials));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SolveResult brute_force(const Formula& formula) {
  const auto start = Clock::now();
  const std::size_t n = formula.num_vars();
  if (n > kBruteForceMaxVars) {
    throw ResourceError("brute force is capped at " + std::to_string(kBruteForceMaxVars) +
                        " variables");
  }
  SolveResult result;
  result.k = static_cast<unsigned>(formula.max_width());
  detail::FormulaIndex index(formula);
  detail::ClauseState state(index, Assignment(n));
  for (;;) {
    ++result.stats.recursion_nodes;
    if (state.all_satisfied()) {
      result.status = SolveStatus::kSat;
      result.witness = state.assignment();
      break;
    }
    // Increment with x_n least significant.
    Var v = static_cast<Var>(n);
    while (v >= 1 && state.value(v)) {
      state.flip(v);
      --v;
    }
    if (v == 0) {
      result.status = SolveStatus::kUnsat;
      break;
    }
    state.flip(v);
  }
  result.stats.leaves = result.stats.recursion_nodes;
  result.wall_time_s = seconds_since(start);
  return result;
}

SolveResult solve_deterministic(const Formula& formula, const SolverConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  const std::size_t n = formula.num_vars();
  const unsigned width = static_cast<unsigned>(formula.max_width());

  if (width <= 2 && n <= kBruteForceMaxVars) {
    SolveResult r = brute_force(formula);
    r.wall_time_s = seconds_since(start);
    return r;
  }

  const unsigned k = std::max(width, 3u);
  const unsigned t = cfg.t != 0 ? cfg.t : FastParams::default_t(k);
  const double rho = cfg.rho != 0.0 ? cfg.rho : default_rho(k, cfg.epsilon);
  const unsigned b = cfg.block_len != 0
                         ? cfg.block_len
                         : static_cast<unsigned>(std::clamp<std::size_t>(n, 1, 12));

  // Configuration errors surface here, before any search.
  const FastParams fp = FastParams::make(k, t);
  const BlockCover cover = boolean_block_cover(n, rho, b);
  if (!cover.verified()) throw std::logic_error("outer cover is not verified");

  SolveResult result;
  result.k = k;
  result.t = t;
  result.outer_radius = cover.radius();
  result.outer_code_size = cover.size();

  if (formula.has_empty_clause()) {
    result.status = SolveStatus::kUnsat;
    result.wall_time_s = seconds_since(start);
    return result;
  }

  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{kNone};
  std::mutex mu;
  std::optional<Assignment> best_witness;

  auto run_worker = [&] {
    BallSearcher searcher(formula);
    SearchStats local;
    std::uint64_t tried = 0;
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= cover.size() || i > best.load()) break;
      SearchOutcome out = searcher.searchball_fast(cover.assignment(i), cover.radius(), fp);
      local += out.stats;
      ++tried;
      if (out.found()) {
        std::lock_guard lock(mu);
        if (i < best.load()) {
          best.store(i);
          best_witness = std::move(out.witness);
        }
        break;
      }
    }
    std::lock_guard lock(mu);
    result.stats += local;
    result.codewords_tried += tried;
  };
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      run_worker();
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };

  if (cfg.jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < cfg.jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  if (best_witness) {
    result.status = SolveStatus::kSat;
    result.witness = std::move(best_witness);
  } else {
    result.status = SolveStatus::kUnsat;
  }
  result.wall_time_s = seconds_since(start);
  return result;
}

SolveResult solve_schoening(const Formula& formula, const SolverConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  const std::size_t n = formula.num_vars();
  const unsigned k = std::max(static_cast<unsigned>(formula.max_width()), 3u);
  const std::uint64_t cap = cfg.trial_cap != 0 ? cfg.trial_cap : default_trial_cap(k, n);

  SolveResult result;
  result.k = k;
  BallSearcher searcher(formula);
  for (std::uint64_t trial = 0; trial < cap; ++trial) {
    const std::uint64_t seed = derive_seed(cfg.seed, trial);
    Rng rng(seed);
    Assignment alpha(n);
    for (Var v = 1; v <= n; ++v) alpha.set(v, (rng() >> 63) != 0);
    std::uint64_t steps = 0;
    auto found = searcher.walk(alpha, WalkParams::defaults_for(n, derive_seed(seed, 1)), &steps);
    ++result.trials;
    result.stats.recursion_nodes += steps;
    if (found) {
      result.status = SolveStatus::kSat;
      result.witness = std::move(found);
      break;
    }
  }
  if (!result.witness) result.status = SolveStatus::kUnknown;
  result.wall_time_s = seconds_since(start);
  return result;
}

SolveResult solve(const Formula& formula, const SolverConfig& cfg) {
  switch (cfg.mode) {
    case SolveMode::kDeterministic: return solve_deterministic(formula, cfg);
    case SolveMode::kRandomized: return solve_schoening(formula, cfg);
    case SolveMode::kBrute: return brute_force(formula);
  }
  throw UsageError("unknown solve mode");
}

}  // namespace ballsat
