#pragma once

// Planted promise instances and paired scaling runs of the ball-search
// engines, with a least-squares fit of the exponential base of the node
// counts.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ballsat/cnf.hpp"

namespace ballsat {

struct PlantedInstance {
  Formula formula;
  Assignment planted;
  Assignment start;
  /// hamming_distance(start, planted)
  std::size_t r = 0;
};

/// m clauses of width exactly k over k distinct variables, each sampled
/// uniformly among those satisfied by `planted`. start is planted with exactly
/// `flips` distinct variables flipped, or each variable flipped with
/// probability 1/2 when flips is empty.
PlantedInstance gen_planted(unsigned k, std::size_t n, std::size_t m, std::uint64_t seed,
                            std::optional<std::size_t> flips = std::nullopt);

enum class BenchEngine { kSearchball, kSearchballFast, kWalk };

const char* to_string(BenchEngine engine);
std::optional<BenchEngine> parse_bench_engine(std::string_view name);

struct BenchRecord {
  BenchEngine engine = BenchEngine::kSearchball;
  unsigned k = 3;
  std::size_t n = 0;
  unsigned r = 0;
  unsigned t = 0;
  std::size_t code_size = 0;
  std::uint64_t trial = 0;
  std::uint64_t leaves = 0;
  std::uint64_t nodes = 0;
  double wall_time_s = 0.0;
  bool found = false;
};

struct ScalingConfig {
  std::vector<BenchEngine> engines{BenchEngine::kSearchball, BenchEngine::kSearchballFast};
  unsigned k = 3;
  /// 0 picks max(3 * r_hi, 30).
  std::size_t n = 0;
  /// Clause density m / n.
  double density = 4.2;
  unsigned t = 6;
  unsigned r_lo = 4;
  unsigned r_hi = 14;
  std::uint64_t trials = 50;
  std::uint64_t seed = 1;
};

/// One record per (engine, r, trial); every engine sees the same planted
/// instance for a given (r, trial). Throws std::logic_error if a promise
/// instance is missed or a node-count envelope (searchball: leaves <= k^r;
/// searchball_fast: leaves <= |code|^ceil(r / delta)) is violated.
/// Records come back sorted by (engine, r, trial).
std::vector<BenchRecord> run_scaling(const ScalingConfig& cfg);

struct BaseFit {
  std::size_t points = 0;
  double slope = 0.0;
  double slope_se = 0.0;
  double base = 0.0;
  /// 95% interval for the base (t-distribution on the slope); equal to base
  /// when fewer than three points are available.
  double base_lo = 0.0;
  double base_hi = 0.0;
};

/// Least squares of log(mean leaves at r) against r over the records of one
/// engine.
BaseFit fit_exponential_base(const std::vector<BenchRecord>& records, BenchEngine engine,
                             bool use_total_nodes = false);

/// Header: engine,k,n,r,t,code_size,trial,leaves,nodes,wall_time_us,found
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace ballsat
