#pragma once

// (d, <=k)-CSP: constraints are disjunctions of literals (x_i != c). Solved by
// covering {1..d}^n with 2-boxes, reducing each box to a Boolean CNF, and
// running the deterministic k-SAT solver on every reduced formula.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ballsat/ball_search.hpp"
#include "ballsat/cnf.hpp"
#include "ballsat/sat_solver.hpp"

namespace ballsat {

/// The literal (x_var != value); values are 1..d.
struct CspLiteral {
  Var var = 0;
  unsigned value = 0;
  friend auto operator<=>(const CspLiteral&, const CspLiteral&) = default;
};

using CspConstraint = std::vector<CspLiteral>;

class CspFormula {
 public:
  CspFormula() = default;
  /// Throws UsageError on values outside [1..d], variables outside [1..n],
  /// empty constraints, or a variable repeated within a constraint.
  CspFormula(unsigned domain_size, std::size_t num_vars, std::vector<CspConstraint> constraints);

  unsigned domain_size() const { return d_; }
  std::size_t num_vars() const { return n_; }
  std::size_t max_width() const { return max_width_; }
  std::span<const CspConstraint> constraints() const { return constraints_; }

  friend bool operator==(const CspFormula&, const CspFormula&) = default;

 private:
  unsigned d_ = 2;
  std::size_t n_ = 0;
  std::vector<CspConstraint> constraints_;
  std::size_t max_width_ = 0;
};

/// d-ary assignment, values[i] is the value of x_{i+1}.
using CspAssignment = std::vector<unsigned>;

/// P_1 x ... x P_n with |P_i| = 2; each pair is stored (smaller, larger).
struct TwoBox {
  std::vector<std::pair<unsigned, unsigned>> pairs;

  bool contains(const CspAssignment& tau) const;
  friend bool operator==(const TwoBox&, const TwoBox&) = default;
};

/// A cover of {1..d}^n by 2-boxes, kept in product form: every combination of
/// one box per block is a box of the cover. Box i decodes in mixed radix with
/// the first block most significant.
class BoxCover {
 public:
  BoxCover() = default;
  BoxCover(unsigned d, std::vector<std::shared_ptr<const std::vector<TwoBox>>> blocks,
           bool verified);

  unsigned domain_size() const { return d_; }
  std::size_t num_vars() const { return n_; }
  std::uint64_t size() const { return size_; }
  bool verified() const { return verified_; }
  const std::vector<std::shared_ptr<const std::vector<TwoBox>>>& blocks() const {
    return blocks_;
  }

  TwoBox box(std::uint64_t i) const;
  /// Exhaustive check that every point of {1..d}^n lies in some box
  /// (cap d^n <= 10^6). Sets the verified flag.
  bool verify();

 private:
  unsigned d_ = 2;
  std::size_t n_ = 0;
  std::vector<std::shared_ptr<const std::vector<TwoBox>>> blocks_;
  std::uint64_t size_ = 1;
  bool verified_ = false;
};

bool csp_evaluate(const CspFormula& formula, const CspAssignment& tau);

/// Greedy set cover of {1..d}^b by all C(d,2)^b candidate 2-boxes; ties go to
/// the first candidate in lexicographic pair order. Caps: d <= 5, b <= 5.
std::vector<TwoBox> greedy_box_block(unsigned d, unsigned b);

/// Product of {2j-1, 2j} pairs for even d (size (d/2)^n); for odd d, greedy
/// blocks of length b plus a residual block. Verified exhaustively when
/// d^n <= 10^6, by construction otherwise.
BoxCover two_box_cover(unsigned d, std::size_t n, unsigned b = 4);

/// Boolean y_i is true iff x_i takes the larger value of P_i.
Formula restrict_to_box(const CspFormula& formula, const TwoBox& box);
CspAssignment decode_box_witness(const TwoBox& box, const Assignment& y);

struct CspSolveResult {
  SolveStatus status = SolveStatus::kUnknown;
  std::optional<CspAssignment> witness;
  SearchStats stats;
  std::uint64_t boxes_tried = 0;
  std::uint64_t cover_size = 0;
  double wall_time_s = 0.0;
};

/// Brute force over d^n assignments (cap 10^7), lexicographic order.
CspSolveResult brute_force_csp(const CspFormula& formula);

/// Deterministic unless cfg.mode is randomized, in which case each reduced
/// formula is solved with the randomized walk and unknown replaces unsat.
CspSolveResult solve_csp(const CspFormula& formula, const SolverConfig& cfg);

}  // namespace ballsat
