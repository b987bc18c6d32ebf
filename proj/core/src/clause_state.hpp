#pragma once

// Incremental clause bookkeeping shared by the search engines and the
// brute-force oracle: per-clause true-literal counts and an unsatisfied-clause
// bitset, updated in O(occurrences) per flip.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ballsat/cnf.hpp"

namespace ballsat::detail {

class FormulaIndex {
 public:
  explicit FormulaIndex(const Formula& formula);

  const Formula& formula() const { return *formula_; }
  std::size_t num_vars() const { return formula_->num_vars(); }
  std::size_t num_clauses() const { return formula_->num_clauses(); }

  std::span<const std::uint32_t> occurrences(Literal lit) const {
    const std::size_t slot = slot_of(lit);
    return {occ_.data() + occ_start_[slot], occ_start_[slot + 1] - occ_start_[slot]};
  }

 private:
  static std::size_t slot_of(Literal lit) {
    return 2 * (lit.var() - 1) + (lit.negated() ? 1 : 0);
  }

  const Formula* formula_;
  std::vector<std::uint32_t> occ_;
  std::vector<std::size_t> occ_start_;
};

class ClauseState {
 public:
  ClauseState(const FormulaIndex& index, const Assignment& alpha);

  void reset(const Assignment& alpha);

  const Assignment& assignment() const { return alpha_; }
  bool value(Var v) const { return alpha_.value(v); }
  bool satisfies(Literal lit) const { return alpha_.satisfies(lit); }
  void flip(Var v);

  std::size_t num_unsat() const { return num_unsat_; }
  bool all_satisfied() const { return num_unsat_ == 0; }
  bool clause_satisfied(std::size_t c) const { return true_count_[c] > 0; }

  std::optional<std::size_t> first_unsat() const {
    if (num_unsat_ == 0) return std::nullopt;
    for (std::size_t w = 0; w < unsat_bits_.size(); ++w) {
      if (unsat_bits_[w] != 0) {
        return w * 64 + static_cast<std::size_t>(std::countr_zero(unsat_bits_[w]));
      }
    }
    return std::nullopt;
  }

  /// Visits unsatisfied clauses in increasing index order until fn returns false.
  template <typename Fn>
  void for_each_unsat(Fn&& fn) const {
    for (std::size_t w = 0; w < unsat_bits_.size(); ++w) {
      std::uint64_t bits = unsat_bits_[w];
      while (bits != 0) {
        const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        if (!fn(c)) return;
        bits &= bits - 1;
      }
    }
  }

 private:
  void mark_unsat(std::size_t c) {
    unsat_bits_[c / 64] |= std::uint64_t{1} << (c % 64);
    ++num_unsat_;
  }
  void mark_sat(std::size_t c) {
    unsat_bits_[c / 64] &= ~(std::uint64_t{1} << (c % 64));
    --num_unsat_;
  }

  const FormulaIndex* index_;
  Assignment alpha_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::uint64_t> unsat_bits_;
  std::size_t num_unsat_ = 0;
};

}  // namespace ballsat::detail
