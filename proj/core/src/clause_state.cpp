#include "clause_state.hpp"

#include <algorithm>

#include "ballsat/error.hpp"

namespace ballsat::detail {

FormulaIndex::FormulaIndex(const Formula& formula) : formula_(&formula) {
  const std::size_t slots = 2 * formula.num_vars();
  std::vector<std::size_t> counts(slots, 0);
  for (const Clause& c : formula.clauses()) {
    for (Literal l : c) ++counts[slot_of(l)];
  }
  occ_start_.assign(slots + 1, 0);
  for (std::size_t s = 0; s < slots; ++s) occ_start_[s + 1] = occ_start_[s] + counts[s];
  occ_.resize(occ_start_[slots]);
  std::vector<std::size_t> fill(occ_start_.begin(), occ_start_.end() - 1);
  for (std::size_t ci = 0; ci < formula.num_clauses(); ++ci) {
    for (Literal l : formula.clause(ci)) {
      occ_[fill[slot_of(l)]++] = static_cast<std::uint32_t>(ci);
    }
  }
}

ClauseState::ClauseState(const FormulaIndex& index, const Assignment& alpha)
    : index_(&index),
      true_count_(index.num_clauses(), 0),
      unsat_bits_((index.num_clauses() + 63) / 64, 0) {
  reset(alpha);
}

void ClauseState::reset(const Assignment& alpha) {
  if (alpha.size() != index_->num_vars()) {
    throw UsageError("assignment size does not match formula");
  }
  alpha_ = alpha;
  std::fill(unsat_bits_.begin(), unsat_bits_.end(), 0);
  num_unsat_ = 0;
  const Formula& f = index_->formula();
  for (std::size_t c = 0; c < f.num_clauses(); ++c) {
    std::uint32_t n = 0;
    for (Literal l : f.clause(c)) n += alpha_.satisfies(l) ? 1 : 0;
    true_count_[c] = n;
    if (n == 0) mark_unsat(c);
  }
}

void ClauseState::flip(Var v) {
  // The literal over v that is currently true becomes false and vice versa.
  const Literal was_true(v, alpha_.value(v) ? false : true);
  alpha_.flip(v);
  for (std::uint32_t c : index_->occurrences(was_true)) {
    if (--true_count_[c] == 0) mark_unsat(c);
  }
  for (std::uint32_t c : index_->occurrences(~was_true)) {
    if (true_count_[c]++ == 0) mark_sat(c);
  }
}

}  // namespace ballsat::detail
