#include "ballsat/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "ballsat/error.hpp"

namespace ballsat {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMissingHeader: return "missing header";
    case ParseErrorKind::kMalformedHeader: return "malformed header";
    case ParseErrorKind::kDuplicateHeader: return "duplicate header";
    case ParseErrorKind::kInvalidToken: return "invalid token";
    case ParseErrorKind::kVariableOutOfRange: return "variable out of range";
    case ParseErrorKind::kValueOutOfDomain: return "value out of domain";
    case ParseErrorKind::kMalformedPair: return "malformed pair";
    case ParseErrorKind::kMissingTerminator: return "missing terminator";
    case ParseErrorKind::kEmptyConstraint: return "empty constraint";
    case ParseErrorKind::kSizeMismatch: return "size mismatch";
    case ParseErrorKind::kDuplicateWord: return "duplicate word";
  }
  return "unknown parse error";
}

Literal Literal::from_dimacs(int value) {
  if (value == 0 || value == std::numeric_limits<int>::min()) {
    throw UsageError("invalid DIMACS literal " + std::to_string(value));
  }
  return Literal(static_cast<Var>(std::abs(value)), value < 0);
}

int Literal::to_dimacs() const {
  const int v = static_cast<int>(var_);
  return negated_ ? -v : v;
}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (literals_[i].var() == 0) throw UsageError("literal over variable 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (literals_[i].var() == literals_[j].var()) {
        throw UsageError("clause mentions variable " +
                         std::to_string(literals_[i].var()) + " twice");
      }
    }
  }
}

bool Clause::contains(Literal lit) const {
  return std::find(literals_.begin(), literals_.end(), lit) != literals_.end();
}

bool Clause::mentions(Var var) const {
  return std::any_of(literals_.begin(), literals_.end(),
                     [var](Literal l) { return l.var() == var; });
}

Formula::Formula(std::size_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (const Clause& c : clauses_) {
    for (Literal l : c) {
      if (l.var() > num_vars_) {
        throw UsageError("variable " + std::to_string(l.var()) +
                         " exceeds num_vars " + std::to_string(num_vars_));
      }
    }
    max_width_ = std::max(max_width_, c.size());
  }
}

bool Formula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.empty(); });
}

Assignment Assignment::from_string(std::string_view bits) {
  Assignment a(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw UsageError("assignment strings use only '0' and '1'");
    }
    a.values_[i] = bits[i] == '1' ? 1 : 0;
  }
  return a;
}

std::string Assignment::to_string() const {
  std::string s(values_.size(), '0');
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i]) s[i] = '1';
  }
  return s;
}

std::optional<bool> PartialAssignment::value(Var v) const {
  if (!contains(v)) return std::nullopt;
  return values_[v - 1] == 1;
}

std::vector<Var> PartialAssignment::domain() const {
  std::vector<Var> vars;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != kUnset) vars.push_back(static_cast<Var>(i + 1));
  }
  return vars;
}

bool satisfies(const Clause& clause, const Assignment& alpha) {
  return std::any_of(clause.begin(), clause.end(),
                     [&](Literal l) { return alpha.satisfies(l); });
}

namespace {

void check_total(const Formula& formula, const Assignment& alpha) {
  if (alpha.size() != formula.num_vars()) {
    throw UsageError("assignment over " + std::to_string(alpha.size()) +
                     " variables, formula has " +
                     std::to_string(formula.num_vars()));
  }
}

}  // namespace

bool evaluate(const Formula& formula, const Assignment& alpha) {
  return !first_unsatisfied_clause(formula, alpha).has_value();
}

std::optional<std::size_t> first_unsatisfied_clause(const Formula& formula,
                                                    const Assignment& alpha) {
  check_total(formula, alpha);
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    if (!satisfies(formula.clause(i), alpha)) return i;
  }
  return std::nullopt;
}

std::size_t hamming_distance(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) {
    throw UsageError("hamming_distance over different variable counts");
  }
  std::size_t d = 0;
  for (Var v = 1; v <= a.size(); ++v) {
    if (a.value(v) != b.value(v)) ++d;
  }
  return d;
}

Formula assign_literal(const Formula& formula, Literal u) {
  PartialAssignment beta(formula.num_vars());
  if (u.var() == 0 || u.var() > formula.num_vars()) {
    throw UsageError("assign_literal: variable out of range");
  }
  beta.assign(u);
  return restrict(formula, beta);
}

Formula restrict(const Formula& formula, const PartialAssignment& beta) {
  if (beta.num_vars() > formula.num_vars()) {
    throw UsageError("restriction domain exceeds num_vars");
  }
  std::vector<Clause> out;
  out.reserve(formula.num_clauses());
  for (const Clause& c : formula.clauses()) {
    bool satisfied = false;
    std::vector<Literal> kept;
    kept.reserve(c.size());
    for (Literal l : c) {
      const auto value = beta.value(l.var());
      if (!value) {
        kept.push_back(l);
      } else if (l.satisfied_by(*value)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.emplace_back(std::move(kept));
  }
  return Formula(formula.num_vars(), std::move(out));
}

}  // namespace ballsat
