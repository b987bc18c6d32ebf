#pragma once

// Immutable CNF data model: literals, clauses, formulas, (partial) truth
// assignments, and formula restriction F^[beta].

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ballsat {

/// Variables are numbered 1..n as in DIMACS.
using Var = std::uint32_t;

class Literal {
 public:
  constexpr Literal(Var var, bool negated) : var_(var), negated_(negated) {}

  /// From a non-zero DIMACS integer (-3 is the complement of x3).
  static Literal from_dimacs(int value);

  constexpr Var var() const { return var_; }
  constexpr bool negated() const { return negated_; }
  constexpr bool positive() const { return !negated_; }
  constexpr Literal operator~() const { return Literal(var_, !negated_); }
  int to_dimacs() const;

  /// True if the literal holds when its variable takes `value`.
  constexpr bool satisfied_by(bool value) const { return value != negated_; }

  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;

 private:
  Var var_;
  bool negated_;
};

constexpr Literal pos(Var v) { return Literal(v, false); }
constexpr Literal neg(Var v) { return Literal(v, true); }

/// A disjunction of literals over pairwise distinct variables. Literal order is
/// the input order and is significant: "the i-th literal" of a clause is used
/// by codeword application.
class Clause {
 public:
  Clause() = default;
  /// Throws UsageError if two literals share a variable or a variable is 0.
  explicit Clause(std::vector<Literal> literals);
  Clause(std::initializer_list<Literal> literals)
      : Clause(std::vector<Literal>(literals)) {}

  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  const Literal& operator[](std::size_t i) const { return literals_[i]; }
  std::span<const Literal> literals() const { return literals_; }
  auto begin() const { return literals_.begin(); }
  auto end() const { return literals_.end(); }

  bool contains(Literal lit) const;
  bool mentions(Var var) const;

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> literals_;
};

class Formula {
 public:
  Formula() = default;
  /// Throws UsageError if a literal refers to a variable above num_vars.
  Formula(std::size_t num_vars, std::vector<Clause> clauses);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  /// Maximum clause length (the k of a (<=k)-CNF); 0 for the empty formula.
  std::size_t max_width() const { return max_width_; }
  bool has_empty_clause() const;

  const Clause& clause(std::size_t i) const { return clauses_[i]; }
  std::span<const Clause> clauses() const { return clauses_; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Clause> clauses_;
  std::size_t max_width_ = 0;
};

/// Total assignment over variables 1..n.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars, bool fill = false)
      : values_(num_vars, fill ? 1 : 0) {}
  /// From a 0/1 string, first character is x1.
  static Assignment from_string(std::string_view bits);

  std::size_t size() const { return values_.size(); }
  bool value(Var v) const { return values_[v - 1] != 0; }
  void set(Var v, bool value) { values_[v - 1] = value ? 1 : 0; }
  void flip(Var v) { values_[v - 1] ^= 1; }
  bool satisfies(Literal lit) const { return lit.satisfied_by(value(lit.var())); }

  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> values_;
};

/// Partial map from variables 1..n to {0,1}.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::size_t num_vars) : values_(num_vars, kUnset) {}

  std::size_t num_vars() const { return values_.size(); }
  void assign(Var v, bool value) { values_.at(v - 1) = value ? 1 : 0; }
  void assign(Literal lit) { assign(lit.var(), lit.positive()); }
  void unassign(Var v) { values_.at(v - 1) = kUnset; }
  bool contains(Var v) const { return v >= 1 && v <= values_.size() && values_[v - 1] != kUnset; }
  std::optional<bool> value(Var v) const;
  /// Assigned variables in increasing order.
  std::vector<Var> domain() const;

 private:
  static constexpr std::int8_t kUnset = -1;
  std::vector<std::int8_t> values_;
};

bool satisfies(const Clause& clause, const Assignment& alpha);

/// True iff every clause has a literal satisfied by alpha. Throws UsageError
/// if alpha is not over exactly F.num_vars() variables.
bool evaluate(const Formula& formula, const Assignment& alpha);

/// Lowest input-order index of a clause unsatisfied by alpha.
std::optional<std::size_t> first_unsatisfied_clause(const Formula& formula,
                                                    const Assignment& alpha);

std::size_t hamming_distance(const Assignment& a, const Assignment& b);

/// F^[u:=1]: clauses containing u are removed, ~u is deleted from the rest.
Formula assign_literal(const Formula& formula, Literal u);

/// F^[beta]; the result does not depend on the order in which beta's
/// variables are applied.
Formula restrict(const Formula& formula, const PartialAssignment& beta);

}  // namespace ballsat
