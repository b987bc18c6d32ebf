#pragma once

// Wire formats. All parsers accept LF or CRLF, report failures as ParseError
// (with a 1-based line number), and never crash on arbitrary bytes.
//
// DIMACS CNF   "p cnf <vars> <clauses>", 0-terminated clauses, 'c' comments.
// CSP          "p csp <d> <vars> <constraints>", each constraint a list of
//              "<var> <value>" pairs meaning (x_var != value), 0-terminated.
// Code file    "<q> <t> <r> <size>" then one word per line, t symbols in 1..q.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ballsat/cnf.hpp"
#include "ballsat/covering_code.hpp"
#include "ballsat/csp.hpp"

namespace ballsat {

struct DimacsDocument {
  std::size_t declared_vars = 0;
  std::size_t declared_clauses = 0;
  /// Raw clauses as read, without the terminating 0.
  std::vector<std::vector<int>> clauses;
  std::vector<std::string> warnings;
};

/// Syntax-level parse. A clause-count mismatch with the header is a warning;
/// a literal above the declared variable count is an error.
DimacsDocument parse_dimacs_document(std::string_view text);

/// Builds a Formula: duplicate literals are merged, clauses containing both
/// x and ~x are dropped.
Formula to_formula(const DimacsDocument& doc);

Formula parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string write_dimacs(const Formula& formula);

/// Constraints repeating a literal are merged; constraints with two literals
/// over one variable (x != a or x != b, a != b) are always true and dropped.
CspFormula parse_csp(std::string_view text);
std::string write_csp(const CspFormula& formula);

/// The returned code has verified = false.
CoveringCode read_code(std::string_view text);
std::string write_code(const CoveringCode& code);

/// "cnf" or "csp" from the first problem line, or "" if neither is found.
std::string sniff_format(std::string_view text);

}  // namespace ballsat
