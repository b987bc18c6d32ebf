#include "ballsat/formats.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "ballsat/error.hpp"

namespace ballsat {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

/// Splits text into lines (LF-terminated, CR stripped) and lines into tokens.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next() {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line_ = text_.substr(pos_, end - pos_);
    while (!line_.empty() && line_.back() == '\r') line_.remove_suffix(1);
    pos_ = end + 1;
    ++number_;
    return true;
  }

  std::size_t number() const { return number_; }
  std::string_view line() const { return line_; }

  std::vector<std::string_view> tokens() const {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line_.size()) {
      while (i < line_.size() && is_space(line_[i])) ++i;
      const std::size_t start = i;
      while (i < line_.size() && !is_space(line_[i])) ++i;
      if (i > start) out.push_back(line_.substr(start, i - start));
    }
    return out;
  }

  /// First non-blank character, or '\0'.
  char lead() const {
    for (char c : line_) {
      if (!is_space(c)) return c;
    }
    return '\0';
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
  std::string_view line_;
};

std::string printable(std::string_view token) {
  std::string out;
  for (char c : token.substr(0, 32)) {
    const auto u = static_cast<unsigned char>(c);
    out += (u >= 0x20 && u < 0x7f) ? c : '?';
  }
  return out;
}

long long parse_int(std::string_view token, std::size_t line) {
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(ParseErrorKind::kInvalidToken, line, "'" + printable(token) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view token, std::size_t line, long long max) {
  long long v = 0;
  try {
    v = parse_int(token, line);
  } catch (const ParseError&) {
    throw ParseError(ParseErrorKind::kMalformedHeader, line, "'" + printable(token) + "'");
  }
  if (v < 0 || v > max) {
    throw ParseError(ParseErrorKind::kMalformedHeader, line, "'" + printable(token) + "'");
  }
  return static_cast<std::size_t>(v);
}

// Variable counts above 2^24 are rejected as malformed headers.
constexpr long long kMaxVars = 1LL << 24;
constexpr long long kMaxCount = 1LL << 40;

}  // namespace

DimacsDocument parse_dimacs_document(std::string_view text) {
  DimacsDocument doc;
  LineReader in(text);
  bool header = false;
  std::vector<int> clause;
  std::size_t clause_line = 0;
  while (in.next()) {
    const char lead = in.lead();
    if (lead == '\0' || lead == 'c') continue;
    if (lead == '%') break;  // SATLIB end marker
    if (lead == 'p') {
      if (header) throw ParseError(ParseErrorKind::kDuplicateHeader, in.number(), "");
      const auto tok = in.tokens();
      if (tok.size() != 4 || tok[0] != "p" || tok[1] != "cnf") {
        throw ParseError(ParseErrorKind::kMalformedHeader, in.number(), "expected 'p cnf <vars> <clauses>'");
      }
      doc.declared_vars = parse_count(tok[2], in.number(), kMaxVars);
      doc.declared_clauses = parse_count(tok[3], in.number(), kMaxCount);
      header = true;
      continue;
    }
    if (!header) throw ParseError(ParseErrorKind::kMissingHeader, in.number(), "clause before 'p cnf' line");
    for (std::string_view tok : in.tokens()) {
      const long long v = parse_int(tok, in.number());
      if (v == 0) {
        doc.clauses.push_back(std::move(clause));
        clause.clear();
        continue;
      }
      if (clause.empty()) clause_line = in.number();
      const long long mag = v < 0 ? -v : v;
      if (mag > static_cast<long long>(doc.declared_vars)) {
        throw ParseError(ParseErrorKind::kVariableOutOfRange, in.number(),
                         "variable " + std::to_string(mag) + " > " +
                             std::to_string(doc.declared_vars));
      }
      clause.push_back(static_cast<int>(v));
    }
  }
  if (!header) throw ParseError(ParseErrorKind::kMissingHeader, in.number(), "no 'p cnf' line");
  if (!clause.empty()) {
    throw ParseError(ParseErrorKind::kMissingTerminator, clause_line, "clause not terminated by 0");
  }
  if (doc.clauses.size() != doc.declared_clauses) {
    doc.warnings.push_back("header declares " + std::to_string(doc.declared_clauses) +
                           " clauses, found " + std::to_string(doc.clauses.size()));
  }
  return doc;
}

Formula to_formula(const DimacsDocument& doc) {
  std::vector<Clause> clauses;
  clauses.reserve(doc.clauses.size());
  for (const auto& raw : doc.clauses) {
    std::vector<Literal> lits;
    bool tautology = false;
    for (int x : raw) {
      const Literal l = Literal::from_dimacs(x);
      if (std::find(lits.begin(), lits.end(), l) != lits.end()) continue;
      if (std::find(lits.begin(), lits.end(), ~l) != lits.end()) {
        tautology = true;
        break;
      }
      lits.push_back(l);
    }
    if (!tautology) clauses.emplace_back(std::move(lits));
  }
  return Formula(doc.declared_vars, std::move(clauses));
}

Formula parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
  DimacsDocument doc = parse_dimacs_document(text);
  if (warnings) *warnings = doc.warnings;
  return to_formula(doc);
}

std::string write_dimacs(const Formula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const Clause& c : formula.clauses()) {
    for (Literal l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

CspFormula parse_csp(std::string_view text) {
  LineReader in(text);
  bool header = false;
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<CspConstraint> constraints;
  std::vector<std::vector<CspLiteral>> raw;
  CspConstraint current;
  std::size_t current_line = 0;
  bool want_value = false;
  Var pending_var = 0;

  while (in.next()) {
    const char lead = in.lead();
    if (lead == '\0' || lead == 'c') continue;
    if (lead == 'p') {
      if (header) throw ParseError(ParseErrorKind::kDuplicateHeader, in.number(), "");
      const auto tok = in.tokens();
      if (tok.size() != 5 || tok[0] != "p" || tok[1] != "csp") {
        throw ParseError(ParseErrorKind::kMalformedHeader, in.number(),
                         "expected 'p csp <d> <vars> <constraints>'");
      }
      d = parse_count(tok[2], in.number(), 255);
      n = parse_count(tok[3], in.number(), kMaxVars);
      parse_count(tok[4], in.number(), kMaxCount);
      if (d < 1) throw ParseError(ParseErrorKind::kMalformedHeader, in.number(), "domain size 0");
      header = true;
      continue;
    }
    if (!header) throw ParseError(ParseErrorKind::kMissingHeader, in.number(), "constraint before 'p csp' line");
    for (std::string_view tok : in.tokens()) {
      const long long v = parse_int(tok, in.number());
      if (want_value) {
        if (v == 0) {
          throw ParseError(ParseErrorKind::kMalformedPair, in.number(),
                           "variable " + std::to_string(pending_var) + " has no value");
        }
        if (v < 1 || v > static_cast<long long>(d)) {
          throw ParseError(ParseErrorKind::kValueOutOfDomain, in.number(),
                           "value " + std::to_string(v) + " outside [1.." + std::to_string(d) + "]");
        }
        current.push_back(CspLiteral{pending_var, static_cast<unsigned>(v)});
        want_value = false;
        continue;
      }
      if (v == 0) {
        if (current.empty()) throw ParseError(ParseErrorKind::kEmptyConstraint, in.number(), "");
        raw.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (v < 0 || v > static_cast<long long>(n)) {
        throw ParseError(ParseErrorKind::kVariableOutOfRange, in.number(),
                         "variable " + std::to_string(v));
      }
      if (current.empty()) current_line = in.number();
      pending_var = static_cast<Var>(v);
      want_value = true;
    }
  }
  if (!header) throw ParseError(ParseErrorKind::kMissingHeader, in.number(), "no 'p csp' line");
  if (want_value) {
    throw ParseError(ParseErrorKind::kMalformedPair, in.number(),
                     "variable " + std::to_string(pending_var) + " has no value");
  }
  if (!current.empty()) {
    throw ParseError(ParseErrorKind::kMissingTerminator, current_line, "constraint not terminated by 0");
  }

  for (auto& c : raw) {
    CspConstraint merged;
    bool always_true = false;
    for (const CspLiteral& l : c) {
      auto same_var = std::find_if(merged.begin(), merged.end(),
                                   [&](const CspLiteral& m) { return m.var == l.var; });
      if (same_var == merged.end()) {
        merged.push_back(l);
      } else if (same_var->value != l.value) {
        always_true = true;
        break;
      }
    }
    if (!always_true) constraints.push_back(std::move(merged));
  }
  return CspFormula(static_cast<unsigned>(d), n, std::move(constraints));
}

std::string write_csp(const CspFormula& formula) {
  std::ostringstream out;
  out << "p csp " << formula.domain_size() << ' ' << formula.num_vars() << ' '
      << formula.constraints().size() << '\n';
  for (const CspConstraint& c : formula.constraints()) {
    for (const CspLiteral& l : c) out << l.var << ' ' << l.value << ' ';
    out << "0\n";
  }
  return out.str();
}

CoveringCode read_code(std::string_view text) {
  LineReader in(text);
  CoveringCode code;
  bool header = false;
  std::size_t expected = 0;
  std::set<KaryWord> seen;
  while (in.next()) {
    const auto tok = in.tokens();
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 4) {
        throw ParseError(ParseErrorKind::kMalformedHeader, in.number(), "expected '<q> <t> <r> <size>'");
      }
      code.q = static_cast<unsigned>(parse_count(tok[0], in.number(), kMaxAlphabet));
      code.t = static_cast<unsigned>(parse_count(tok[1], in.number(), 64));
      code.r = static_cast<unsigned>(parse_count(tok[2], in.number(), 64));
      expected = parse_count(tok[3], in.number(), kMaxCount);
      if (code.q < 2 || code.t < 1 || code.r > code.t) {
        throw ParseError(ParseErrorKind::kMalformedHeader, in.number(),
                         "need q >= 2, t >= 1, r <= t");
      }
      header = true;
      continue;
    }
    if (tok.size() != code.t) {
      throw ParseError(ParseErrorKind::kSizeMismatch, in.number(),
                       "word has " + std::to_string(tok.size()) + " symbols, expected " +
                           std::to_string(code.t));
    }
    if (code.words.size() >= expected) {
      throw ParseError(ParseErrorKind::kSizeMismatch, in.number(), "more words than declared");
    }
    KaryWord w(code.t);
    for (std::size_t i = 0; i < tok.size(); ++i) {
      const long long s = parse_int(tok[i], in.number());
      if (s < 1 || s > static_cast<long long>(code.q)) {
        throw ParseError(ParseErrorKind::kValueOutOfDomain, in.number(),
                         "symbol " + std::to_string(s) + " outside [1.." + std::to_string(code.q) + "]");
      }
      w[i] = static_cast<std::uint8_t>(s);
    }
    if (!seen.insert(w).second) throw ParseError(ParseErrorKind::kDuplicateWord, in.number(), "");
    code.words.push_back(std::move(w));
  }
  if (!header) throw ParseError(ParseErrorKind::kMissingHeader, in.number(), "empty code file");
  if (code.words.size() != expected) {
    throw ParseError(ParseErrorKind::kSizeMismatch, in.number(),
                     "declared " + std::to_string(expected) + " words, found " +
                         std::to_string(code.words.size()));
  }
  return code;
}

std::string write_code(const CoveringCode& code) {
  std::ostringstream out;
  out << code.q << ' ' << code.t << ' ' << code.r << ' ' << code.words.size() << '\n';
  for (const KaryWord& w : code.words) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out << ' ';
      out << static_cast<unsigned>(w[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string sniff_format(std::string_view text) {
  LineReader in(text);
  while (in.next()) {
    if (in.lead() != 'p') continue;
    const auto tok = in.tokens();
    if (tok.size() >= 2 && tok[0] == "p" && (tok[1] == "cnf" || tok[1] == "csp")) {
      return std::string(tok[1]);
    }
    return "";
  }
  return "";
}

}  // namespace ballsat
