#include "ballsat/csp.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <chrono>
#include <limits>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>

#include "ballsat/error.hpp"

namespace ballsat {

namespace {

using Clock = std::chrono::steady_clock;
__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kCspBruteCap = 10'000'000;
constexpr std::uint64_t kBoxVerifyCap = 1'000'000;
constexpr std::uint64_t kBoxCandidateCap = 100'000;

std::uint64_t power_capped(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (p > cap / base) return cap + 1;
    p *= base;
  }
  return p;
}

std::vector<std::pair<unsigned, unsigned>> value_pairs(unsigned d) {
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned a = 1; a <= d; ++a) {
    for (unsigned b = a + 1; b <= d; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

}  // namespace

CspFormula::CspFormula(unsigned domain_size, std::size_t num_vars,
                       std::vector<CspConstraint> constraints)
    : d_(domain_size), n_(num_vars), constraints_(std::move(constraints)) {
  if (d_ < 1) throw UsageError("domain size must be at least 1");
  for (const CspConstraint& c : constraints_) {
    if (c.empty()) throw UsageError("empty constraint");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].var < 1 || c[i].var > n_) throw UsageError("constraint variable out of range");
      if (c[i].value < 1 || c[i].value > d_) throw UsageError("constraint value out of domain");
      for (std::size_t j = 0; j < i; ++j) {
        if (c[j].var == c[i].var) throw UsageError("constraint repeats a variable");
      }
    }
    max_width_ = std::max(max_width_, c.size());
  }
}

bool TwoBox::contains(const CspAssignment& tau) const {
  if (tau.size() != pairs.size()) return false;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] != pairs[i].first && tau[i] != pairs[i].second) return false;
  }
  return true;
}

BoxCover::BoxCover(unsigned d, std::vector<std::shared_ptr<const std::vector<TwoBox>>> blocks,
                   bool verified)
    : d_(d), blocks_(std::move(blocks)), verified_(verified) {
  size_ = 1;
  for (const auto& block : blocks_) {
    if (!block || block->empty()) throw UsageError("BoxCover: empty block");
    const std::size_t len = block->front().pairs.size();
    for (const TwoBox& b : *block) {
      if (b.pairs.size() != len) throw UsageError("BoxCover: ragged block");
    }
    n_ += len;
    const auto p = static_cast<u128>(size_) * block->size();
    size_ = p > std::numeric_limits<std::uint64_t>::max()
                ? std::numeric_limits<std::uint64_t>::max()
                : static_cast<std::uint64_t>(p);
  }
}

TwoBox BoxCover::box(std::uint64_t i) const {
  if (i >= size_) throw UsageError("BoxCover: box index out of range");
  TwoBox out;
  out.pairs.resize(n_);
  std::size_t end = n_;
  for (std::size_t bi = blocks_.size(); bi-- > 0;) {
    const auto& block = *blocks_[bi];
    const TwoBox& part = block[i % block.size()];
    i /= block.size();
    end -= part.pairs.size();
    std::copy(part.pairs.begin(), part.pairs.end(), out.pairs.begin() + end);
  }
  return out;
}

bool BoxCover::verify() {
  const std::uint64_t points = power_capped(d_, n_, kBoxVerifyCap);
  if (points > kBoxVerifyCap) throw ResourceError("d^n exceeds the box verification cap");
  std::vector<std::uint8_t> covered(points, 0);
  for (std::uint64_t i = 0; i < size_; ++i) {
    const TwoBox b = box(i);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_); ++mask) {
      std::uint64_t rank = 0;
      for (std::size_t v = 0; v < n_; ++v) {
        const unsigned value = (mask >> (n_ - 1 - v) & 1) ? b.pairs[v].second : b.pairs[v].first;
        rank = rank * d_ + (value - 1);
      }
      covered[rank] = 1;
    }
  }
  verified_ = std::all_of(covered.begin(), covered.end(), [](std::uint8_t c) { return c != 0; });
  return verified_;
}

bool csp_evaluate(const CspFormula& formula, const CspAssignment& tau) {
  if (tau.size() != formula.num_vars()) throw UsageError("CSP assignment has the wrong length");
  for (unsigned v : tau) {
    if (v < 1 || v > formula.domain_size()) throw UsageError("CSP value out of domain");
  }
  for (const CspConstraint& c : formula.constraints()) {
    const bool ok = std::any_of(c.begin(), c.end(),
                                [&](const CspLiteral& l) { return tau[l.var - 1] != l.value; });
    if (!ok) return false;
  }
  return true;
}

std::vector<TwoBox> greedy_box_block(unsigned d, unsigned b) {
  if (d < 2) throw UsageError("2-box covers need d >= 2");
  if (d > 5 || b > 5) throw ResourceError("greedy 2-box blocks are capped at d <= 5, b <= 5");
  const auto pairs = value_pairs(d);
  const std::uint64_t num_pairs = pairs.size();
  const std::uint64_t num_points = power_capped(d, b, kBoxCandidateCap);
  const std::uint64_t num_boxes = power_capped(num_pairs, b, kBoxCandidateCap);
  if (num_points > kBoxCandidateCap || num_boxes > kBoxCandidateCap) {
    throw ResourceError("greedy 2-box block exceeds the candidate cap");
  }

  // Candidate box index: mixed radix over pair indices, first coordinate most
  // significant. Points: base-d ranks of value tuples.
  auto box_pairs = [&](std::uint64_t index) {
    std::vector<std::size_t> which(b);
    for (unsigned i = b; i-- > 0;) {
      which[i] = index % num_pairs;
      index /= num_pairs;
    }
    return which;
  };
  auto for_each_point = [&](std::uint64_t index, auto&& fn) {
    const auto which = box_pairs(index);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b); ++mask) {
      std::uint64_t rank = 0;
      for (unsigned i = 0; i < b; ++i) {
        const auto& pr = pairs[which[i]];
        const unsigned value = (mask >> (b - 1 - i) & 1) ? pr.second : pr.first;
        rank = rank * d + (value - 1);
      }
      fn(rank);
    }
  };

  std::vector<std::uint8_t> covered(num_points, 0);
  std::uint64_t uncovered = num_points;
  using Entry = std::pair<std::uint64_t, std::uint64_t>;  // (gain, box index)
  auto worse = [](const Entry& x, const Entry& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second > y.second;
  };
  std::vector<Entry> init;
  init.reserve(num_boxes);
  for (std::uint64_t i = 0; i < num_boxes; ++i) init.emplace_back(std::uint64_t{1} << b, i);
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> pq(worse, std::move(init));

  std::vector<TwoBox> chosen;
  while (uncovered > 0) {
    const auto [stored, index] = pq.top();
    pq.pop();
    std::uint64_t gain = 0;
    for_each_point(index, [&](std::uint64_t x) { gain += covered[x] ? 0 : 1; });
    if (gain == stored) {
      for_each_point(index, [&](std::uint64_t x) {
        if (!covered[x]) {
          covered[x] = 1;
          --uncovered;
        }
      });
      TwoBox box;
      for (std::size_t w : box_pairs(index)) box.pairs.push_back(pairs[w]);
      chosen.push_back(std::move(box));
    } else if (gain > 0) {
      pq.emplace(gain, index);
    }
  }
  return chosen;
}

BoxCover two_box_cover(unsigned d, std::size_t n, unsigned b) {
  if (d < 2) throw UsageError("2-box covers need d >= 2");
  std::vector<std::shared_ptr<const std::vector<TwoBox>>> blocks;
  if (d % 2 == 0) {
    auto unit = std::make_shared<std::vector<TwoBox>>();
    for (unsigned j = 1; j <= d / 2; ++j) unit->push_back(TwoBox{{{2 * j - 1, 2 * j}}});
    for (std::size_t i = 0; i < n; ++i) blocks.push_back(unit);
  } else {
    if (b < 1) throw UsageError("2-box block length must be positive");
    const unsigned len = static_cast<unsigned>(std::min<std::size_t>(b, std::max<std::size_t>(n, 1)));
    const std::size_t full = n / len;
    const unsigned rest = static_cast<unsigned>(n % len);
    if (full > 0) {
      auto block = std::make_shared<const std::vector<TwoBox>>(greedy_box_block(d, len));
      for (std::size_t i = 0; i < full; ++i) blocks.push_back(block);
    }
    if (rest > 0) {
      blocks.push_back(std::make_shared<const std::vector<TwoBox>>(greedy_box_block(d, rest)));
    }
  }
  // Both constructions cover by construction; check exhaustively when cheap.
  BoxCover cover(d, std::move(blocks), true);
  if (power_capped(d, n, kBoxVerifyCap) <= kBoxVerifyCap && !cover.verify()) {
    throw std::logic_error("2-box cover failed exhaustive verification");
  }
  return cover;
}

Formula restrict_to_box(const CspFormula& formula, const TwoBox& box) {
  if (box.pairs.size() != formula.num_vars()) throw UsageError("box dimension mismatch");
  std::vector<Clause> clauses;
  for (const CspConstraint& c : formula.constraints()) {
    std::vector<Literal> lits;
    bool vacuous = false;
    for (const CspLiteral& l : c) {
      const auto& [lo, hi] = box.pairs[l.var - 1];
      if (l.value == lo) {
        lits.push_back(pos(l.var));  // x != lo  <=>  x = hi  <=>  y
      } else if (l.value == hi) {
        lits.push_back(neg(l.var));
      } else {
        vacuous = true;
        break;
      }
    }
    if (!vacuous) clauses.emplace_back(std::move(lits));
  }
  return Formula(formula.num_vars(), std::move(clauses));
}

CspAssignment decode_box_witness(const TwoBox& box, const Assignment& y) {
  if (y.size() != box.pairs.size()) throw UsageError("witness dimension mismatch");
  CspAssignment tau(box.pairs.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    tau[i] = y.value(static_cast<Var>(i + 1)) ? box.pairs[i].second : box.pairs[i].first;
  }
  return tau;
}

CspSolveResult brute_force_csp(const CspFormula& formula) {
  const auto start = Clock::now();
  const unsigned d = formula.domain_size();
  const std::size_t n = formula.num_vars();
  if (power_capped(d, n, kCspBruteCap) > kCspBruteCap) {
    throw ResourceError("d^n exceeds the CSP brute-force cap");
  }
  CspSolveResult result;
  CspAssignment tau(n, 1);
  for (;;) {
    ++result.stats.recursion_nodes;
    if (csp_evaluate(formula, tau)) {
      result.status = SolveStatus::kSat;
      result.witness = tau;
      break;
    }
    std::size_t i = n;
    while (i > 0 && tau[i - 1] == d) tau[--i] = 1;
    if (i == 0) {
      result.status = SolveStatus::kUnsat;
      break;
    }
    ++tau[i - 1];
  }
  result.stats.leaves = result.stats.recursion_nodes;
  result.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

CspSolveResult solve_csp(const CspFormula& formula, const SolverConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  const unsigned d = formula.domain_size();
  const std::size_t n = formula.num_vars();
  const bool small = power_capped(d, n, kCspBruteCap) <= kCspBruteCap;
  if (cfg.mode == SolveMode::kBrute || d < 2 || (formula.max_width() <= 2 && small)) {
    return brute_force_csp(formula);
  }

  const BoxCover cover = two_box_cover(d, n, cfg.box_block_len);
  SolverConfig inner = cfg;
  inner.jobs = 1;

  CspSolveResult result;
  result.cover_size = cover.size();

  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{kNone};
  std::atomic<bool> any_unknown{false};
  std::mutex mu;
  std::optional<CspAssignment> best_witness;

  auto run_worker = [&] {
    SearchStats local;
    std::uint64_t tried = 0;
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= cover.size() || i > best.load()) break;
      const TwoBox box = cover.box(i);
      const Formula reduced = restrict_to_box(formula, box);
      SolveResult r = solve(reduced, inner);
      local += r.stats;
      ++tried;
      if (r.status == SolveStatus::kUnknown) any_unknown = true;
      if (r.status == SolveStatus::kSat) {
        CspAssignment tau = decode_box_witness(box, *r.witness);
        if (!csp_evaluate(formula, tau)) {
          throw std::logic_error("decoded box witness does not satisfy the CSP formula");
        }
        std::lock_guard lock(mu);
        if (i < best.load()) {
          best.store(i);
          best_witness = std::move(tau);
        }
        break;
      }
    }
    std::lock_guard lock(mu);
    result.stats += local;
    result.boxes_tried += tried;
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
    result.status = any_unknown ? SolveStatus::kUnknown : SolveStatus::kUnsat;
  }
  result.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace ballsat
