#include "ballsat/covering_code.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "ballsat/error.hpp"
#include "ballsat/rng.hpp"

namespace ballsat {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

void check_params(unsigned q, unsigned t, unsigned r) {
  if (q < 2) throw UsageError("alphabet size must be at least 2");
  if (q > kMaxAlphabet) throw UsageError("alphabet size above 16 is not supported");
  if (r > t) throw UsageError("radius exceeds word length");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  const u128 p = static_cast<u128>(a) * b;
  if (p > kU64Max) throw UsageError("integer overflow in code arithmetic");
  return static_cast<std::uint64_t>(p);
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > kU64Max) throw UsageError("integer overflow in binomial");
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t p = 1;
  for (unsigned i = 0; i < exp; ++i) p = checked_mul(p, base);
  return p;
}

std::vector<std::uint64_t> place_values(unsigned q, unsigned t) {
  std::vector<std::uint64_t> pv(t);
  std::uint64_t p = 1;
  for (unsigned i = t; i-- > 0;) {
    pv[i] = p;
    if (i > 0) p = checked_mul(p, q);
  }
  return pv;
}

void check_word(const KaryWord& w, unsigned q, unsigned t) {
  if (w.size() != t) throw UsageError("word length differs from code length");
  for (auto s : w) {
    if (s < 1 || s > q) throw UsageError("symbol outside alphabet");
  }
}

std::vector<std::uint8_t> coverage_map(const CoveringCode& code) {
  const std::uint64_t total = space_size(code.q, code.t, kVerifyCap);
  std::vector<std::uint8_t> covered(total, 0);
  for (const KaryWord& w : code.words) {
    check_word(w, code.q, code.t);
    for_each_in_ball(code.q, code.t, code.r, word_rank(w, code.q),
                     [&](std::uint64_t x) { covered[x] = 1; });
  }
  return covered;
}

}  // namespace

std::size_t kary_distance(const KaryWord& a, const KaryWord& b) {
  if (a.size() != b.size()) throw UsageError("kary_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

std::uint64_t shell_volume(unsigned q, unsigned t, unsigned r) {
  check_params(q, t, r);
  return checked_mul(binomial(t, r), ipow(q - 1, r));
}

std::uint64_t ball_volume(unsigned q, unsigned t, unsigned r) {
  check_params(q, t, r);
  std::uint64_t v = 0;
  for (unsigned i = 0; i <= r; ++i) {
    const std::uint64_t s = shell_volume(q, t, i);
    if (v > kU64Max - s) throw UsageError("integer overflow in ball volume");
    v += s;
  }
  return v;
}

std::uint64_t code_size_bound(unsigned q, unsigned t, unsigned r) {
  check_params(q, t, r);
  const long double shell = static_cast<long double>(shell_volume(q, t, r));
  const long double value = static_cast<long double>(t) * std::log(static_cast<long double>(q)) *
                            std::pow(static_cast<long double>(q), static_cast<long double>(t)) /
                            shell;
  const long double nearest = std::round(value);
  std::uint64_t bound;
  if (std::fabs(value - nearest) < 1e-9L) {
    bound = static_cast<std::uint64_t>(nearest) + 1;
  } else {
    bound = static_cast<std::uint64_t>(std::ceil(value));
  }
  // t = 0 makes the expression 0; one word is still needed.
  return std::max<std::uint64_t>(bound, 1);
}

std::uint64_t space_size(unsigned q, unsigned t, std::uint64_t cap) {
  u128 p = 1;
  for (unsigned i = 0; i < t; ++i) {
    p *= q;
    if (p > cap) {
      throw ResourceError("q^t = " + std::to_string(q) + "^" + std::to_string(t) +
                          " exceeds cap " + std::to_string(cap));
    }
  }
  return static_cast<std::uint64_t>(p);
}

std::uint64_t word_rank(const KaryWord& w, unsigned q) {
  std::uint64_t rank = 0;
  for (auto s : w) rank = checked_mul(rank, q) + (s - 1u);
  return rank;
}

KaryWord word_unrank(std::uint64_t rank, unsigned q, unsigned t) {
  KaryWord w(t, 1);
  for (unsigned i = t; i-- > 0;) {
    w[i] = static_cast<std::uint8_t>(rank % q + 1);
    rank /= q;
  }
  return w;
}

void for_each_in_ball(unsigned q, unsigned t, unsigned r, std::uint64_t center_rank,
                      const std::function<void(std::uint64_t)>& fn) {
  check_params(q, t, r);
  const std::vector<std::uint64_t> pv = place_values(q, t);
  std::vector<unsigned> digit(t);
  for (unsigned i = 0; i < t; ++i) digit[i] = static_cast<unsigned>(center_rank / pv[i] % q);

  // Choose changed positions in increasing order; each changed position takes
  // one of the q-1 other symbols.
  auto rec = [&](auto&& self, unsigned from, unsigned budget, std::uint64_t rank) -> void {
    fn(rank);
    if (budget == 0) return;
    for (unsigned pos = from; pos < t; ++pos) {
      const std::uint64_t base = rank - digit[pos] * pv[pos];
      for (unsigned s = 0; s < q; ++s) {
        if (s == digit[pos]) continue;
        self(self, pos + 1, budget - 1, base + s * pv[pos]);
      }
    }
  };
  rec(rec, 0, r, center_rank);
}

bool covers(const CoveringCode& code) {
  check_params(code.q, code.t, code.r);
  const auto covered = coverage_map(code);
  return std::all_of(covered.begin(), covered.end(), [](std::uint8_t c) { return c != 0; });
}

bool verify_cover(CoveringCode& code) {
  code.verified = covers(code);
  return code.verified;
}

std::uint64_t spot_check(const CoveringCode& code, std::uint64_t samples,
                         std::uint64_t seed) {
  check_params(code.q, code.t, code.r);
  Rng rng(derive_seed(seed, 0));
  std::uniform_int_distribution<unsigned> symbol(1, code.q);
  std::uint64_t missed = 0;
  KaryWord probe(code.t);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& x : probe) x = static_cast<std::uint8_t>(symbol(rng));
    const bool hit = std::any_of(code.words.begin(), code.words.end(), [&](const KaryWord& w) {
      return kary_distance(w, probe) <= code.r;
    });
    if (!hit) ++missed;
  }
  return missed;
}

CoveringCode random_code(unsigned q, unsigned t, unsigned r, std::uint64_t target_size,
                         std::uint64_t seed, unsigned max_attempts, unsigned* attempts_used) {
  check_params(q, t, r);
  if (target_size < 1) throw UsageError("random_code: target size must be positive");
  const std::uint64_t total = space_size(q, t, kVerifyCap);
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
    std::vector<std::uint64_t> ranks(target_size);
    for (auto& x : ranks) x = pick(rng);
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());

    CoveringCode code{q, t, r, {}, false};
    code.words.reserve(ranks.size());
    for (auto x : ranks) code.words.push_back(word_unrank(x, q, t));
    if (verify_cover(code)) {
      if (attempts_used) *attempts_used = attempt + 1;
      return code;
    }
  }
  if (attempts_used) *attempts_used = max_attempts;
  throw ConstructionError("random_code(" + std::to_string(q) + "," + std::to_string(t) + "," +
                          std::to_string(r) + ", size " + std::to_string(target_size) +
                          ") did not cover after " + std::to_string(max_attempts) +
                          " attempts");
}

CoveringCode greedy_code(unsigned q, unsigned t, unsigned r) {
  check_params(q, t, r);
  const std::uint64_t total = space_size(q, t, kGreedyCap);
  const std::uint64_t volume = ball_volume(q, t, r);

  std::vector<std::uint8_t> covered(total, 0);
  std::uint64_t uncovered = total;

  // Lazy greedy: stored gains only overestimate, so a popped entry whose
  // recomputed gain is unchanged is a true maximum. Ordering (gain desc,
  // rank asc) yields the lexicographically smallest maximizer.
  using Entry = std::pair<std::uint64_t, std::uint64_t>;  // (gain, rank)
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::vector<Entry> heap;
  heap.reserve(total);
  for (std::uint64_t x = 0; x < total; ++x) heap.emplace_back(volume, x);
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> pq(worse, std::move(heap));

  CoveringCode code{q, t, r, {}, false};
  while (uncovered > 0) {
    const auto [stored, center] = pq.top();
    pq.pop();
    std::uint64_t gain = 0;
    for_each_in_ball(q, t, r, center, [&](std::uint64_t x) { gain += covered[x] ? 0 : 1; });
    if (gain == stored) {
      for_each_in_ball(q, t, r, center, [&](std::uint64_t x) {
        if (!covered[x]) {
          covered[x] = 1;
          --uncovered;
        }
      });
      code.words.push_back(word_unrank(center, q, t));
    } else if (gain > 0) {
      pq.emplace(gain, center);
    }
  }
  code.verified = true;
  return code;
}

CoveringCode concatenate(const CoveringCode& a, const CoveringCode& b) {
  if (a.q != b.q) throw UsageError("concatenate: alphabet mismatch");
  CoveringCode out{a.q, a.t + b.t, a.r + b.r, {}, a.verified && b.verified};
  out.words.reserve(a.words.size() * b.words.size());
  for (const KaryWord& x : a.words) {
    for (const KaryWord& y : b.words) {
      KaryWord w = x;
      w.insert(w.end(), y.begin(), y.end());
      out.words.push_back(std::move(w));
    }
  }
  return out;
}

BlockCover::BlockCover(std::vector<std::shared_ptr<const CoveringCode>> blocks)
    : blocks_(std::move(blocks)) {
  size_ = 1;
  bool first = true;
  for (const auto& b : blocks_) {
    if (!b) throw UsageError("BlockCover: null block");
    if (first) {
      q_ = b->q;
      first = false;
    } else if (b->q != q_) {
      throw UsageError("BlockCover: alphabet mismatch");
    }
    if (b->words.empty()) throw UsageError("BlockCover: empty block code");
    length_ += b->t;
    radius_ += b->r;
    const u128 p = static_cast<u128>(size_) * b->words.size();
    size_ = p > kU64Max ? kU64Max : static_cast<std::uint64_t>(p);
  }
}

bool BlockCover::verified() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& b) { return b->verified; });
}

KaryWord BlockCover::word(std::uint64_t i) const {
  if (i >= size_) throw UsageError("BlockCover: word index out of range");
  KaryWord w(length_);
  unsigned end = length_;
  for (std::size_t bi = blocks_.size(); bi-- > 0;) {
    const CoveringCode& b = *blocks_[bi];
    const KaryWord& part = b.words[i % b.words.size()];
    i /= b.words.size();
    end -= b.t;
    std::copy(part.begin(), part.end(), w.begin() + end);
  }
  return w;
}

Assignment BlockCover::assignment(std::uint64_t i) const {
  if (q_ != 2) throw UsageError("BlockCover::assignment needs a binary code");
  const KaryWord w = word(i);
  Assignment a(w.size());
  for (std::size_t v = 0; v < w.size(); ++v) a.set(static_cast<Var>(v + 1), w[v] == 2);
  return a;
}

CoveringCode BlockCover::materialize() const {
  CoveringCode out{q_, 0, 0, {KaryWord{}}, true};
  for (const auto& b : blocks_) out = concatenate(out, *b);
  return out;
}

unsigned boolean_block_radius(double rho, unsigned b) {
  return static_cast<unsigned>(std::ceil(rho * b - 1e-9));
}

BlockCover boolean_block_cover(std::size_t n, double rho, unsigned b) {
  if (!(rho > 0.0 && rho <= 0.5)) throw UsageError("rho must lie in (0, 1/2]");
  if (b < 1 || b > 20) throw UsageError("block length must lie in [1, 20]");
  auto& cache = CodeCache::global();
  std::vector<std::shared_ptr<const CoveringCode>> blocks;
  const std::size_t full = n / b;
  const unsigned rest = static_cast<unsigned>(n % b);
  if (full > 0) {
    auto block = cache.greedy(2, b, boolean_block_radius(rho, b));
    for (std::size_t i = 0; i < full; ++i) blocks.push_back(block);
  }
  if (rest > 0) blocks.push_back(cache.greedy(2, rest, boolean_block_radius(rho, rest)));
  return BlockCover(std::move(blocks));
}

CoveringCode boolean_cover(std::size_t n, double rho, unsigned b) {
  return boolean_block_cover(n, rho, b).materialize();
}

}  // namespace ballsat
