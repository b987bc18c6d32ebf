#pragma once

// q-ary covering codes over {1..q}^t: ball arithmetic, the probabilistic size
// bound, randomized and greedy constructions, block concatenation, and the
// Boolean block covers used by the outer SAT loop.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ballsat/cnf.hpp"

namespace ballsat {

/// Symbols are 1..q.
using KaryWord = std::vector<std::uint8_t>;

/// Exhaustive verification cap (words in {1..q}^t).
inline constexpr std::uint64_t kVerifyCap = 10'000'000;
/// Greedy construction cap.
inline constexpr std::uint64_t kGreedyCap = 1'000'000;
inline constexpr unsigned kMaxAlphabet = 16;

struct CoveringCode {
  unsigned q = 2;
  unsigned t = 0;
  unsigned r = 0;
  std::vector<KaryWord> words;
  bool verified = false;

  std::size_t size() const { return words.size(); }
  friend bool operator==(const CoveringCode& a, const CoveringCode& b) {
    return a.q == b.q && a.t == b.t && a.r == b.r && a.words == b.words;
  }
};

std::size_t kary_distance(const KaryWord& a, const KaryWord& b);

/// Exact sum_{i<=r} C(t,i)(q-1)^i. Throws UsageError on r > t or q < 2, and
/// on overflow of 64 bits.
std::uint64_t ball_volume(unsigned q, unsigned t, unsigned r);
/// Exact C(t,r)(q-1)^r, the distance-exactly-r term.
std::uint64_t shell_volume(unsigned q, unsigned t, unsigned r);

/// ceil(t ln(q) q^t / (C(t,r)(q-1)^r)): the size that a uniformly sampled code
/// reaches covering radius r with positive probability.
std::uint64_t code_size_bound(unsigned q, unsigned t, unsigned r);

/// q^t, throwing ResourceError if it exceeds `cap`.
std::uint64_t space_size(unsigned q, unsigned t, std::uint64_t cap);

/// Base-q rank of a word, first symbol most significant. Lexicographic order
/// of words equals numeric order of ranks.
std::uint64_t word_rank(const KaryWord& w, unsigned q);
KaryWord word_unrank(std::uint64_t rank, unsigned q, unsigned t);

/// Calls fn(rank) for every word within distance r of `center_rank`, each
/// exactly once.
void for_each_in_ball(unsigned q, unsigned t, unsigned r, std::uint64_t center_rank,
                      const std::function<void(std::uint64_t)>& fn);

/// Exhaustive cover check over all q^t words (cap kVerifyCap). Sets
/// code.verified on success.
bool verify_cover(CoveringCode& code);
bool covers(const CoveringCode& code);

/// Checks `samples` uniform random words; returns the number left uncovered.
std::uint64_t spot_check(const CoveringCode& code, std::uint64_t samples,
                         std::uint64_t seed);

/// Samples `target_size` words i.i.d. uniform (duplicates collapse), verifies,
/// and resamples with a derived seed up to `max_attempts` times. Throws
/// ConstructionError when every attempt fails to cover.
CoveringCode random_code(unsigned q, unsigned t, unsigned r, std::uint64_t target_size,
                         std::uint64_t seed, unsigned max_attempts = 10,
                         unsigned* attempts_used = nullptr);

/// Greedy set cover of {1..q}^t by radius-r balls; ties go to the
/// lexicographically smallest center.
CoveringCode greedy_code(unsigned q, unsigned t, unsigned r);

/// All pairwise concatenations; radius adds. Covering is preserved blockwise,
/// so `verified` is the conjunction of the inputs' flags.
CoveringCode concatenate(const CoveringCode& a, const CoveringCode& b);

/// A product of block codes iterated lazily; word i is decoded in mixed radix
/// with the first block most significant, matching fold(concatenate).
class BlockCover {
 public:
  BlockCover() = default;
  explicit BlockCover(std::vector<std::shared_ptr<const CoveringCode>> blocks);

  unsigned q() const { return q_; }
  unsigned length() const { return length_; }
  unsigned radius() const { return radius_; }
  bool verified() const;
  /// Number of words; saturates at UINT64_MAX.
  std::uint64_t size() const { return size_; }
  const std::vector<std::shared_ptr<const CoveringCode>>& blocks() const { return blocks_; }

  KaryWord word(std::uint64_t i) const;
  /// Word i read as a Boolean assignment (symbol 1 -> false, 2 -> true).
  Assignment assignment(std::uint64_t i) const;
  CoveringCode materialize() const;

 private:
  std::vector<std::shared_ptr<const CoveringCode>> blocks_;
  unsigned q_ = 2;
  unsigned length_ = 0;
  unsigned radius_ = 0;
  std::uint64_t size_ = 1;
};

/// Block radius used by boolean_cover for a block of length b.
unsigned boolean_block_radius(double rho, unsigned b);

/// Greedy binary blocks of length b and radius ceil(rho*b), repeated
/// floor(n/b) times, plus a greedy residual block of length n mod b.
BlockCover boolean_block_cover(std::size_t n, double rho, unsigned b);
CoveringCode boolean_cover(std::size_t n, double rho, unsigned b);

/// Process-wide memo of constructed codes, optionally persisted as code files
/// in a directory (keyed by q, t, r and method).
class CodeCache {
 public:
  static CodeCache& global();

  void set_directory(std::optional<std::filesystem::path> dir);
  std::optional<std::filesystem::path> directory() const;

  std::shared_ptr<const CoveringCode> greedy(unsigned q, unsigned t, unsigned r);
  void clear();

 private:
  mutable std::mutex mu_;
  std::optional<std::filesystem::path> dir_;
  std::map<std::tuple<unsigned, unsigned, unsigned>, std::shared_ptr<const CoveringCode>>
      memo_;
};

}  // namespace ballsat
