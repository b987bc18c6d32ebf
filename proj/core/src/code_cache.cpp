#include <fstream>
#include <sstream>

#include "ballsat/covering_code.hpp"
#include "ballsat/error.hpp"
#include "ballsat/formats.hpp"

namespace ballsat {

namespace {

std::string cache_file_name(unsigned q, unsigned t, unsigned r) {
  return "q" + std::to_string(q) + "_t" + std::to_string(t) + "_r" + std::to_string(r) +
         "_greedy.code";
}

std::optional<CoveringCode> load(const std::filesystem::path& file, unsigned q, unsigned t,
                                 unsigned r) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    CoveringCode code = read_code(buf.str());
    if (code.q != q || code.t != t || code.r != r) return std::nullopt;
    if (!verify_cover(code)) return std::nullopt;
    return code;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

CodeCache& CodeCache::global() {
  static CodeCache cache;
  return cache;
}

void CodeCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::lock_guard lock(mu_);
  dir_ = std::move(dir);
}

std::optional<std::filesystem::path> CodeCache::directory() const {
  std::lock_guard lock(mu_);
  return dir_;
}

void CodeCache::clear() {
  std::lock_guard lock(mu_);
  memo_.clear();
}

std::shared_ptr<const CoveringCode> CodeCache::greedy(unsigned q, unsigned t, unsigned r) {
  std::lock_guard lock(mu_);
  const auto key = std::make_tuple(q, t, r);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::optional<CoveringCode> code;
  std::filesystem::path file;
  if (dir_) {
    file = *dir_ / cache_file_name(q, t, r);
    code = load(file, q, t, r);
  }
  if (!code) {
    code = greedy_code(q, t, r);
    // Greedy covers by construction; re-check independently of its
    // bookkeeping whenever the space is small enough.
    if (space_size(q, t, kGreedyCap) <= kVerifyCap && !verify_cover(*code)) {
      throw std::logic_error("greedy code failed cover verification");
    }
    if (dir_) {
      std::error_code ec;
      std::filesystem::create_directories(*dir_, ec);
      std::ofstream out(file, std::ios::binary | std::ios::trunc);
      if (out) out << write_code(*code);
    }
  }
  auto shared = std::make_shared<const CoveringCode>(std::move(*code));
  memo_.emplace(key, shared);
  return shared;
}

}  // namespace ballsat
