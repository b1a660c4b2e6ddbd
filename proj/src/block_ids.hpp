#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "autoseq/alphabet.hpp"

namespace autoseq::detail {

// Dense ids for the length-n blocks of a word. Windows are bucketed by a
// rolling hash; every bucket hit is confirmed by comparing the symbols, so
// collisions never merge distinct blocks.
class BlockIds {
 public:
  BlockIds(std::span<const Symbol> word, std::size_t n) : word_(word), n_(n) {
    if (n == 0 || n > word.size()) return;
    const std::size_t windows = word.size() - n + 1;
    ids_.resize(windows);
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    buckets.reserve(windows);

    constexpr std::uint64_t kBase = 0x9E3779B97F4A7C15ULL;
    std::uint64_t top = 1;  // kBase^(n-1)
    for (std::size_t i = 1; i < n; ++i) top *= kBase;
    std::uint64_t h = 0;
    for (std::size_t i = 0; i < n; ++i) h = h * kBase + (word[i] + 1);

    for (std::size_t j = 0; j < windows; ++j) {
      if (j > 0) h = (h - (word[j - 1] + 1) * top) * kBase + (word[j + n - 1] + 1);
      auto& bucket = buckets[h];
      std::uint32_t id = static_cast<std::uint32_t>(representative_.size());
      bool found = false;
      for (std::uint32_t candidate : bucket) {
        const std::size_t rep = representative_[candidate];
        if (std::equal(word.begin() + static_cast<std::ptrdiff_t>(rep),
                       word.begin() + static_cast<std::ptrdiff_t>(rep + n),
                       word.begin() + static_cast<std::ptrdiff_t>(j))) {
          id = candidate;
          found = true;
          break;
        }
      }
      if (!found) {
        bucket.push_back(id);
        representative_.push_back(j);
      }
      ids_[j] = id;
    }
  }

  std::size_t distinct() const noexcept { return representative_.size(); }
  std::uint32_t id_at(std::size_t start) const { return ids_[start]; }

 private:
  std::span<const Symbol> word_;
  std::size_t n_;
  std::vector<std::uint32_t> ids_;
  std::vector<std::size_t> representative_;
};

}  // namespace autoseq::detail
