#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace betti {

/// Which birth survives a merge: the class whose birth compares as "elder".
/// MinBirth: smaller refined index is older (primal sweeps).
/// MaxBirth: larger refined index is older (dual sweeps run in reverse).
enum class ElderRule { MinBirth, MaxBirth };

/// Disjoint-set forest that tracks, per class, the birth of its elder member.
/// Union by size with path halving.
class BirthUnionFind {
 public:
  BirthUnionFind(std::size_t n, ElderRule rule)
      : parent_(n), size_(n, 1), birth_(n, 0), rule_(rule) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::size_t size() const noexcept { return parent_.size(); }

  void set_birth(std::uint32_t x, std::uint32_t birth) noexcept { birth_[x] = birth; }

  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::uint32_t birth(std::uint32_t root) const noexcept { return birth_[root]; }

  bool elder(std::uint32_t a, std::uint32_t b) const noexcept {
    return rule_ == ElderRule::MinBirth ? a < b : a > b;
  }

  /// Birth of the class that dies when the two (distinct) roots merge.
  std::uint32_t younger_birth(std::uint32_t x, std::uint32_t y) const noexcept {
    return elder(birth_[x], birth_[y]) ? birth_[y] : birth_[x];
  }

  /// Merges two distinct roots; the surviving class keeps the elder birth.
  std::uint32_t unite(std::uint32_t x, std::uint32_t y) noexcept {
    const std::uint32_t b = elder(birth_[x], birth_[y]) ? birth_[x] : birth_[y];
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    birth_[x] = b;
    return x;
  }

  bool is_root(std::uint32_t x) const noexcept { return parent_[x] == x; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> birth_;
  ElderRule rule_;
};

}  // namespace betti
