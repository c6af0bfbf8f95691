#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace auctionlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// One named random stream. Streams are derived from the experiment's root
/// seed by name (and optionally a round index), so value draws, tie breaks,
/// permutations and Random agents never perturb one another.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Portable uniform integer on [lo, hi], both inclusive. Rejection
  /// sampling keeps the sequence identical across standard libraries.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % span);
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Fisher-Yates permutation of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(uniform_int(0, i));
      std::swap(p[i], p[j]);
    }
    return p;
  }

  /// Uniform choice among `count` items; returns the chosen index.
  int choice(int count) { return static_cast<int>(uniform_int(0, count - 1)); }

 private:
  std::mt19937_64 engine_;
};

/// Derives independent named streams from a single root seed.
class RngRoot {
 public:
  explicit RngRoot(std::uint64_t root_seed) : root_(root_seed) {}

  RngStream stream(std::string_view name) const {
    return RngStream(splitmix64(root_ ^ fnv1a64(name)));
  }
  RngStream stream(std::string_view name, std::uint64_t index) const {
    return RngStream(splitmix64(splitmix64(root_ ^ fnv1a64(name)) + index));
  }

  std::uint64_t root_seed() const { return root_; }

 private:
  std::uint64_t root_;
};

}  // namespace auctionlab
