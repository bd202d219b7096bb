#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

namespace mcp {

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Counter-based random stream. The i-th output is a pure function of
/// (key, i), and keys are derived from (master seed, trial index, purpose
/// tag), so trials can be replayed in any order or on any thread.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key = 0) : key_(detail::mix64(key ^ 0x6a09e667f3bcc909ULL)) {}

  /// Stream for one (seed, trial, purpose) triple.
  static Rng stream(std::uint64_t seed, std::uint64_t trial, std::string_view tag) {
    std::uint64_t k = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
    k = detail::mix64(k ^ (trial * 0xd1b54a32d192ed03ULL));
    k = detail::mix64(k ^ detail::fnv1a(tag));
    return Rng(k);
  }

  /// Child stream; does not advance this one.
  Rng split(std::string_view tag) const {
    return Rng(detail::mix64(key_ ^ detail::fnv1a(tag)) + counter_);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    return detail::mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection keeps the result exactly uniform.
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mcp
